#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <sstream>

#include "error.hpp"
#include "sampling.hpp"
#include "solver.hpp"

namespace amsvrg {

namespace {

using Rng = std::mt19937_64;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Point random_point(Rng& rng, std::size_t d, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Point p(d);
  for (auto& v : p) v = g(rng);
  return p;
}

// Small dense instance; a few entries are dropped to exercise sparse rows.
std::shared_ptr<const Dataset> random_dataset(Rng& rng, std::size_t n, std::size_t d,
                                              LossKind kind, std::size_t classes = 3) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::bernoulli_distribution keep(0.85);
  std::vector<SparseExample> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (keep(rng)) rows[i].features.push_back({j, g(rng)});
    }
    switch (kind) {
      case LossKind::least_squares: rows[i].label = g(rng); break;
      case LossKind::logistic_binary: rows[i].label = i % 2 == 0 ? 1.0 : -1.0; break;
      case LossKind::logistic_multinomial:
        rows[i].label = static_cast<double>(i % classes);
        break;
    }
  }
  return std::make_shared<const Dataset>(std::move(rows), d);
}

Objective random_objective(Rng& rng, std::size_t n, std::size_t d, LossKind kind) {
  std::uniform_real_distribution<double> lam(0.0, 0.5);
  return Objective(random_dataset(rng, n, d, kind), kind, lam(rng));
}

struct Sizes {
  int instances;
  std::size_t max_n;
  std::size_t max_d;
  int fd_points;
  std::int64_t schedule_k;
};

Sizes sizes_for(VerifyScale scale) {
  if (scale == VerifyScale::full) return {1000, 8, 6, 200, 10'000};
  return {100, 8, 4, 50, 10'000};
}

VerifyCheck check_subset_variance(Rng& rng, const Sizes& sz, const DeltaFn& delta_fn) {
  double worst = 0.0;
  int cases = 0;
  for (int t = 0; t < sz.instances; ++t) {
    const std::size_t n = uniform_size(rng, 2, sz.max_n);
    const std::size_t d = uniform_size(rng, 1, sz.max_d);
    std::vector<Point> xi;
    for (std::size_t i = 0; i < n; ++i) xi.push_back(random_point(rng, d));
    for (std::size_t b = 1; b <= n; ++b) {
      const auto c = oracle_subset_variance(xi, b, delta_fn);
      worst = std::max(worst, std::abs(c.lhs - c.rhs));
      ++cases;
    }
  }
  return {"subset_variance_identity", worst <= 1e-12,
          std::to_string(cases) + " cases, max |lhs-rhs| = " + fmt("%.3e", worst)};
}

VerifyCheck check_unbiasedness(Rng& rng, const Sizes& sz) {
  double worst = 0.0;
  int cases = 0;
  const LossKind kinds[] = {LossKind::least_squares, LossKind::logistic_binary,
                            LossKind::logistic_multinomial};
  for (int t = 0; t < sz.instances; ++t) {
    const LossKind kind = kinds[t % 3];
    const std::size_t n = uniform_size(rng, 2, sz.max_n);
    const std::size_t d = uniform_size(rng, 1, sz.max_d);
    const Objective obj = random_objective(rng, n, d, kind);
    const Point x = random_point(rng, obj.dim_params());
    const Point y0 = random_point(rng, obj.dim_params());
    const std::size_t b = uniform_size(rng, 1, n);
    worst = std::max(worst, oracle_unbiasedness(obj, x, y0, b));
    ++cases;
  }
  return {"svrg_direction_unbiased", worst <= 1e-12,
          std::to_string(cases) + " cases, max deviation = " + fmt("%.3e", worst)};
}

VerifyCheck check_variance_bound(Rng& rng, const Sizes& sz, const DeltaFn& delta_fn) {
  int violations = 0;
  int cases = 0;
  double tightest = 0.0;  // largest variance / bound seen
  for (int t = 0; t < sz.instances; ++t) {
    const std::size_t n = uniform_size(rng, 2, sz.max_n);
    const std::size_t d = uniform_size(rng, 1, sz.max_d);
    std::uniform_real_distribution<double> lam(1e-3, 0.5);
    const Objective obj(random_dataset(rng, n, d, LossKind::least_squares),
                        LossKind::least_squares, lam(rng));
    const Point x_star = solve_least_squares_direct(obj);
    const Point x = random_point(rng, d);
    const Point y0 = random_point(rng, d);
    for (std::size_t b = 1; b <= n; ++b) {
      const auto c = oracle_variance_bound(obj, x, y0, b, x_star, delta_fn);
      // Slack covers rounding only: at b = n both sides are ~1e-32.
      if (c.variance > c.bound * (1.0 + 1e-12) + 1e-20) ++violations;
      if (c.bound > 0.0) tightest = std::max(tightest, c.variance / c.bound);
      ++cases;
    }
  }
  return {"variance_bound", violations == 0,
          std::to_string(cases) + " cases, " + std::to_string(violations) +
              " violations, max variance/bound = " + fmt("%.4f", tightest)};
}

VerifyCheck check_schedules(const Sizes& sz) {
  bool ok = true;
  double worst_exact = 0.0;
  double worst_double = 0.0;
  for (double L : {0.1, 1.0, 10.0}) {
    const auto c = check_telescoping_identity(L, sz.schedule_k);
    ok = ok && c.tau0_exact && c.exact_max_rel_error <= 1e-12;
    worst_exact = std::max(worst_exact, c.exact_max_rel_error);
    worst_double = std::max(worst_double, c.double_max_rel_error);
  }
  return {"schedule_identities", ok,
          "k <= " + std::to_string(sz.schedule_k) + ", rel err exact " +
              fmt("%.1e", worst_exact) + " (double " + fmt("%.1e", worst_double) + ")"};
}

VerifyCheck check_coefficient(const Sizes& sz) {
  bool ok = true;
  double min_value = std::numeric_limits<double>::infinity();
  for (std::size_t n : {10, 100, 1000, 10000}) {
    for (double p : {0.1, 0.25, 0.5}) {
      const auto c = check_batch_coefficient(n, p, sz.schedule_k);
      ok = ok && c.all_nonnegative;
      min_value = std::min(min_value, c.min_value);
    }
  }
  return {"batch_coefficient_nonnegative", ok, std::string(ok ? "exact >= 0" : "negative (exact)") + ", double min " + fmt("%.3e", min_value)};
}

VerifyCheck check_batch_minimality() {
  int mismatches = 0;
  int cases = 0;
  for (std::size_t n : {10, 100, 1000}) {
    for (double p : {0.1, 0.5}) {
      const BatchSchedule sched(n, p);
      for (std::int64_t k = 0; k <= 200; ++k) {
        if (sched.batch_size(k) != oracle_min_batch(n, p, k)) ++mismatches;
        ++cases;
      }
    }
  }
  return {"batch_size_minimal", mismatches == 0,
          std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches"};
}

VerifyCheck check_r1() {
  int mismatches = 0;
  int cases = 0;
  for (std::size_t n = 1; n <= 500; ++n) {
    for (double p : {0.1, 0.5, 1.0, 2.0}) {
      if (restart_r1_horizon(BatchSchedule(n, p)) != oracle_r1(n, p)) ++mismatches;
      ++cases;
    }
  }
  const std::int64_t spot = restart_r1_horizon(BatchSchedule(100, 0.5));
  return {"r1_horizon", mismatches == 0 && spot == 9,
          std::to_string(cases) + " cases, " + std::to_string(mismatches) +
              " mismatches, m(100, 0.5) = " + std::to_string(spot)};
}

VerifyCheck check_fd(Rng& rng, const Sizes& sz) {
  double worst = 0.0;
  int cases = 0;
  const LossKind kinds[] = {LossKind::least_squares, LossKind::logistic_binary,
                            LossKind::logistic_multinomial};
  for (LossKind kind : kinds) {
    const Objective obj = random_objective(rng, 12, 5, kind);
    for (int t = 0; t < sz.fd_points; ++t) {
      const Point x = random_point(rng, obj.dim_params());
      const std::size_t i = uniform_size(rng, 0, obj.n() - 1);
      worst = std::max(worst, oracle_fd_gradient(obj, i, x));
      ++cases;
    }
  }
  return {"gradient_finite_difference", worst <= 1e-6,
          std::to_string(cases) + " points, max rel err = " + fmt("%.3e", worst)};
}

VerifyCheck check_bregman(Rng& rng, const Sizes& sz) {
  double worst = 0.0;
  for (int t = 0; t < sz.instances; ++t) {
    const std::size_t d = uniform_size(rng, 1, 6);
    const Point x = random_point(rng, d);
    const Point y = random_point(rng, d);
    const Point u = random_point(rng, d);
    const double scale = std::max(1.0, squared_norm(x) + squared_norm(y) + squared_norm(u));
    worst = std::max(worst, std::abs(bregman_three_point_residual(x, y, u)) / scale);
  }
  return {"bregman_three_point", worst <= 1e-12, "max scaled residual = " + fmt("%.3e", worst)};
}

}  // namespace

VerifyScale parse_verify_scale(std::string_view name) {
  if (name == "small") return VerifyScale::small;
  if (name == "full") return VerifyScale::full;
  throw InvalidArgument("unknown verify scale '" + std::string(name) + "' (small|full)");
}

std::string_view to_string(VerifyScale scale) {
  return scale == VerifyScale::full ? "full" : "small";
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::string VerifyReport::table() const {
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::ostringstream out;
  out << "verify scale=" << to_string(scale) << " seed=" << seed << "\n";
  auto row = [&](std::string_view a, std::string_view b, std::string_view c) {
    out << a << std::string(width - a.size() + 2, ' ') << b << std::string(8 - b.size(), ' ')
        << c << "\n";
  };
  row("check", "result", "detail");
  for (const auto& c : checks) row(c.name, c.passed ? "PASS" : "FAIL", c.detail);
  out << (all_passed() ? "all checks passed" : "some checks FAILED") << "\n";
  return out.str();
}

VerifyReport run_verify(const VerifyOptions& options) {
  const Sizes sz = sizes_for(options.scale);
  // One stream per check keeps each check's inputs independent of the others.
  auto stream = [&](std::uint64_t salt) { return Rng(options.seed * 0x9E3779B97F4A7C15ULL + salt); };
  VerifyReport report{options.scale, options.seed, {}};
  {
    Rng r = stream(1);
    report.checks.push_back(check_subset_variance(r, sz, options.delta_fn));
  }
  {
    Rng r = stream(2);
    report.checks.push_back(check_unbiasedness(r, sz));
  }
  {
    Rng r = stream(3);
    report.checks.push_back(check_variance_bound(r, sz, options.delta_fn));
  }
  report.checks.push_back(check_schedules(sz));
  report.checks.push_back(check_coefficient(sz));
  report.checks.push_back(check_batch_minimality());
  report.checks.push_back(check_r1());
  {
    Rng r = stream(4);
    report.checks.push_back(check_fd(r, sz));
  }
  {
    Rng r = stream(5);
    report.checks.push_back(check_bregman(r, sz));
  }
  return report;
}

}  // namespace amsvrg
