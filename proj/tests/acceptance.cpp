// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "baselines.hpp"
#include "oracles.hpp"
#include "runner.hpp"
#include "sampling.hpp"
#include "solver.hpp"
#include "synthetic.hpp"

using namespace amsvrg;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out{false, ""};
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0.0 && secs > time_limit) {
    out.pass = false;
    out.detail += " [over time limit " + std::to_string(time_limit) + " s]";
  }
  if (!out.pass) ++failures;
  std::printf("%s  %-36s %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", name.c_str(),
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Point gaussian(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Point p(d);
  for (auto& v : p) v = g(rng);
  return p;
}

std::shared_ptr<const Dataset> small_dataset(std::mt19937_64& rng, std::size_t n, std::size_t d,
                                             LossKind kind) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<SparseExample> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) rows[i].features.push_back({j, g(rng)});
    switch (kind) {
      case LossKind::least_squares: rows[i].label = g(rng); break;
      case LossKind::logistic_binary: rows[i].label = i % 2 ? 1.0 : -1.0; break;
      case LossKind::logistic_multinomial: rows[i].label = static_cast<double>(i % 3); break;
    }
  }
  return std::make_shared<const Dataset>(std::move(rows), d);
}

// Objective value at the last trace record of every stage, after the start record.
std::vector<double> stage_end_objectives(const RunResult& r) {
  std::vector<double> out{r.trace.records().front().objective};
  const auto& recs = r.trace.records();
  for (std::size_t i = 1; i < recs.size(); ++i) {
    if (i + 1 == recs.size() || recs[i + 1].stage != recs[i].stage) out.push_back(recs[i].objective);
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Evaluation-axis count of the first record whose gap is at most `gap`.
double axis_to_gap(const RunResult& r, double f_star, double gap) {
  for (const auto& rec : r.trace.records()) {
    if (rec.objective - f_star <= gap) return static_cast<double>(rec.paper_axis);
  }
  return std::numeric_limits<double>::infinity();
}

// Unregularized logistic regression shared by the two convergence criteria.
struct LogisticInstance {
  std::shared_ptr<const Objective> obj;
  ReferenceSolution ref;
};

const LogisticInstance& logistic_instance() {
  static const LogisticInstance inst = [] {
    const SyntheticData data = generate_synthetic({1000, 20, LossKind::logistic_binary, 1.0, 2024});
    auto obj = std::make_shared<const Objective>(std::make_shared<const Dataset>(data.dataset),
                                                 LossKind::logistic_binary, 0.0);
    return LogisticInstance{obj, deterministic_reference(*obj, Point(obj->dim_params()), 1'000'000)};
  }();
  return inst;
}

RunResult amsvrg_logistic(RestartKind kind, std::uint64_t seed) {
  const auto& inst = logistic_instance();
  SolverConfig cfg;
  cfg.p = 0.5;
  cfg.restart.kind = kind;
  cfg.seed = seed;
  cfg.limits.max_evals = 100 * static_cast<std::int64_t>(inst.obj->n());
  cfg.limits.record_time = false;
  return run_multistage(*inst.obj, Point(inst.obj->dim_params()), cfg);
}

RunResult baseline_logistic(BaselineMethod method, std::uint64_t seed) {
  const auto& inst = logistic_instance();
  BaselineConfig cfg;
  cfg.method = method;
  cfg.seed = seed;
  cfg.limits.max_evals = 100 * static_cast<std::int64_t>(inst.obj->n());
  cfg.limits.record_time = false;
  return run_baseline(*inst.obj, Point(inst.obj->dim_params()), cfg);
}

}  // namespace

int main() {
  criterion("subset-mean variance identity", 5.0, [] {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    int cases = 0;
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 2 + rng() % 7;  // 2..8
      const std::size_t d = 1 + rng() % 4;  // 1..4
      std::vector<Point> xi;
      for (std::size_t i = 0; i < n; ++i) xi.push_back(gaussian(rng, d));
      for (std::size_t b = 1; b <= n; ++b) {
        const auto c = oracle_subset_variance(xi, b);
        worst = std::max(worst, std::abs(c.lhs - c.rhs));
        ++cases;
      }
    }
    return Outcome{worst <= 1e-12,
                   "100 instances, " + std::to_string(cases) + " (n,b) pairs, max |lhs-rhs| " +
                       sci(worst)};
  });

  criterion("svrg direction unbiased", 5.0, [] {
    std::mt19937_64 rng(102);
    double worst = 0.0;
    int cases = 0;
    const LossKind kinds[] = {LossKind::least_squares, LossKind::logistic_binary,
                              LossKind::logistic_multinomial};
    for (int t = 0; t < 60; ++t) {
      const LossKind kind = kinds[t % 3];
      const std::size_t n = 3 + rng() % 6;  // 3..8
      const Objective obj(small_dataset(rng, n, 1 + rng() % 4, kind), kind, 0.05);
      const Point x = gaussian(rng, obj.dim_params());
      const Point y0 = gaussian(rng, obj.dim_params());
      for (std::size_t b = 1; b <= n; ++b) {
        worst = std::max(worst, oracle_unbiasedness(obj, x, y0, b));
        ++cases;
      }
    }
    return Outcome{worst <= 1e-12, std::to_string(cases) + " cases, max deviation " + sci(worst)};
  });

  criterion("conditional variance bound", 30.0, [] {
    std::mt19937_64 rng(103);
    int violations = 0;
    int cases = 0;
    double tightest = 0.0;
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 2 + rng() % 7;
      const std::size_t d = 1 + rng() % 4;
      const double lambda = (t % 4 == 0) ? 0.0 : 1e-3 * static_cast<double>(1 + rng() % 100);
      const Objective obj(small_dataset(rng, n, d, LossKind::least_squares),
                          LossKind::least_squares, lambda);
      const Point x_star = reference_optimum(obj).x;
      const Point x = gaussian(rng, d);
      const Point y0 = gaussian(rng, d);
      for (std::size_t b = 1; b <= n; ++b) {
        const auto c = oracle_variance_bound(obj, x, y0, b, x_star);
        if (c.variance > c.bound * (1.0 + 1e-12) + 1e-20) ++violations;
        if (c.bound > 0.0) tightest = std::max(tightest, c.variance / c.bound);
        ++cases;
      }
    }
    return Outcome{violations == 0, std::to_string(cases) + " cases, " +
                                        std::to_string(violations) +
                                        " violations, max variance/bound " + sci(tightest)};
  });

  criterion("schedule identities", 0.0, [] {
    bool ok = true;
    double exact = 0.0, dbl = 0.0;
    for (double L : {0.1, 1.0, 10.0}) {
      const auto c = check_telescoping_identity(L, 10'000);
      ok = ok && c.tau0_exact && c.exact_max_rel_error <= 1e-12;
      exact = std::max(exact, c.exact_max_rel_error);
      dbl = std::max(dbl, c.double_max_rel_error);
    }
    for (double eta : {10.0, 1.0, 0.1}) ok = ok && tau({eta}, 0) == 1.0;
    return Outcome{ok, "k = 1..10000, L in {0.1,1,10}: rational rel err " + sci(exact) +
                           ", double rel err " + sci(dbl) + ", tau_0 == 1"};
  });

  criterion("batch coefficient nonnegative", 0.0, [] {
    bool ok = true;
    double min_double = std::numeric_limits<double>::infinity();
    for (std::size_t n : {10, 100, 1000, 10000}) {
      for (double p : {0.1, 0.25, 0.5}) {
        const auto c = check_batch_coefficient(n, p, 10'000);
        ok = ok && c.all_nonnegative;
        min_double = std::min(min_double, c.min_value);
      }
    }
    return Outcome{ok, "k <= 10000, p in {0.1,0.25,0.5}, n in {10,...,10^4}: exact >= 0 (double min " +
                           sci(min_double) + ")"};
  });

  criterion("batch size minimality", 0.0, [] {
    int mismatches = 0, cases = 0;
    for (std::size_t n : {10, 100, 1000}) {
      for (double p : {0.1, 0.5}) {
        const BatchSchedule s(n, p);
        for (std::int64_t k = 0; k <= 200; ++k) {
          mismatches += s.batch_size(k) != oracle_min_batch(n, p, k);
          ++cases;
        }
      }
    }
    return Outcome{mismatches == 0,
                   std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches"};
  });

  criterion("r1 horizon", 0.0, [] {
    int mismatches = 0, cases = 0;
    for (std::size_t n = 1; n <= 500; ++n) {
      for (double p : {0.1, 0.5, 1.0, 2.0}) {
        mismatches += restart_r1_horizon(BatchSchedule(n, p)) != oracle_r1(n, p);
        ++cases;
      }
    }
    const auto spot = restart_r1_horizon(BatchSchedule(100, 0.5));
    return Outcome{mismatches == 0 && spot == 9,
                   std::to_string(cases) + " cases, " + std::to_string(mismatches) +
                       " mismatches, m(n=100, p=0.5) = " + std::to_string(spot)};
  });

  criterion("strongly convex convergence", 30.0, [] {
    const SyntheticData data = generate_synthetic({1000, 20, LossKind::least_squares, 0.1, 2023});
    const Objective obj(std::make_shared<const Dataset>(data.dataset), LossKind::least_squares, 1e-2);
    const double f_star = obj.full_value(solve_least_squares_direct(obj));
    SolverConfig cfg;
    cfg.eta = 1.0 / obj.smoothness_bound();
    cfg.restart = RestartPolicy::r1();
    cfg.seed = 1;
    cfg.limits.max_evals = 100 * 1000;
    cfg.limits.record_time = false;
    const RunResult r = run_multistage(obj, Point(20), cfg);
    const auto ends = stage_end_objectives(r);
    std::vector<double> ratios;
    for (std::size_t s = 1; s < ends.size(); ++s) {
      // Gaps below 1e-12 are at the rounding floor of f and carry no rate information.
      const double prev = ends[s - 1] - f_star;
      if (prev > 1e-12) ratios.push_back(std::max(0.0, ends[s] - f_star) / prev);
    }
    const double med = ratios.empty() ? 1.0 : median(ratios);
    const double gap = r.final_objective - f_star;
    return Outcome{med <= 0.75 && gap <= 1e-10 && r.counter.paper_axis() <= 100 * 1000,
                   "median stage ratio " + sci(med) + " over " + std::to_string(ratios.size()) +
                       " stages, final gap " + sci(gap) + " at evaluation axis " +
                       std::to_string(r.counter.paper_axis()) + " (" +
                       std::string(to_string(r.stop)) + ")"};
  });

  criterion("non-strongly convex convergence", 60.0, [] {
    const auto& inst = logistic_instance();
    double best_gap = std::numeric_limits<double>::infinity();
    std::string which;
    std::string detail;
    for (RestartKind kind : {RestartKind::r1, RestartKind::r2, RestartKind::r3}) {
      const RunResult r = amsvrg_logistic(kind, 1);
      const double gap = r.final_objective - inst.ref.value;
      detail += std::string(to_string(kind)) + " " + sci(gap) + ", ";
      if (gap < best_gap) {
        best_gap = gap;
        which = std::string(to_string(kind));
      }
    }
    return Outcome{best_gap <= 1e-4,
                   "final gaps within 100n: " + detail + "best " + which + "; reference grad norm " +
                       sci(inst.ref.grad_norm) + " after " + std::to_string(inst.ref.iterations) +
                       " iterations"};
  });

  criterion("parity with svrg and saga", 0.0, [] {
    const auto& inst = logistic_instance();
    std::vector<double> ratios;
    std::string detail;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const double ours = axis_to_gap(amsvrg_logistic(RestartKind::r1, seed), inst.ref.value, 1e-4);
      const double svrg =
          axis_to_gap(baseline_logistic(BaselineMethod::svrg, seed), inst.ref.value, 1e-4);
      const double saga =
          axis_to_gap(baseline_logistic(BaselineMethod::saga, seed), inst.ref.value, 1e-4);
      const double best = std::min(svrg, saga);
      ratios.push_back(ours / best);
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s%.0f/%.0f/%.0f", seed == 1 ? "" : ", ", ours, svrg, saga);
      detail += buf;
    }
    const double med = median(ratios);
    return Outcome{med <= 2.0, "amsvrg-r1 axis / min(svrg, saga) median " + sci(med) +
                                   " (amsvrg/svrg/saga evals to gap 1e-4: " + detail + ")"};
  });

  criterion("deterministic traces", 0.0, [] {
    const SyntheticData data = generate_synthetic({300, 8, LossKind::logistic_binary, 1.0, 7});
    const Objective obj(std::make_shared<const Dataset>(data.dataset), LossKind::logistic_binary,
                        1e-4);
    const auto dir = std::filesystem::temp_directory_path();
    auto bytes = [](const std::filesystem::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::stringstream s;
      s << in.rdbuf();
      return s.str();
    };
    int identical = 0, total = 0;
    for (const char* m : {"amsvrg-r1", "amsvrg-r2", "amsvrg-r3", "amsvrg-mod", "svrg", "saga",
                          "agd", "sgd"}) {
      RunConfig cfg;
      set_config_value(cfg, "method", m);
      cfg.seed = 11;
      cfg.fstar_mode = FStarMode::none;
      cfg.max_evals = 20 * 300;
      cfg.record_time = false;
      const auto a = dir / "amsvrg_accept_a.csv";
      const auto b = dir / "amsvrg_accept_b.csv";
      write_csv(run_method(obj, cfg).result.trace, a);
      write_csv(run_method(obj, cfg).result.trace, b);
      identical += bytes(a) == bytes(b) && !bytes(a).empty();
      ++total;
      std::filesystem::remove(a);
      std::filesystem::remove(b);
    }
    return Outcome{identical == total, std::to_string(identical) + "/" + std::to_string(total) +
                                           " methods byte-identical across two runs"};
  });

  criterion("gradient correctness", 0.0, [] {
    std::mt19937_64 rng(104);
    bool ok = true;
    std::string detail;
    const LossKind kinds[] = {LossKind::least_squares, LossKind::logistic_binary,
                              LossKind::logistic_multinomial};
    for (LossKind kind : kinds) {
      const Objective obj(small_dataset(rng, 20, 6, kind), kind, 0.01);
      double worst = 0.0;
      for (int t = 0; t < 50; ++t) {
        const Point x = gaussian(rng, obj.dim_params());
        worst = std::max(worst, oracle_fd_gradient(obj, rng() % obj.n(), x));
      }
      ok = ok && worst <= 1e-6;
      detail += std::string(to_string(kind)) + " " + sci(worst) + " ";
    }
    return Outcome{ok, "50 points each, max rel err: " + detail};
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
