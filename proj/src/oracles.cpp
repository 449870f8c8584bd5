#include "oracles.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "error.hpp"
#include "sampling.hpp"
#include "solver.hpp"

namespace amsvrg {

namespace {

using Rational = boost::multiprecision::cpp_rational;

void require_enumerable(std::size_t n, std::size_t b) {
  if (n > kMaxEnumerationN) {
    throw InvalidArgument("n = " + std::to_string(n) + " too large for enumeration (max " +
                          std::to_string(kMaxEnumerationN) + ")");
  }
  if (b < 1 || b > n) throw InvalidArgument("subset size outside [1, n]");
}

double resolve_delta(const DeltaFn& fn, std::size_t n, std::size_t b) {
  return fn ? fn(n, b) : delta(n, b);
}

// Mean of component gradients, accumulated here rather than via
// full_gradient so the comparison target is computed independently.
Point mean_component_gradient(const Objective& obj, const Point& x) {
  Point g(x.size());
  for (std::size_t i = 0; i < obj.n(); ++i) g += obj.component_gradient(i, x);
  g *= 1.0 / static_cast<double>(obj.n());
  return g;
}

}  // namespace

void for_each_subset(std::size_t n, std::size_t b,
                     const std::function<void(std::span<const std::size_t>)>& fn) {
  if (b < 1 || b > n) throw InvalidArgument("subset size outside [1, n]");
  std::vector<std::size_t> idx(b);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    fn(idx);
    // Advance to the next combination in lexicographic order.
    std::size_t pos = b;
    while (pos > 0 && idx[pos - 1] == n - b + (pos - 1)) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < b; ++j) idx[j] = idx[j - 1] + 1;
  }
}

SubsetVarianceCheck oracle_subset_variance(std::span<const Point> vectors, std::size_t b,
                                           const DeltaFn& delta_fn) {
  const std::size_t n = vectors.size();
  if (n < 2) throw InvalidArgument("oracle_subset_variance needs at least two vectors");
  require_enumerable(n, b);
  const std::size_t d = vectors[0].size();

  Point mu(d);
  for (const auto& v : vectors) mu += v;
  mu *= 1.0 / static_cast<double>(n);

  double lhs_sum = 0.0;
  std::size_t count = 0;
  for_each_subset(n, b, [&](std::span<const std::size_t> subset) {
    double sq = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t i : subset) s += vectors[i][j];
      const double diff = s / static_cast<double>(b) - mu[j];
      sq += diff * diff;
    }
    lhs_sum += sq;
    ++count;
  });

  double spread = 0.0;
  for (const auto& v : vectors) {
    for (std::size_t j = 0; j < d; ++j) spread += (v[j] - mu[j]) * (v[j] - mu[j]);
  }
  spread /= static_cast<double>(n);
  return {lhs_sum / static_cast<double>(count), resolve_delta(delta_fn, n, b) * spread};
}

double oracle_unbiasedness(const Objective& obj, const Point& x, const Point& y0, std::size_t b) {
  require_enumerable(obj.n(), b);
  const Point anchor_gradient = mean_component_gradient(obj, y0);
  Point avg(x.size());
  std::size_t count = 0;
  for_each_subset(obj.n(), b, [&](std::span<const std::size_t> subset) {
    avg += svrg_direction(obj, subset, x, y0, anchor_gradient);
    ++count;
  });
  avg *= 1.0 / static_cast<double>(count);
  return distance(avg, mean_component_gradient(obj, x));
}

VarianceBoundCheck oracle_variance_bound(const Objective& obj, const Point& x, const Point& y0,
                                         std::size_t b, const Point& x_star,
                                         const DeltaFn& delta_fn) {
  require_enumerable(obj.n(), b);
  const Point anchor_gradient = mean_component_gradient(obj, y0);
  const Point grad_x = mean_component_gradient(obj, x);
  double total = 0.0;
  std::size_t count = 0;
  for_each_subset(obj.n(), b, [&](std::span<const std::size_t> subset) {
    const Point v = svrg_direction(obj, subset, x, y0, anchor_gradient);
    const double d = distance(v, grad_x);
    total += d * d;
    ++count;
  });
  const double f_star = obj.full_value(x_star);
  const double gaps = (obj.full_value(x) - f_star) + (obj.full_value(y0) - f_star);
  const double bound =
      4.0 * obj.smoothness_bound() * resolve_delta(delta_fn, obj.n(), b) * gaps;
  return {total / static_cast<double>(count), bound};
}

VarianceBoundCheck oracle_variance_bound(const Objective& obj, const Point& x, const Point& y0,
                                         std::size_t b) {
  return oracle_variance_bound(obj, x, y0, b, reference_optimum(obj).x);
}

double oracle_fd_gradient(const Objective& obj, std::size_t i, const Point& x, double h) {
  const Point g = obj.component_gradient(i, x);
  Point fd(x.size());
  Point probe = x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    const double up = obj.component_value(i, probe);
    probe[j] = x[j] - h;
    const double down = obj.component_value(i, probe);
    probe[j] = x[j];
    fd[j] = (up - down) / (2.0 * h);
  }
  return distance(g, fd) / std::max(1.0, norm(fd));
}

std::size_t oracle_min_batch(std::size_t n, double p, std::int64_t k) {
  const double L = 1.0;
  const double alpha_next = static_cast<double>(k + 2) / (4.0 * L);
  for (std::size_t b = 1; b <= n; ++b) {
    const double nd = static_cast<double>(n);
    const double bd = static_cast<double>(b);
    const double shrink = n == 1 ? 0.0 : (nd - bd) / (bd * (nd - 1.0));
    if (4.0 * L * shrink * alpha_next <= p * (1.0 + 1e-12)) return b;
  }
  return n;
}

std::int64_t oracle_r1(std::size_t n, double p) {
  std::int64_t sum = 0;
  for (std::int64_t m = 0;; ++m) {
    sum += static_cast<std::int64_t>(oracle_min_batch(n, p, m));
    if (sum >= static_cast<std::int64_t>(n)) return m;
  }
}

Point solve_least_squares_direct(const Objective& obj) {
  if (obj.kind() != LossKind::least_squares) {
    throw InvalidArgument("direct solve applies to least squares only");
  }
  const std::size_t d = obj.dim_params();
  const double inv_n = 1.0 / static_cast<double>(obj.n());
  // Augmented matrix [H | r], row-major, d x (d + 1).
  std::vector<double> m(d * (d + 1), 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return m[r * (d + 1) + c]; };
  for (const auto& ex : obj.data().examples()) {
    for (const auto& fi : ex.features) {
      for (const auto& fj : ex.features) at(fi.index, fj.index) += inv_n * fi.value * fj.value;
      at(fi.index, d) += inv_n * ex.label * fi.value;
    }
  }
  double scale = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    at(r, r) += obj.lambda();
    scale = std::max(scale, std::abs(at(r, r)));
  }

  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r) {
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    }
    if (!(std::abs(at(pivot, col)) > 1e-13 * std::max(scale, 1e-300))) {
      throw NumericError("normal equations are singular");
    }
    if (pivot != col) {
      for (std::size_t c = col; c <= d; ++c) std::swap(at(col, c), at(pivot, c));
    }
    for (std::size_t r = col + 1; r < d; ++r) {
      const double factor = at(r, col) / at(col, col);
      if (factor == 0.0) continue;
      for (std::size_t c = col; c <= d; ++c) at(r, c) -= factor * at(col, c);
    }
  }
  Point x(d);
  for (std::size_t r = d; r-- > 0;) {
    double s = at(r, d);
    for (std::size_t c = r + 1; c < d; ++c) s -= at(r, c) * x[c];
    x[r] = s / at(r, r);
  }
  return x;
}

ReferenceSolution deterministic_reference(const Objective& obj, const Point& x0,
                                          std::int64_t max_iters, double grad_tol) {
  const double L = obj.smoothness_bound();
  if (!(L > 0.0)) throw InvalidArgument("reference solver needs a positive smoothness bound");
  const double step = 1.0 / L;
  Point y = x0;
  Point x = x0;
  double t = 1.0;
  ReferenceSolution out;
  for (std::int64_t it = 0; it < max_iters; ++it) {
    const Point g = obj.full_gradient(x);
    const double gn = norm(g);
    if (gn <= grad_tol) {
      out.x = x;
      out.grad_norm = gn;
      out.iterations = it;
      out.value = obj.full_value(x);
      return out;
    }
    Point y_next = x;
    axpy(-step, g, y_next);
    if (dot(g, y_next - y) > 0.0) {
      // Momentum is pointing uphill: drop it.
      t = 1.0;
      x = y_next;
      y = std::move(y_next);
      continue;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    x = y_next;
    axpy((t - 1.0) / t_next, y_next - y, x);
    y = std::move(y_next);
    t = t_next;
    out.iterations = it + 1;
  }
  out.x = y;
  out.grad_norm = norm(obj.full_gradient(y));
  out.value = obj.full_value(y);
  out.iterations = max_iters;
  return out;
}

ReferenceSolution reference_optimum(const Objective& obj, std::int64_t max_iters) {
  if (obj.kind() == LossKind::least_squares && obj.dim_params() <= 2000) {
    try {
      ReferenceSolution out;
      out.x = solve_least_squares_direct(obj);
      out.value = obj.full_value(out.x);
      out.grad_norm = norm(obj.full_gradient(out.x));
      return out;
    } catch (const NumericError&) {
      // Rank-deficient without regularization: fall through to descent.
    }
  }
  return deterministic_reference(obj, Point(obj.dim_params()), max_iters);
}

ScheduleIdentityCheck check_telescoping_identity(double L, std::int64_t k_max) {
  if (!(L > 0.0)) throw InvalidArgument("L must be positive");
  ScheduleIdentityCheck out{0.0, 0.0, tau_schedule<double>(0) == 1.0};
  const Rational Lr(L);
  const Rational target = Rational(-1) / (Rational(16) * Lr);
  const double target_d = -1.0 / (16.0 * L);
  const ScheduleParams params{1.0 / L};
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const Rational a_next = alpha_schedule<Rational>(Lr, k);
    const Rational a_prev = alpha_schedule<Rational>(Lr, k - 1);
    const Rational expr = Lr * a_next * a_next - a_next / 2 - Lr * a_prev * a_prev;
    const Rational rel = abs((expr - target) / target);
    out.exact_max_rel_error = std::max(out.exact_max_rel_error, rel.convert_to<double>());

    const double an = alpha_schedule<double>(L, k);
    const double ap = alpha_schedule<double>(L, k - 1);
    const double expr_d = L * an * an - 0.5 * an - L * ap * ap;
    out.double_max_rel_error =
        std::max(out.double_max_rel_error, std::abs((expr_d - target_d) / target_d));
  }
  // alpha() goes through ScheduleParams; make sure it agrees with the template.
  if (alpha(params, 0) != alpha_schedule<double>(1.0 / params.eta, 0)) {
    out.exact_max_rel_error = std::numeric_limits<double>::infinity();
  }
  return out;
}

CoefficientCheck check_batch_coefficient(std::size_t n, double p, std::int64_t k_max,
                                            double L) {
  const BatchSchedule sched(n, p);
  const Rational Lr(L);
  const ScheduleParams params{1.0 / L};
  CoefficientCheck out{true, std::numeric_limits<double>::infinity(), 0};
  for (std::int64_t k = 0; k <= k_max; ++k) {
    const std::size_t b = sched.batch_size(k);
    const Rational dr = n == 1 ? Rational(0)
                               : Rational(static_cast<long long>(n - b)) /
                                     Rational(static_cast<long long>(b * (n - 1)));
    const Rational coef = Rational(1) / tau_schedule<Rational>(k) -
                          (Rational(1) + 4 * dr) * Lr * alpha_schedule<Rational>(Lr, k);
    if (coef < 0) out.all_nonnegative = false;

    const double coef_d = 1.0 / tau(params, k) - (1.0 + 4.0 * delta(n, b)) * L * alpha(params, k);
    if (coef_d < out.min_value) {
      out.min_value = coef_d;
      out.worst_k = k;
    }
  }
  return out;
}

double bregman_three_point_residual(const Point& x, const Point& y, const Point& u) {
  const double lhs = dot(EuclideanBregman::gradient(x, y), u - y);
  const double rhs = bregman_value(x, u) - bregman_value(y, u) - bregman_value(x, y);
  return lhs - rhs;
}

}  // namespace amsvrg
