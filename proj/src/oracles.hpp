#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "geometry.hpp"
#include "model.hpp"

namespace amsvrg {

// Brute-force checkers. None of them reuses the code path it is compared
// against: subsets are enumerated here, batch sizes are found by linear scan,
// reference optima come from their own solvers.

// Largest n for exhaustive subset enumeration (C(12, 6) = 924 subsets).
inline constexpr std::size_t kMaxEnumerationN = 12;

using DeltaFn = std::function<double(std::size_t n, std::size_t b)>;

// Calls fn(subset) for every size-b subset of {0..n-1}, lexicographically.
void for_each_subset(std::size_t n, std::size_t b,
                     const std::function<void(std::span<const std::size_t>)>& fn);

struct SubsetVarianceCheck {
  double lhs;  // E_I || mean_{i in I} xi_i - mu ||^2, by enumeration
  double rhs;  // delta(n, b) * E_i || xi_i - mu ||^2
};

SubsetVarianceCheck oracle_subset_variance(std::span<const Point> vectors, std::size_t b,
                                           const DeltaFn& delta_fn = {});

// || average over all size-b subsets of the SVRG direction - grad f(x) ||.
double oracle_unbiasedness(const Objective& obj, const Point& x, const Point& y0, std::size_t b);

struct VarianceBoundCheck {
  double variance;  // E_I || v - grad f(x) ||^2, by enumeration
  double bound;     // 4 L delta (f(x) - f* + f(y0) - f*)
};

VarianceBoundCheck oracle_variance_bound(const Objective& obj, const Point& x, const Point& y0,
                                         std::size_t b, const Point& x_star,
                                         const DeltaFn& delta_fn = {});
// Computes x_* with reference_optimum first.
VarianceBoundCheck oracle_variance_bound(const Objective& obj, const Point& x, const Point& y0,
                                         std::size_t b);

// || grad f_i(x) - FD(x) || / max(1, ||FD(x)||), central differences.
double oracle_fd_gradient(const Objective& obj, std::size_t i, const Point& x, double h = 1e-5);

// Smallest b in [1, n] with 4 L delta(n, b) alpha_{k+1} <= p, by linear scan.
std::size_t oracle_min_batch(std::size_t n, double p, std::int64_t k);

// Smallest m with sum_{k=0..m} oracle_min_batch(n, p, k) >= n.
std::int64_t oracle_r1(std::size_t n, double p);

// Normal equations (A^T A / n + lambda I) x = A^T b / n by Gaussian
// elimination with partial pivoting. Least squares only; NumericError when
// the system is singular.
Point solve_least_squares_direct(const Objective& obj);

struct ReferenceSolution {
  Point x;
  double value = 0.0;
  double grad_norm = 0.0;
  std::int64_t iterations = 0;
};

// Nesterov descent with function-value restarts and step 1/L, stopped at
// ||grad f|| <= grad_tol or after max_iters iterations.
ReferenceSolution deterministic_reference(const Objective& obj, const Point& x0,
                                          std::int64_t max_iters = 1'000'000,
                                          double grad_tol = 1e-12);

// Direct solve for least squares of moderate dimension, otherwise
// deterministic_reference from the origin.
ReferenceSolution reference_optimum(const Objective& obj, std::int64_t max_iters = 1'000'000);

struct ScheduleIdentityCheck {
  double exact_max_rel_error;   // rational arithmetic on the schedule formulas
  double double_max_rel_error;  // the same expression in double precision
  bool tau0_exact;              // tau(0) == 1.0 bitwise
};

// L alpha_{k+1}^2 - alpha_{k+1}/2 - L alpha_k^2 against -1/(16 L), k = 1..k_max.
ScheduleIdentityCheck check_telescoping_identity(double L, std::int64_t k_max);

struct CoefficientCheck {
  bool all_nonnegative;  // exact rational evaluation
  double min_value;      // smallest double-precision value seen
  std::int64_t worst_k;
};

// 1/tau_k - (1 + 4 delta_{k+1}) L alpha_{k+1} over k = 0..k_max with the
// library's batch sizes.
CoefficientCheck check_batch_coefficient(std::size_t n, double p, std::int64_t k_max,
                                            double L = 1.0);

// (grad V_x(y), u - y) - (V_x(u) - V_y(u) - V_x(y)).
double bregman_three_point_residual(const Point& x, const Point& y, const Point& u);

}  // namespace amsvrg
