#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "geometry.hpp"
#include "model.hpp"
#include "run.hpp"
#include "sampling.hpp"

namespace amsvrg {

// Step size eta and the schedules it induces through L_used = 1 / eta:
//   alpha_{k+1} = (k + 2) / (4 L_used)
//   1 / tau_k   = L_used alpha_{k+1} + 1/2 = (k + 2) / 4 + 1/2
// Since L_used alpha_{k+1} is (k + 2) / 4 for every L_used, tau is evaluated
// through that product and tau_0 comes out exactly 1.
struct ScheduleParams {
  double eta = 1.0;

  double L_used() const noexcept { return 1.0 / eta; }
};

template <class Real>
Real alpha_schedule(const Real& L_used, std::int64_t k) {
  return Real(k + 2) / (Real(4) * L_used);
}

template <class Real>
Real tau_schedule(std::int64_t k) {
  const Real scaled_alpha = Real(k + 2) / Real(4);  // L_used * alpha_{k+1}
  return Real(1) / (scaled_alpha + Real(1) / Real(2));
}

// alpha_{k+1}; k >= 0.
double alpha(const ScheduleParams& params, std::int64_t k);
// tau_k in (0, 1]; k >= 0.
double tau(const ScheduleParams& params, std::int64_t k);

enum class StageOutput { last_iterate, averaged };  // Option I / Option II

enum class RestartKind { fixed_m, r1, r2, r3 };

RestartKind parse_restart_kind(std::string_view name);
std::string_view to_string(RestartKind kind);

struct RestartPolicy {
  RestartKind kind = RestartKind::r1;
  std::int64_t m = 0;  // fixed_m only: the stage runs iterations k = 0..m

  static RestartPolicy fixed(std::int64_t m) { return {RestartKind::fixed_m, m}; }
  static RestartPolicy r1() { return {RestartKind::r1, 0}; }
  static RestartPolicy r2() { return {RestartKind::r2, 0}; }
  static RestartPolicy r3() { return {RestartKind::r3, 0}; }
};

struct SolverConfig {
  std::optional<double> eta;  // default 1 / smoothness_bound()
  double p = 0.5;
  double q = 0.25;
  StageOutput option = StageOutput::last_iterate;
  RestartPolicy restart;
  // Upper bound on iterations of an adaptive (r2/r3) stage.
  std::int64_t max_stage_iters = 1'000'000;
  std::uint64_t seed = 1;
  RunLimits limits;
  std::string tag;  // trace method tag; derived from the policy when empty
};

// ceil(4 sqrt(L V / (q gap))): stage length after which the expected gap
// contracts by q + 5p/2. Throws InvalidArgument on non-positive inputs.
std::int64_t stage_length(double L, double V, double gap, double q);

// Minimal m with sum_{k=0..m} b_{k+1} >= n.
std::int64_t restart_r1_horizon(const BatchSchedule& sched);

// <v_{k+1}, y_{k+1} - y_k> > 0
bool restart_r2_trigger(const Point& v_next, const Point& y_next, const Point& y_prev);

enum class R3Decision { keep_going, hard_cap, sign_test };

// hard_cap when cumulative_b > 10 n (the stage returns the current y);
// sign_test when the R2 test fired and cumulative_b > n (returns previous y).
R3Decision restart_r3_trigger(std::int64_t cumulative_b, std::size_t n, bool r2_fired);

// v = grad f_I(x) - grad f_I(anchor) + anchor_gradient. Not charged; callers
// charge 2|I| calls and |I| on the evaluation axis.
Point svrg_direction(const Objective& obj, std::span<const std::size_t> indices, const Point& x,
                     const Point& anchor, const Point& anchor_gradient);

enum class StageEnd { horizon, r2, r3_cap, r3_sign, max_iters, budget, target, stationary };

std::string_view to_string(StageEnd end);

struct StageStats {
  std::int64_t iterations = 0;
  std::int64_t cumulative_b = 0;
  std::int64_t component_calls = 0;
  std::int64_t paper_axis = 0;
  StageEnd end = StageEnd::horizon;
  bool truncated = false;  // cut short by budget
};

struct StageResult {
  Point point;
  StageStats stats;
};

// One stage: full gradient at y0, then accelerated SVRG iterations k = 0, 1, ...
// until the restart policy, budget or target ends it. Emits one trace record
// per iteration through `monitor`, at the point the stage would return if it
// stopped there.
StageResult run_stage(const Objective& obj, const Point& y0, const Point& z0,
                      const SolverConfig& cfg, SubsetSampler& sampler, RunMonitor& monitor,
                      std::int64_t stage_index);

// Multi-stage scheme, y0 = z0 = w_s at every stage.
RunResult run_multistage(const Objective& obj, const Point& w0, const SolverConfig& cfg);

// Same as run_multistage except z0 = w0 at every stage.
RunResult run_modified(const Objective& obj, const Point& w0, const SolverConfig& cfg);

}  // namespace amsvrg
