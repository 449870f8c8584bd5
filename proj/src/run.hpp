#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"
#include "model.hpp"
#include "trace.hpp"

namespace amsvrg {

// Stop conditions shared by every method. max_evals bounds the evaluation axis;
// an operation only starts if it fits in what is left of the budget.
struct RunLimits {
  std::int64_t max_stages = 1000;
  std::int64_t max_iters = 10'000'000;
  std::optional<std::int64_t> max_evals;
  std::optional<double> target_gap;  // needs f_star
  std::optional<double> f_star;
  bool record_time = true;
  bool record_grad_norm = true;
};

enum class StopReason { max_stages, max_iters, budget, target, stationary };

std::string_view to_string(StopReason reason);

struct RunResult {
  std::string method;
  Point x;
  StopReason stop = StopReason::max_stages;
  double final_objective = 0.0;
  std::int64_t stages = 0;
  EvalCounter counter;
  Trace trace;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;
};

// Owns the per-run accounting: eval counter, budget, trace, clock and the
// target-gap test. Objective values written to the trace are measurement and
// are never charged.
class RunMonitor {
 public:
  RunMonitor(const Objective& obj, std::string method, const RunLimits& limits);

  EvalCounter& counter() noexcept { return counter_; }
  const EvalCounter& counter() const noexcept { return counter_; }
  const RunLimits& limits() const noexcept { return limits_; }

  // True if `axis_cost` more evaluation-axis evaluations stay within max_evals.
  bool can_afford(std::int64_t axis_cost) const noexcept;

  // Records the objective at x; returns true once the target gap is met.
  bool record(std::int64_t stage, std::int64_t iter, const Point& x);

  // Records only when at least `every` evaluation-axis evaluations happened since
  // the previous record (or `force`, if anything happened at all).
  bool record_every(std::int64_t stage, std::int64_t iter, const Point& x, std::int64_t every,
                    bool force = false);

  bool target_reached() const noexcept { return target_reached_; }
  double elapsed_seconds() const;

  RunResult finish(Point x, StopReason stop, std::int64_t stages);

  void warn(std::string message) { warnings_.push_back(std::move(message)); }

 private:
  const Objective& obj_;
  std::string method_;
  RunLimits limits_;
  EvalCounter counter_;
  Trace trace_;
  std::vector<std::string> warnings_;
  std::chrono::steady_clock::time_point start_;
  bool target_reached_ = false;
};

}  // namespace amsvrg
