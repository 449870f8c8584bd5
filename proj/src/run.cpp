#include "run.hpp"

#include "error.hpp"

namespace amsvrg {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::max_stages: return "max_stages";
    case StopReason::max_iters: return "max_iters";
    case StopReason::budget: return "budget";
    case StopReason::target: return "target";
    case StopReason::stationary: return "stationary";
  }
  return "?";
}

RunMonitor::RunMonitor(const Objective& obj, std::string method, const RunLimits& limits)
    : obj_(obj),
      method_(std::move(method)),
      limits_(limits),
      start_(std::chrono::steady_clock::now()) {
  if (limits_.max_stages < 0) throw InvalidArgument("max_stages must be >= 0");
  if (limits_.max_iters < 0) throw InvalidArgument("max_iters must be >= 0");
  if (limits_.max_evals && *limits_.max_evals < 0) {
    throw InvalidArgument("max_evals must be >= 0");
  }
  if (limits_.target_gap && !limits_.f_star) {
    throw InvalidArgument("target_gap requires a reference optimum f_star");
  }
}

bool RunMonitor::can_afford(std::int64_t axis_cost) const noexcept {
  if (!limits_.max_evals) return true;
  return counter_.paper_axis() + axis_cost <= *limits_.max_evals;
}

double RunMonitor::elapsed_seconds() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

bool RunMonitor::record(std::int64_t stage, std::int64_t iter, const Point& x) {
  TraceRecord r;
  r.method = method_;
  r.stage = stage;
  r.iter = iter;
  r.component_calls = counter_.component_calls();
  r.paper_axis = counter_.paper_axis();
  r.objective = obj_.full_value(x);
  if (limits_.record_grad_norm) r.grad_norm = norm(obj_.full_gradient(x));
  r.wall_seconds = limits_.record_time ? elapsed_seconds() : 0.0;
  const double objective = r.objective;
  trace_.emit(std::move(r));
  if (limits_.target_gap && objective - *limits_.f_star <= *limits_.target_gap) {
    target_reached_ = true;
  }
  return target_reached_;
}

bool RunMonitor::record_every(std::int64_t stage, std::int64_t iter, const Point& x,
                              std::int64_t every, bool force) {
  const std::int64_t last = trace_.empty() ? -1 : trace_.back().paper_axis;
  const std::int64_t now = counter_.paper_axis();
  if (now == last) return target_reached_;
  if (force || last < 0 || now - last >= every) return record(stage, iter, x);
  return target_reached_;
}

RunResult RunMonitor::finish(Point x, StopReason stop, std::int64_t stages) {
  RunResult result;
  result.method = method_;
  result.final_objective = obj_.full_value(x);
  result.x = std::move(x);
  result.stop = stop;
  result.stages = stages;
  result.counter = counter_;
  result.trace = std::move(trace_);
  result.wall_seconds = limits_.record_time ? elapsed_seconds() : 0.0;
  result.warnings = std::move(warnings_);
  return result;
}

}  // namespace amsvrg
