#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"
#include "model.hpp"
#include "run.hpp"
#include "sampling.hpp"

namespace amsvrg {

enum class BaselineMethod { svrg, saga, agd, sgd };

BaselineMethod parse_baseline_method(std::string_view name);
std::string_view to_string(BaselineMethod method);

struct BaselineConfig {
  BaselineMethod method = BaselineMethod::svrg;
  // Defaults: svrg 1/(10L), saga 1/(3L), agd 1/L, sgd 1/L (initial rate).
  std::optional<double> step_size;
  std::size_t batch = 1;                     // svrg, sgd
  std::optional<std::int64_t> epoch_length;  // svrg inner steps, default 2n
  // agd only: replaces the tau_k schedule by a constant.
  std::optional<double> tau_override;
  std::uint64_t seed = 1;
  RunLimits limits;
  std::string tag;
};

double default_step_size(const Objective& obj, BaselineMethod method);

// Mini-batch SVRG, anchor refreshed to the last iterate of each stage.
RunResult svrg_run(const Objective& obj, const Point& x0, const BaselineConfig& cfg);

// Table of stored component gradients with a running mean, the state of SAGA.
class SagaState {
 public:
  // Fills the table at x0; charges n when a counter is given.
  SagaState(const Objective& obj, const Point& x0, EvalCounter* counter = nullptr);

  // One update with component j; charges one evaluation.
  void step(std::size_t j, double step_size, Point& x, EvalCounter* counter = nullptr);

  const Point& running_mean() const noexcept { return mean_; }
  Point direct_mean() const;

 private:
  const Objective& obj_;
  std::vector<Point> table_;
  Point mean_;
};

RunResult saga_run(const Objective& obj, const Point& x0, const BaselineConfig& cfg);

// Deterministic three-step accelerated method (convex combination, gradient
// step, mirror step) with exact gradients and the AMSVRG alpha/tau schedules.
RunResult agd_run(const Objective& obj, const Point& x0, const BaselineConfig& cfg);

// Mini-batch SGD with rate eta_t = eta_0 / (1 + t / n), t = evaluations so far.
RunResult sgd_run(const Objective& obj, const Point& x0, const BaselineConfig& cfg);

RunResult run_baseline(const Objective& obj, const Point& x0, const BaselineConfig& cfg);

}  // namespace amsvrg
