#include "baselines.hpp"

#include <cmath>

#include "error.hpp"
#include "solver.hpp"

namespace amsvrg {

namespace {

double resolve_step(const Objective& obj, const BaselineConfig& cfg) {
  if (cfg.step_size) {
    if (!(*cfg.step_size > 0.0) || !std::isfinite(*cfg.step_size)) {
      throw InvalidArgument("step size must be positive and finite");
    }
    return *cfg.step_size;
  }
  return default_step_size(obj, cfg.method);
}

std::string tag_for(const BaselineConfig& cfg) {
  return cfg.tag.empty() ? std::string(to_string(cfg.method)) : cfg.tag;
}

void check_start(const Objective& obj, const Point& x0) {
  if (x0.size() != obj.dim_params()) {
    throw InvalidArgument("initial point has " + std::to_string(x0.size()) +
                          " entries, objective expects " + std::to_string(obj.dim_params()));
  }
}

std::size_t checked_batch(const Objective& obj, const BaselineConfig& cfg) {
  if (cfg.batch < 1 || cfg.batch > obj.n()) {
    throw InvalidArgument("batch size " + std::to_string(cfg.batch) + " outside [1, " +
                          std::to_string(obj.n()) + "]");
  }
  return cfg.batch;
}

}  // namespace

BaselineMethod parse_baseline_method(std::string_view name) {
  if (name == "svrg") return BaselineMethod::svrg;
  if (name == "saga") return BaselineMethod::saga;
  if (name == "agd") return BaselineMethod::agd;
  if (name == "sgd") return BaselineMethod::sgd;
  throw InvalidArgument("unknown baseline method '" + std::string(name) + "'");
}

std::string_view to_string(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::svrg: return "svrg";
    case BaselineMethod::saga: return "saga";
    case BaselineMethod::agd: return "agd";
    case BaselineMethod::sgd: return "sgd";
  }
  return "?";
}

double default_step_size(const Objective& obj, BaselineMethod method) {
  const double L = obj.smoothness_bound();
  if (!(L > 0.0)) throw InvalidArgument("smoothness bound is zero; set the step size explicitly");
  switch (method) {
    case BaselineMethod::svrg: return 1.0 / (10.0 * L);
    case BaselineMethod::saga: return 1.0 / (3.0 * L);
    case BaselineMethod::agd:
    case BaselineMethod::sgd: return 1.0 / L;
  }
  return 1.0 / L;
}

RunResult svrg_run(const Objective& obj, const Point& x0, const BaselineConfig& cfg) {
  check_start(obj, x0);
  const double eta = resolve_step(obj, cfg);
  const std::size_t b = checked_batch(obj, cfg);
  const auto n = static_cast<std::int64_t>(obj.n());
  const std::int64_t epoch = cfg.epoch_length.value_or(2 * n);
  if (epoch < 1) throw InvalidArgument("epoch length must be >= 1");
  const auto bi = static_cast<std::int64_t>(b);

  RunMonitor monitor(obj, tag_for(cfg), cfg.limits);
  SubsetSampler sampler(obj.n(), cfg.seed);
  Point x = x0;
  if (monitor.record(0, 0, x)) return monitor.finish(std::move(x), StopReason::target, 0);

  std::int64_t s = 0;
  for (; s < cfg.limits.max_stages; ++s) {
    if (!monitor.can_afford(n + bi)) return monitor.finish(std::move(x), StopReason::budget, s);
    const Point anchor = x;
    const Point anchor_gradient = obj.full_gradient(anchor, &monitor.counter());
    if (norm(anchor_gradient) <= 1e-12) {
      return monitor.finish(std::move(x), StopReason::stationary, s + 1);
    }
    for (std::int64_t t = 0; t < epoch; ++t) {
      if (!monitor.can_afford(bi)) {
        monitor.record_every(s, t, x, n, true);
        return monitor.finish(std::move(x), StopReason::budget, s + 1);
      }
      const auto batch = sampler.sample(b);
      const Point v = svrg_direction(obj, batch, x, anchor, anchor_gradient);
      monitor.counter().charge(2 * bi, bi);
      axpy(-eta, v, x);
      if (monitor.record_every(s, t + 1, x, n, t + 1 == epoch)) {
        return monitor.finish(std::move(x), StopReason::target, s + 1);
      }
    }
  }
  return monitor.finish(std::move(x), StopReason::max_stages, s);
}

SagaState::SagaState(const Objective& obj, const Point& x0, EvalCounter* counter)
    : obj_(obj), mean_(x0.size()) {
  table_.reserve(obj.n());
  for (std::size_t i = 0; i < obj.n(); ++i) {
    table_.push_back(obj.component_gradient(i, x0));
    mean_ += table_.back();
  }
  mean_ *= 1.0 / static_cast<double>(obj.n());
  if (counter) {
    const auto n = static_cast<std::int64_t>(obj.n());
    counter->charge(n, n);
  }
}

void SagaState::step(std::size_t j, double step_size, Point& x, EvalCounter* counter) {
  Point g = obj_.component_gradient(j, x);
  if (counter) counter->charge(1, 1);
  Point correction = g - table_[j];
  Point direction = correction + mean_;
  axpy(-step_size, direction, x);
  axpy(1.0 / static_cast<double>(obj_.n()), correction, mean_);
  table_[j] = std::move(g);
}

Point SagaState::direct_mean() const {
  Point m(mean_.size());
  for (const auto& g : table_) m += g;
  m *= 1.0 / static_cast<double>(table_.size());
  return m;
}

RunResult saga_run(const Objective& obj, const Point& x0, const BaselineConfig& cfg) {
  check_start(obj, x0);
  const double eta = resolve_step(obj, cfg);
  const auto n = static_cast<std::int64_t>(obj.n());

  RunMonitor monitor(obj, tag_for(cfg), cfg.limits);
  SubsetSampler sampler(obj.n(), cfg.seed);
  Point x = x0;
  if (monitor.record(0, 0, x)) return monitor.finish(std::move(x), StopReason::target, 0);
  if (!monitor.can_afford(n + 1)) return monitor.finish(std::move(x), StopReason::budget, 0);
  SagaState state(obj, x, &monitor.counter());

  for (std::int64_t t = 0; t < cfg.limits.max_iters; ++t) {
    if (!monitor.can_afford(1)) {
      monitor.record_every(0, t, x, n, true);
      return monitor.finish(std::move(x), StopReason::budget, 1);
    }
    state.step(sampler.sample_one(), eta, x, &monitor.counter());
    if (monitor.record_every(0, t + 1, x, n)) {
      return monitor.finish(std::move(x), StopReason::target, 1);
    }
  }
  monitor.record_every(0, cfg.limits.max_iters, x, n, true);
  return monitor.finish(std::move(x), StopReason::max_iters, 1);
}

RunResult agd_run(const Objective& obj, const Point& x0, const BaselineConfig& cfg) {
  check_start(obj, x0);
  const ScheduleParams params{resolve_step(obj, cfg)};
  if (cfg.tau_override && !(*cfg.tau_override >= 0.0 && *cfg.tau_override <= 1.0)) {
    throw InvalidArgument("tau override must lie in [0, 1]");
  }
  const auto n = static_cast<std::int64_t>(obj.n());

  RunMonitor monitor(obj, tag_for(cfg), cfg.limits);
  Point y = x0;
  Point z = x0;
  if (monitor.record(0, 0, y)) return monitor.finish(std::move(y), StopReason::target, 0);
  for (std::int64_t k = 0; k < cfg.limits.max_iters; ++k) {
    if (!monitor.can_afford(n)) return monitor.finish(std::move(y), StopReason::budget, 1);
    const double t = cfg.tau_override.value_or(tau(params, k));
    const Point x = convex_combine(y, z, t);
    const Point g = obj.full_gradient(x, &monitor.counter());
    if (norm(g) <= 1e-12) {
      // x is stationary; report it rather than a further step.
      y = x;
      monitor.record(0, k + 1, y);
      return monitor.finish(std::move(y), StopReason::stationary, 1);
    }
    y = sgd_step(x, g, params.eta);
    z = mirror_step(z, g, alpha(params, k));
    if (monitor.record(0, k + 1, y)) return monitor.finish(std::move(y), StopReason::target, 1);
  }
  return monitor.finish(std::move(y), StopReason::max_iters, 1);
}

RunResult sgd_run(const Objective& obj, const Point& x0, const BaselineConfig& cfg) {
  check_start(obj, x0);
  const double eta0 = resolve_step(obj, cfg);
  const std::size_t b = checked_batch(obj, cfg);
  const auto n = static_cast<std::int64_t>(obj.n());
  const auto bi = static_cast<std::int64_t>(b);

  RunMonitor monitor(obj, tag_for(cfg), cfg.limits);
  SubsetSampler sampler(obj.n(), cfg.seed);
  Point x = x0;
  if (monitor.record(0, 0, x)) return monitor.finish(std::move(x), StopReason::target, 0);
  for (std::int64_t t = 0; t < cfg.limits.max_iters; ++t) {
    if (!monitor.can_afford(bi)) {
      monitor.record_every(0, t, x, n, true);
      return monitor.finish(std::move(x), StopReason::budget, 1);
    }
    const double seen = static_cast<double>(monitor.counter().paper_axis());
    const double eta = eta0 / (1.0 + seen / static_cast<double>(n));
    const auto batch = sampler.sample(b);
    const Point g = obj.batch_gradient(batch, x, &monitor.counter());
    axpy(-eta, g, x);
    if (monitor.record_every(0, t + 1, x, n)) {
      return monitor.finish(std::move(x), StopReason::target, 1);
    }
  }
  monitor.record_every(0, cfg.limits.max_iters, x, n, true);
  return monitor.finish(std::move(x), StopReason::max_iters, 1);
}

RunResult run_baseline(const Objective& obj, const Point& x0, const BaselineConfig& cfg) {
  switch (cfg.method) {
    case BaselineMethod::svrg: return svrg_run(obj, x0, cfg);
    case BaselineMethod::saga: return saga_run(obj, x0, cfg);
    case BaselineMethod::agd: return agd_run(obj, x0, cfg);
    case BaselineMethod::sgd: return sgd_run(obj, x0, cfg);
  }
  throw InvalidArgument("unknown baseline method");
}

}  // namespace amsvrg
