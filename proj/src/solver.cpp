#include "solver.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace amsvrg {

namespace {

constexpr double kStationaryGradNorm = 1e-12;

double resolve_eta(const Objective& obj, const SolverConfig& cfg) {
  if (cfg.eta) {
    if (!(*cfg.eta > 0.0) || !std::isfinite(*cfg.eta)) {
      throw InvalidArgument("eta must be positive and finite");
    }
    return *cfg.eta;
  }
  const double L = obj.smoothness_bound();
  if (!(L > 0.0)) throw InvalidArgument("smoothness bound is zero; set eta explicitly");
  return 1.0 / L;
}

void validate(const Objective& obj, const Point& w0, const SolverConfig& cfg) {
  if (w0.size() != obj.dim_params()) {
    throw InvalidArgument("initial point has " + std::to_string(w0.size()) +
                          " entries, objective expects " + std::to_string(obj.dim_params()));
  }
  if (!(cfg.p > 0.0)) throw InvalidArgument("p must be positive");
  if (!(cfg.q > 0.0)) throw InvalidArgument("q must be positive");
  if (cfg.restart.kind == RestartKind::fixed_m && cfg.restart.m < 0) {
    throw InvalidArgument("fixed stage length m must be >= 0");
  }
  if (cfg.max_stage_iters < 1) throw InvalidArgument("max_stage_iters must be >= 1");
}

std::string default_tag(const SolverConfig& cfg, bool modified) {
  std::string tag = modified ? "amsvrg-mod-" : "amsvrg-";
  tag += to_string(cfg.restart.kind);
  if (cfg.restart.kind == RestartKind::fixed_m) tag += std::to_string(cfg.restart.m);
  return tag;
}

RunResult run_stages(const Objective& obj, const Point& w0, const SolverConfig& cfg,
                     bool modified) {
  validate(obj, w0, cfg);
  RunMonitor monitor(obj, cfg.tag.empty() ? default_tag(cfg, modified) : cfg.tag, cfg.limits);
  if (cfg.p > 0.5) monitor.warn("p > 1/2 is outside the range covered by the convergence analysis");
  if (cfg.option == StageOutput::averaged) {
    monitor.warn("Option II (averaged output) is not covered by the convergence analysis");
  }
  SubsetSampler sampler(obj.n(), cfg.seed);

  Point w = w0;
  if (monitor.record(0, 0, w)) return monitor.finish(std::move(w), StopReason::target, 0);

  std::int64_t s = 0;
  for (; s < cfg.limits.max_stages; ++s) {
    const Point& z0 = modified ? w0 : w;
    StageResult stage = run_stage(obj, w, z0, cfg, sampler, monitor, s);
    w = std::move(stage.point);
    switch (stage.stats.end) {
      case StageEnd::budget: return monitor.finish(std::move(w), StopReason::budget, s + 1);
      case StageEnd::target: return monitor.finish(std::move(w), StopReason::target, s + 1);
      case StageEnd::stationary:
        return monitor.finish(std::move(w), StopReason::stationary, s + 1);
      default: break;
    }
  }
  return monitor.finish(std::move(w), StopReason::max_stages, s);
}

}  // namespace

double alpha(const ScheduleParams& params, std::int64_t k) {
  if (k < 0) throw InvalidArgument("alpha: k must be >= 0");
  return alpha_schedule<double>(params.L_used(), k);
}

double tau(const ScheduleParams&, std::int64_t k) {
  if (k < 0) throw InvalidArgument("tau: k must be >= 0");
  return tau_schedule<double>(k);
}

RestartKind parse_restart_kind(std::string_view name) {
  if (name == "r1") return RestartKind::r1;
  if (name == "r2") return RestartKind::r2;
  if (name == "r3") return RestartKind::r3;
  if (name == "fixed" || name == "fixed_m") return RestartKind::fixed_m;
  throw InvalidArgument("unknown restart policy '" + std::string(name) + "'");
}

std::string_view to_string(RestartKind kind) {
  switch (kind) {
    case RestartKind::fixed_m: return "fixed";
    case RestartKind::r1: return "r1";
    case RestartKind::r2: return "r2";
    case RestartKind::r3: return "r3";
  }
  return "?";
}

std::string_view to_string(StageEnd end) {
  switch (end) {
    case StageEnd::horizon: return "horizon";
    case StageEnd::r2: return "r2";
    case StageEnd::r3_cap: return "r3_cap";
    case StageEnd::r3_sign: return "r3_sign";
    case StageEnd::max_iters: return "max_iters";
    case StageEnd::budget: return "budget";
    case StageEnd::target: return "target";
    case StageEnd::stationary: return "stationary";
  }
  return "?";
}

std::int64_t stage_length(double L, double V, double gap, double q) {
  if (!(L > 0.0) || !(V > 0.0) || !(gap > 0.0) || !(q > 0.0)) {
    throw InvalidArgument("stage_length: all inputs must be positive");
  }
  return static_cast<std::int64_t>(std::ceil(4.0 * std::sqrt(L * V / (q * gap))));
}

std::int64_t restart_r1_horizon(const BatchSchedule& sched) {
  const auto n = static_cast<std::int64_t>(sched.n());
  std::int64_t sum = 0;
  for (std::int64_t m = 0;; ++m) {
    sum += static_cast<std::int64_t>(sched.batch_size(m));
    if (sum >= n) return m;
  }
}

bool restart_r2_trigger(const Point& v_next, const Point& y_next, const Point& y_prev) {
  return dot(v_next, y_next - y_prev) > 0.0;
}

R3Decision restart_r3_trigger(std::int64_t cumulative_b, std::size_t n, bool r2_fired) {
  const auto nn = static_cast<std::int64_t>(n);
  if (cumulative_b > 10 * nn) return R3Decision::hard_cap;
  if (r2_fired && cumulative_b > nn) return R3Decision::sign_test;
  return R3Decision::keep_going;
}

Point svrg_direction(const Objective& obj, std::span<const std::size_t> indices, const Point& x,
                     const Point& anchor, const Point& anchor_gradient) {
  Point v = obj.batch_gradient(indices, x);
  v -= obj.batch_gradient(indices, anchor);
  v += anchor_gradient;
  return v;
}

StageResult run_stage(const Objective& obj, const Point& y0, const Point& z0,
                      const SolverConfig& cfg, SubsetSampler& sampler, RunMonitor& monitor,
                      std::int64_t stage_index) {
  const ScheduleParams params{resolve_eta(obj, cfg)};
  const BatchSchedule sched(obj.n(), cfg.p);
  const auto n = static_cast<std::int64_t>(obj.n());
  const RestartKind policy = cfg.restart.kind;

  StageResult out{y0, {}};
  StageStats& stats = out.stats;
  const std::int64_t calls_before = monitor.counter().component_calls();
  const std::int64_t axis_before = monitor.counter().paper_axis();
  auto close = [&](StageEnd end) {
    stats.end = end;
    stats.truncated = end == StageEnd::budget;
    stats.component_calls = monitor.counter().component_calls() - calls_before;
    stats.paper_axis = monitor.counter().paper_axis() - axis_before;
    return out;
  };

  if (!monitor.can_afford(n + static_cast<std::int64_t>(sched.batch_size(0)))) {
    return close(StageEnd::budget);
  }
  const Point v_tilde = obj.full_gradient(y0, &monitor.counter());
  if (norm(v_tilde) <= kStationaryGradNorm) return close(StageEnd::stationary);

  std::optional<std::int64_t> last_k;
  if (policy == RestartKind::fixed_m) last_k = cfg.restart.m;
  if (policy == RestartKind::r1) last_k = restart_r1_horizon(sched);

  Point y = y0;
  Point z = z0;
  Point x_sum(y0.size());
  for (std::int64_t k = 0;; ++k) {
    if (last_k && k > *last_k) return close(StageEnd::horizon);
    if (!last_k && k >= cfg.max_stage_iters) return close(StageEnd::max_iters);
    const auto b = static_cast<std::int64_t>(sched.batch_size(k));
    if (!monitor.can_afford(b)) return close(StageEnd::budget);

    const Point x = convex_combine(y, z, tau(params, k));
    const auto batch = sampler.sample(static_cast<std::size_t>(b));
    const Point v = svrg_direction(obj, batch, x, y0, v_tilde);
    monitor.counter().charge(2 * b, b);
    Point y_next = sgd_step(x, v, params.eta);
    Point z_next = mirror_step(z, v, alpha(params, k));
    stats.cumulative_b += b;
    stats.iterations = k + 1;
    x_sum += x;

    // Sign test from the second iteration on; it compares two stage iterates.
    const bool sign_fired = k >= 1 && (policy == RestartKind::r2 || policy == RestartKind::r3) &&
                            restart_r2_trigger(v, y_next, y);
    std::optional<StageEnd> restart;
    bool keep_previous = false;
    if (policy == RestartKind::r2 && sign_fired) {
      restart = StageEnd::r2;
      keep_previous = true;
    } else if (policy == RestartKind::r3) {
      switch (restart_r3_trigger(stats.cumulative_b, obj.n(), sign_fired)) {
        case R3Decision::hard_cap: restart = StageEnd::r3_cap; break;
        case R3Decision::sign_test:
          restart = StageEnd::r3_sign;
          keep_previous = true;
          break;
        case R3Decision::keep_going: break;
      }
    }

    if (!keep_previous) {
      y = std::move(y_next);
      z = std::move(z_next);
    }
    if (cfg.option == StageOutput::averaged) {
      out.point = (1.0 / static_cast<double>(k + 1)) * x_sum;
    } else {
      out.point = y;
    }
    const bool hit = monitor.record(stage_index, k + 1, out.point);
    if (hit) return close(StageEnd::target);
    if (restart) return close(*restart);
  }
}

RunResult run_multistage(const Objective& obj, const Point& w0, const SolverConfig& cfg) {
  return run_stages(obj, w0, cfg, false);
}

RunResult run_modified(const Objective& obj, const Point& w0, const SolverConfig& cfg) {
  return run_stages(obj, w0, cfg, true);
}

}  // namespace amsvrg
