#include "runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

#include "error.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace amsvrg {

namespace {

using nlohmann::json;

double to_double(std::string_view key, std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw InvalidArgument("'" + std::string(key) + "' expects a number, got '" + s + "'");
  }
  return v;
}

std::int64_t to_int(std::string_view key, std::string_view text) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("'" + std::string(key) + "' expects an integer, got '" +
                          std::string(text) + "'");
  }
  return v;
}

bool to_bool(std::string_view key, std::string_view text) {
  if (text == "1" || text == "true" || text == "on") return true;
  if (text == "0" || text == "false" || text == "off") return false;
  throw InvalidArgument("'" + std::string(key) + "' expects true or false");
}

bool is_amsvrg(const RunConfig& cfg) {
  return cfg.method == "amsvrg" || cfg.method == "amsvrg-mod";
}

std::string resolved_tag(const RunConfig& cfg) {
  if (!cfg.tag.empty()) return cfg.tag;
  if (!is_amsvrg(cfg)) return cfg.method;
  std::string tag = cfg.method + "-" + std::string(to_string(cfg.restart));
  if (cfg.restart == RestartKind::fixed_m && cfg.m) tag += std::to_string(*cfg.m);
  return tag;
}

RunLimits limits_for(const RunConfig& cfg, std::int64_t budget, std::optional<double> f_star) {
  RunLimits limits;
  limits.max_stages = cfg.max_stages;
  limits.max_iters = cfg.max_iters;
  limits.max_evals = budget;
  limits.target_gap = cfg.target_gap;
  limits.f_star = f_star;
  limits.record_time = cfg.record_time;
  return limits;
}

SolverConfig solver_config(const Objective& obj, const RunConfig& cfg, RunLimits limits) {
  SolverConfig s;
  s.eta = cfg.eta;
  s.p = cfg.p;
  s.q = cfg.q;
  if (cfg.option != 1 && cfg.option != 2) throw InvalidArgument("option must be 1 or 2");
  s.option = cfg.option == 2 ? StageOutput::averaged : StageOutput::last_iterate;
  s.restart.kind = cfg.restart;
  if (cfg.restart == RestartKind::fixed_m) {
    if (cfg.m && (cfg.stage_V || cfg.stage_gap)) {
      throw InvalidArgument("give either m or stage_V with stage_gap, not both");
    }
    if (cfg.m) {
      s.restart.m = *cfg.m;
    } else if (cfg.stage_V && cfg.stage_gap) {
      const double L_used = cfg.eta ? 1.0 / *cfg.eta : obj.smoothness_bound();
      s.restart.m = stage_length(L_used, *cfg.stage_V, *cfg.stage_gap, cfg.q);
    } else {
      throw InvalidArgument("fixed restart needs m, or stage_V and stage_gap");
    }
  }
  s.seed = cfg.seed;
  s.limits = std::move(limits);
  s.tag = resolved_tag(cfg);
  return s;
}

BaselineConfig baseline_config(const RunConfig& cfg, RunLimits limits) {
  BaselineConfig b;
  b.method = parse_baseline_method(cfg.method);
  b.step_size = cfg.eta;
  b.batch = cfg.batch;
  b.epoch_length = cfg.epoch_length;
  b.tau_override = cfg.tau;
  b.seed = cfg.seed;
  b.limits = std::move(limits);
  b.tag = resolved_tag(cfg);
  return b;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(); }
json optional_json(const std::optional<std::int64_t>& v) { return v ? json(*v) : json(); }

json config_json(const RunConfig& cfg, std::int64_t budget, double lambda, LossKind kind) {
  json j;
  j["method"] = cfg.method;
  j["objective"] = std::string(to_string(kind));
  j["lambda"] = lambda;
  j["eta"] = optional_json(cfg.eta);
  j["p"] = cfg.p;
  j["q"] = cfg.q;
  j["option"] = cfg.option;
  j["restart"] = std::string(to_string(cfg.restart));
  j["m"] = optional_json(cfg.m);
  j["stage_V"] = optional_json(cfg.stage_V);
  j["stage_gap"] = optional_json(cfg.stage_gap);
  j["batch"] = cfg.batch;
  j["epoch_length"] = optional_json(cfg.epoch_length);
  j["tau"] = optional_json(cfg.tau);
  j["seed"] = cfg.seed;
  j["max_stages"] = cfg.max_stages;
  j["max_iters"] = cfg.max_iters;
  j["max_evals"] = budget;
  j["target_gap"] = optional_json(cfg.target_gap);
  switch (cfg.fstar_mode) {
    case FStarMode::none: j["fstar"] = "none"; break;
    case FStarMode::automatic: j["fstar"] = "auto"; break;
    case FStarMode::given: j["fstar"] = cfg.fstar_value; break;
  }
  return j;
}

json outcome_json(const RunOutcome& o) {
  const RunResult& r = o.result;
  json j;
  j["method"] = r.method;
  j["stop_reason"] = std::string(to_string(r.stop));
  j["final_objective"] = r.final_objective;
  j["final_gap"] = optional_json(o.final_gap);
  j["f_star"] = optional_json(o.f_star);
  j["component_calls"] = r.counter.component_calls();
  j["paper_axis"] = r.counter.paper_axis();
  j["wall_seconds"] = r.wall_seconds;
  j["stages"] = r.stages;
  j["warnings"] = r.warnings;
  return j;
}

bool same_data(const Dataset& a, const Dataset& b) { return &a == &b || a == b; }

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

bool is_known_method(std::string_view method) {
  return method == "amsvrg" || method == "amsvrg-mod" || method == "svrg" || method == "saga" ||
         method == "agd" || method == "sgd";
}

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "method") {
    // amsvrg-r2, amsvrg-mod-fixed and so on also pick the restart policy.
    std::string name(value);
    for (std::string_view base : {"amsvrg-mod-", "amsvrg-"}) {
      if (name.rfind(base, 0) == 0 && name.size() > base.size() && name != "amsvrg-mod") {
        cfg.restart = parse_restart_kind(name.substr(base.size()));
        name = std::string(base.substr(0, base.size() - 1));
        break;
      }
    }
    if (!is_known_method(name)) {
      throw InvalidArgument("unknown method '" + std::string(value) +
                            "' (amsvrg, amsvrg-mod, svrg, saga, agd, sgd)");
    }
    cfg.method = name;
  } else if (key == "restart") {
    cfg.restart = parse_restart_kind(value);
  } else if (key == "eta") {
    cfg.eta = to_double(key, value);
  } else if (key == "p") {
    cfg.p = to_double(key, value);
  } else if (key == "q") {
    cfg.q = to_double(key, value);
  } else if (key == "option") {
    cfg.option = static_cast<int>(to_int(key, value));
    if (cfg.option != 1 && cfg.option != 2) throw InvalidArgument("option must be 1 or 2");
  } else if (key == "m") {
    cfg.m = to_int(key, value);
  } else if (key == "stage_V") {
    cfg.stage_V = to_double(key, value);
  } else if (key == "stage_gap") {
    cfg.stage_gap = to_double(key, value);
  } else if (key == "batch") {
    const auto b = to_int(key, value);
    if (b < 1) throw InvalidArgument("batch must be >= 1");
    cfg.batch = static_cast<std::size_t>(b);
  } else if (key == "epoch_length") {
    cfg.epoch_length = to_int(key, value);
  } else if (key == "tau") {
    cfg.tau = to_double(key, value);
  } else if (key == "seed") {
    const auto s = to_int(key, value);
    if (s < 0) throw InvalidArgument("seed must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "max_stages") {
    cfg.max_stages = to_int(key, value);
  } else if (key == "max_iters") {
    cfg.max_iters = to_int(key, value);
  } else if (key == "max_evals") {
    if (value == "auto") {
      cfg.max_evals.reset();
    } else {
      cfg.max_evals = to_int(key, value);
    }
  } else if (key == "target_gap") {
    cfg.target_gap = to_double(key, value);
  } else if (key == "fstar") {
    if (value == "auto") {
      cfg.fstar_mode = FStarMode::automatic;
    } else if (value == "none") {
      cfg.fstar_mode = FStarMode::none;
    } else {
      cfg.fstar_mode = FStarMode::given;
      cfg.fstar_value = to_double(key, value);
    }
  } else if (key == "reference_iters") {
    cfg.reference_iters = to_int(key, value);
  } else if (key == "record_time") {
    cfg.record_time = to_bool(key, value);
  } else if (key == "tag") {
    cfg.tag = std::string(value);
  } else {
    throw InvalidArgument("unknown config key '" + std::string(key) + "'");
  }
}

double reference_value(const Objective& obj, std::int64_t max_iters) {
  using Key = std::tuple<const Dataset*, LossKind, double, std::int64_t>;
  struct Entry {
    std::shared_ptr<const Dataset> keep_alive;
    double value;
  };
  static std::mutex mu;
  static std::map<Key, Entry> cache;
  const Key key{&obj.data(), obj.kind(), obj.lambda(), max_iters};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second.value;
  }
  const double value = reference_optimum(obj, max_iters).value;
  std::lock_guard lock(mu);
  cache.emplace(key, Entry{obj.data_ptr(), value});
  return value;
}

RunOutcome run_method(const Objective& obj, const RunConfig& cfg) {
  if (!is_known_method(cfg.method)) throw InvalidArgument("unknown method '" + cfg.method + "'");
  const auto n = static_cast<std::int64_t>(obj.n());
  const std::int64_t budget = cfg.max_evals.value_or(100 * n);
  if (budget < 0) throw InvalidArgument("max_evals must be >= 0");

  RunOutcome out;
  out.config = cfg;
  out.budget = budget;
  out.kind = obj.kind();
  out.lambda = obj.lambda();
  switch (cfg.fstar_mode) {
    case FStarMode::none: break;
    case FStarMode::automatic: out.f_star = reference_value(obj, cfg.reference_iters); break;
    case FStarMode::given: out.f_star = cfg.fstar_value; break;
  }
  if (cfg.target_gap && !out.f_star) throw InvalidArgument("target_gap needs an f* value");

  RunLimits limits = limits_for(cfg, budget, out.f_star);
  const Point x0(obj.dim_params());
  if (cfg.method == "amsvrg") {
    out.result = run_multistage(obj, x0, solver_config(obj, cfg, std::move(limits)));
  } else if (cfg.method == "amsvrg-mod") {
    out.result = run_modified(obj, x0, solver_config(obj, cfg, std::move(limits)));
  } else {
    out.result = run_baseline(obj, x0, baseline_config(cfg, std::move(limits)));
  }
  if (!std::isfinite(out.result.final_objective)) {
    throw NumericError("objective became non-finite in " + out.result.method);
  }
  if (out.f_star) out.final_gap = out.result.final_objective - *out.f_star;
  return out;
}

std::string summary_json(const RunOutcome& outcome) {
  json j = outcome_json(outcome);
  j["config"] = config_json(outcome.config, outcome.budget, outcome.lambda, outcome.kind);
  return j.dump(2) + "\n";
}

std::vector<TraceRecord> Comparison::merged_records() const {
  std::vector<TraceRecord> all;
  for (const auto& run : runs) {
    const auto& recs = run.result.trace.records();
    all.insert(all.end(), recs.begin(), recs.end());
  }
  return all;
}

std::string Comparison::table_text() const {
  std::size_t width = 6;
  for (const auto& row : table) width = std::max(width, row.method.size());
  std::ostringstream out;
  out << "best objective by evaluation-axis budget (budget = " << budget << ")\n";
  out << "method" << std::string(width - 6 + 2, ' ');
  for (double f : fractions) {
    std::string h = "<=" + fmt_g(f) + "B";
    out << h << std::string(h.size() < 18 ? 18 - h.size() : 1, ' ');
  }
  out << "\n";
  for (const auto& row : table) {
    out << row.method << std::string(width - row.method.size() + 2, ' ');
    for (double v : row.best_objective) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%-18.10g", v);
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

std::string Comparison::summary_json() const {
  json j;
  j["budget"] = budget;
  j["fractions"] = fractions;
  j["runs"] = json::array();
  for (const auto& run : runs) j["runs"].push_back(json::parse(amsvrg::summary_json(run)));
  json best = json::object();
  for (const auto& row : table) {
    json vals = json::array();
    for (double v : row.best_objective) vals.push_back(std::isnan(v) ? json() : json(v));
    best[row.method] = vals;
  }
  j["best_objective"] = best;
  return j.dump(2) + "\n";
}

Comparison run_compare(const std::vector<CompareEntry>& entries) {
  if (entries.size() < 2) throw InvalidArgument("compare needs at least two runs");
  for (const auto& e : entries) {
    if (!e.objective) throw InvalidArgument("compare entry without an objective");
  }
  const Dataset& data = entries.front().objective->data();
  std::set<double> lambdas;
  for (const auto& e : entries) {
    if (!same_data(e.objective->data(), data)) {
      throw ValidationError("compare runs must share one dataset");
    }
    lambdas.insert(e.objective->lambda());
  }

  Comparison cmp;
  cmp.fractions = {0.1, 0.25, 0.5, 1.0};
  cmp.budget = 100 * static_cast<std::int64_t>(data.size());
  bool any_budget = false;
  for (const auto& e : entries) {
    if (!e.config.max_evals) continue;
    cmp.budget = any_budget ? std::min(cmp.budget, *e.config.max_evals) : *e.config.max_evals;
    any_budget = true;
  }

  std::set<std::string> used;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    RunConfig cfg = entries[i].config;
    cfg.max_evals = cmp.budget;
    std::string tag = resolved_tag(cfg);
    if (lambdas.size() > 1) tag += "/lam=" + fmt_g(entries[i].objective->lambda());
    if (used.count(tag)) tag += "/" + std::to_string(i);
    used.insert(tag);
    cfg.tag = tag;
    cmp.runs.push_back(run_method(*entries[i].objective, cfg));
  }

  for (const auto& run : cmp.runs) {
    BudgetRow row{run.result.method, {}};
    for (double f : cmp.fractions) {
      const double cap = f * static_cast<double>(cmp.budget);
      double best = std::numeric_limits<double>::quiet_NaN();
      for (const auto& r : run.result.trace.records()) {
        if (static_cast<double>(r.paper_axis) > cap) break;
        if (std::isnan(best) || r.objective < best) best = r.objective;
      }
      row.best_objective.push_back(best);
    }
    cmp.table.push_back(std::move(row));
  }
  return cmp;
}

}  // namespace amsvrg
