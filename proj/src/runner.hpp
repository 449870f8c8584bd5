#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "baselines.hpp"
#include "model.hpp"
#include "run.hpp"
#include "solver.hpp"

namespace amsvrg {

// How the reference optimal value f* for gap reporting is obtained.
enum class FStarMode { none, automatic, given };

// Flat description of one run, the surface shared by the C API and the CLI.
// `method` is amsvrg, amsvrg-mod, svrg, saga, agd or sgd.
struct RunConfig {
  std::string method = "amsvrg";
  std::optional<double> eta;  // step size for every method; defaults per method
  double p = 0.5;
  double q = 0.25;
  int option = 1;
  RestartKind restart = RestartKind::r1;
  std::optional<std::int64_t> m;  // fixed restart; otherwise from stage_V and stage_gap
  std::optional<double> stage_V;
  std::optional<double> stage_gap;
  std::size_t batch = 1;
  std::optional<std::int64_t> epoch_length;
  std::optional<double> tau;  // agd constant tau
  std::uint64_t seed = 1;
  std::int64_t max_stages = 1000;
  std::int64_t max_iters = 10'000'000;
  std::optional<std::int64_t> max_evals;  // empty: 100 n
  std::optional<double> target_gap;
  FStarMode fstar_mode = FStarMode::automatic;
  double fstar_value = 0.0;
  std::int64_t reference_iters = 1'000'000;
  bool record_time = true;
  std::string tag;
};

bool is_known_method(std::string_view method);

// Sets one field from a string, the way the C API and CLI flags do.
// Unknown keys and malformed values throw InvalidArgument.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

// f* of (dataset, kind, lambda), computed once per process and then reused.
double reference_value(const Objective& obj, std::int64_t max_iters = 1'000'000);

struct RunOutcome {
  RunConfig config;
  RunResult result;
  std::optional<double> f_star;
  std::optional<double> final_gap;
  std::int64_t budget = 0;
  LossKind kind = LossKind::least_squares;
  double lambda = 0.0;
};

// Runs from the origin. Throws NumericError if the objective stops being finite.
RunOutcome run_method(const Objective& obj, const RunConfig& cfg);

// {method, stop_reason, final_objective, final_gap, component_calls,
//  paper_axis, wall_seconds, config}
std::string summary_json(const RunOutcome& outcome);

struct CompareEntry {
  std::shared_ptr<const Objective> objective;
  RunConfig config;
};

struct BudgetRow {
  std::string method;
  std::vector<double> best_objective;  // per fraction; NaN if nothing recorded yet
};

struct Comparison {
  std::int64_t budget = 0;
  std::vector<double> fractions;
  std::vector<RunOutcome> runs;
  std::vector<BudgetRow> table;

  std::vector<TraceRecord> merged_records() const;
  std::string table_text() const;
  std::string summary_json() const;
};

// Runs every entry under one evaluation-axis budget (the smallest max_evals given,
// or 100 n). All entries must use the same dataset.
Comparison run_compare(const std::vector<CompareEntry>& entries);

}  // namespace amsvrg
