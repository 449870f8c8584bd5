#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "runner.hpp"
#include "synthetic.hpp"

using namespace amsvrg;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::shared_ptr<const Objective> synthetic_objective(LossKind kind, double noise, double lambda,
                                                     std::size_t n = 200, std::size_t d = 10) {
  auto data = generate_synthetic({n, d, kind, noise, 5});
  return std::make_shared<const Objective>(std::make_shared<const Dataset>(data.dataset), kind,
                                           lambda);
}

}  // namespace

TEST_CASE("noise-free least squares recovers the plant") {
  const SyntheticData data = generate_synthetic({200, 10, LossKind::least_squares, 0.0, 3});
  REQUIRE(data.f_star_unregularized);
  const Objective obj(std::make_shared<const Dataset>(data.dataset), LossKind::least_squares, 0.0);
  const Point x = solve_least_squares_direct(obj);
  CHECK(distance(x, data.planted) <= 1e-10);
  CHECK(obj.full_value(x) - *data.f_star_unregularized <= 1e-10);
}

TEST_CASE("noise-free logistic labels follow the plant") {
  const SyntheticData data = generate_synthetic({300, 5, LossKind::logistic_binary, 0.0, 4});
  for (const auto& ex : data.dataset.examples()) {
    double margin = 0.0;
    for (const auto& f : ex.features) margin += data.planted[f.index] * f.value;
    CHECK(ex.label * margin >= 0.0);
  }
  const SyntheticData multi = generate_synthetic({90, 4, LossKind::logistic_multinomial, 0.0, 4});
  CHECK(multi.dataset.class_labels() == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(multi.planted.size() == 12);
}

TEST_CASE("same seed, same bytes") {
  const auto dir = std::filesystem::temp_directory_path();
  const SyntheticSpec spec{50, 4, LossKind::logistic_binary, 0.5, 11};
  write_synthetic(generate_synthetic(spec), dir / "amsvrg_syn_a.svm", dir / "amsvrg_syn_a.json");
  write_synthetic(generate_synthetic(spec), dir / "amsvrg_syn_b.svm", dir / "amsvrg_syn_b.json");
  CHECK(slurp(dir / "amsvrg_syn_a.svm") == slurp(dir / "amsvrg_syn_b.svm"));
  CHECK(slurp(dir / "amsvrg_syn_a.json") == slurp(dir / "amsvrg_syn_b.json"));
  const auto meta = nlohmann::json::parse(slurp(dir / "amsvrg_syn_a.json"));
  CHECK(meta["planted"].size() == 4);
  CHECK(meta["f_star_unregularized"].is_null());
  CHECK(load_libsvm(dir / "amsvrg_syn_a.svm") == generate_synthetic(spec).dataset);
  CHECK_THROWS_AS(generate_synthetic({0, 4, LossKind::least_squares, 0.0, 1}), InvalidArgument);
}

TEST_CASE("config keys") {
  RunConfig cfg;
  set_config_value(cfg, "method", "amsvrg-r2");
  CHECK(cfg.method == "amsvrg");
  CHECK(cfg.restart == RestartKind::r2);
  set_config_value(cfg, "method", "amsvrg-mod-fixed");
  CHECK(cfg.method == "amsvrg-mod");
  CHECK(cfg.restart == RestartKind::fixed_m);
  set_config_value(cfg, "method", "amsvrg-mod");
  CHECK(cfg.method == "amsvrg-mod");
  set_config_value(cfg, "eta", "0.25");
  CHECK(cfg.eta == 0.25);
  set_config_value(cfg, "fstar", "none");
  CHECK(cfg.fstar_mode == FStarMode::none);
  set_config_value(cfg, "fstar", "1.5");
  CHECK(cfg.fstar_mode == FStarMode::given);
  set_config_value(cfg, "max_evals", "0");
  CHECK(cfg.max_evals == 0);
  set_config_value(cfg, "max_evals", "auto");
  CHECK_FALSE(cfg.max_evals.has_value());
  CHECK_THROWS_AS(set_config_value(cfg, "method", "newton"), InvalidArgument);
  CHECK_THROWS_AS(set_config_value(cfg, "eta", "fast"), InvalidArgument);
  CHECK_THROWS_AS(set_config_value(cfg, "option", "3"), InvalidArgument);
  CHECK_THROWS_AS(set_config_value(cfg, "colour", "red"), InvalidArgument);
}

TEST_CASE("run summary") {
  auto obj = synthetic_objective(LossKind::least_squares, 0.1, 0.01);
  RunConfig cfg;
  cfg.record_time = false;
  const RunOutcome o = run_method(*obj, cfg);
  const auto j = nlohmann::json::parse(summary_json(o));
  for (const char* key : {"method", "stop_reason", "final_objective", "final_gap",
                          "component_calls", "paper_axis", "wall_seconds", "config"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["method"] == "amsvrg-r1");
  CHECK(j["config"]["lambda"] == 0.01);
  CHECK(j["config"]["max_evals"] == 200 * 100);
  CHECK(j["final_gap"].get<double>() <= 1e-10);
}

TEST_CASE("zero budget") {
  auto obj = synthetic_objective(LossKind::logistic_binary, 1.0, 0.0);
  RunConfig cfg;
  cfg.max_evals = 0;
  cfg.fstar_mode = FStarMode::none;
  const RunOutcome o = run_method(*obj, cfg);
  CHECK(o.result.stop == StopReason::budget);
  CHECK(o.result.counter.component_calls() == 0);
  CHECK_FALSE(o.final_gap.has_value());
  CHECK(nlohmann::json::parse(summary_json(o))["final_gap"].is_null());
}

TEST_CASE("every method runs through the runner") {
  auto obj = synthetic_objective(LossKind::logistic_multinomial, 0.5, 1e-3, 60, 4);
  for (const char* m : {"amsvrg", "amsvrg-mod", "svrg", "saga", "agd", "sgd"}) {
    RunConfig cfg;
    set_config_value(cfg, "method", m);
    cfg.max_evals = 60 * 10;
    cfg.record_time = false;
    const RunOutcome o = run_method(*obj, cfg);
    CHECK(o.result.counter.paper_axis() <= 600);
    CHECK(o.final_gap.value() >= -1e-12);
  }
  RunConfig fixed;
  fixed.restart = RestartKind::fixed_m;
  CHECK_THROWS_AS(run_method(*obj, fixed), InvalidArgument);
  fixed.stage_V = 1.0;
  fixed.stage_gap = 1.0;
  fixed.max_evals = 300;
  CHECK(run_method(*obj, fixed).result.method == "amsvrg-fixed");
  RunConfig target;
  target.fstar_mode = FStarMode::none;
  target.target_gap = 1e-3;
  CHECK_THROWS_AS(run_method(*obj, target), InvalidArgument);
}

TEST_CASE("comparison") {
  const auto data = std::make_shared<const Dataset>(
      generate_synthetic({200, 10, LossKind::least_squares, 0.1, 8}).dataset);
  auto obj = std::make_shared<const Objective>(data, LossKind::least_squares, 0.01);
  std::vector<CompareEntry> entries;
  for (const char* m : {"amsvrg-r1", "svrg", "saga"}) {
    RunConfig cfg;
    set_config_value(cfg, "method", m);
    cfg.record_time = false;
    entries.push_back({obj, cfg});
  }
  entries[1].config.max_evals = 5000;  // the smallest budget is shared
  const Comparison cmp = run_compare(entries);
  CHECK(cmp.budget == 5000);
  REQUIRE(cmp.runs.size() == 3);
  std::set<std::string> tags;
  for (const auto& rec : cmp.merged_records()) tags.insert(rec.method);
  CHECK(tags == std::set<std::string>{"amsvrg-r1", "svrg", "saga"});
  for (const auto& run : cmp.runs) {
    CHECK(run.result.counter.paper_axis() <= 5000);
    // Within one step of the budget: an inner batch or, for amsvrg, the
    // anchor plus first batch of a stage that did not fit.
    CHECK(run.result.counter.paper_axis() >= 5000 - 200 - 4);
  }
  CHECK(cmp.table.size() == 3);
  for (const auto& row : cmp.table) {
    CHECK(row.best_objective.size() == 4);
    CHECK(row.best_objective[3] <= row.best_objective[0]);
  }
  CHECK(cmp.table_text().find("saga") != std::string::npos);
  const auto j = nlohmann::json::parse(cmp.summary_json());
  CHECK(j["runs"].size() == 3);

  // lambda sweep: one run per (method, lambda), tags carry lambda.
  auto obj2 = std::make_shared<const Objective>(data, LossKind::least_squares, 0.1);
  std::vector<CompareEntry> sweep = {entries[0], entries[2], {obj2, entries[0].config},
                                     {obj2, entries[2].config}};
  const Comparison sw = run_compare(sweep);
  CHECK(sw.runs.size() == 4);
  CHECK(sw.runs[2].result.method == "amsvrg-r1/lam=0.1");

  const auto other = std::make_shared<const Dataset>(
      generate_synthetic({200, 10, LossKind::least_squares, 0.1, 9}).dataset);
  auto obj3 = std::make_shared<const Objective>(other, LossKind::least_squares, 0.01);
  CHECK_THROWS_AS(run_compare({entries[0], {obj3, entries[1].config}}), ValidationError);
  CHECK_THROWS_AS(run_compare({entries[0]}), InvalidArgument);
}

TEST_CASE("reference values are cached per dataset and lambda") {
  auto obj = synthetic_objective(LossKind::logistic_binary, 1.0, 1e-3);
  const double a = reference_value(*obj);
  const double b = reference_value(*obj);
  CHECK(a == b);
  CHECK(a == reference_optimum(*obj).value);
}
