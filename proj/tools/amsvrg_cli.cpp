// amsvrg: run, compare and verify finite-sum solvers from the command line.
// Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "amsvrg/amsvrg.h"

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kNumeric = 3 };

// Thrown with the exit code already decided.
struct CliError {
  int code;
  std::string message;
};

int exit_for(amsvrg_status s) {
  switch (s) {
    case AMSVRG_OK: return kOk;
    case AMSVRG_ERR_INVALID_ARGUMENT: return kUsage;
    case AMSVRG_ERR_NUMERIC: return kNumeric;
    default: return kFailure;
  }
}

void check(amsvrg_status s, const std::string& context) {
  if (s == AMSVRG_OK) return;
  std::string msg = context + ": " + amsvrg_last_error();
  if (s == AMSVRG_ERR_NUMERIC) msg = "aborted, " + msg;
  throw CliError{exit_for(s), msg};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using DatasetPtr = std::unique_ptr<amsvrg_dataset, Deleter<amsvrg_dataset, amsvrg_dataset_free>>;
using ObjectivePtr =
    std::unique_ptr<amsvrg_objective, Deleter<amsvrg_objective, amsvrg_objective_free>>;
using ConfigPtr = std::unique_ptr<amsvrg_config, Deleter<amsvrg_config, amsvrg_config_free>>;
using ResultPtr = std::unique_ptr<amsvrg_result, Deleter<amsvrg_result, amsvrg_result_free>>;
using ComparisonPtr =
    std::unique_ptr<amsvrg_comparison, Deleter<amsvrg_comparison, amsvrg_comparison_free>>;
using ReportPtr =
    std::unique_ptr<amsvrg_verify_report, Deleter<amsvrg_verify_report, amsvrg_verify_free>>;

struct DataFlags {
  std::string data;
  std::string obj = "least_squares";
  std::string scale = "none";
  std::size_t dim = 0;
};

// Everything that becomes a config key. Empty strings mean "library default".
struct SolverFlags {
  std::string method = "amsvrg";
  std::string restart = "r1";
  std::string m, stage_V, stage_gap, eta, p, q, option, batch, epoch_length, tau;
  std::string max_stages, max_iters, target_gap;
  std::string max_evals = "auto";
  std::string fstar = "auto";
  std::string ref_iters;
  std::string tag;
  std::uint64_t seed = 1;
  bool no_timing = false;
};

void add_data_flags(CLI::App* app, DataFlags& f) {
  app->add_option("--data", f.data, "LIBSVM dataset path")->required();
  app->add_option("--obj", f.obj, "objective: least_squares|ridge|ls|logistic|multinomial")
      ->capture_default_str();
  app->add_option("--scale", f.scale, "feature scaling: none|unit_row_norm")->capture_default_str();
  app->add_option("--dim", f.dim, "raise the feature dimension to at least this value")
      ->capture_default_str();
}

void add_solver_flags(CLI::App* app, SolverFlags& f, bool with_method) {
  if (with_method) {
    app->add_option("--method", f.method,
                    "amsvrg|amsvrg-mod|svrg|saga|agd|sgd (amsvrg-r2 etc. also set --restart)")
        ->capture_default_str();
  }
  app->add_option("--restart", f.restart, "stage restart rule: r1|r2|r3|fixed")
      ->capture_default_str();
  app->add_option("--m", f.m, "fixed restart: last inner index m (stage runs k = 0..m)");
  app->add_option("--stage-V", f.stage_V, "fixed restart: Bregman distance estimate for m");
  app->add_option("--stage-gap", f.stage_gap, "fixed restart: initial gap estimate for m");
  app->add_option("--eta", f.eta, "step size")
      ->default_str("amsvrg/agd/sgd 1/L, svrg 1/(10L), saga 1/(3L)");
  app->add_option("--p", f.p, "batch schedule parameter p")->default_str("0.5");
  app->add_option("--q", f.q, "stage contraction parameter q (used for m)")->default_str("0.25");
  app->add_option("--option", f.option, "stage output: 1 last iterate, 2 average")
      ->default_str("1");
  app->add_option("--batch", f.batch, "svrg/sgd mini-batch size")->default_str("1");
  app->add_option("--epoch-length", f.epoch_length, "svrg inner steps per stage")
      ->default_str("2n");
  app->add_option("--tau", f.tau, "agd: constant tau instead of the schedule");
  app->add_option("--seed", f.seed, "random seed (all randomness)")->capture_default_str();
  app->add_option("--max-stages", f.max_stages, "stage limit")->default_str("1000");
  app->add_option("--max-iters", f.max_iters, "iteration limit for saga/agd/sgd")
      ->default_str("10000000");
  app->add_option("--max-evals", f.max_evals, "evaluation-axis evaluation budget, or auto = 100 n")
      ->capture_default_str();
  app->add_option("--target-gap", f.target_gap, "stop once f - f* is at most this");
  app->add_option("--fstar", f.fstar, "f* for gaps: a value, auto (reference solve) or none")
      ->capture_default_str();
  app->add_option("--ref-iters", f.ref_iters, "iteration cap of the reference solve")
      ->default_str("1000000");
  app->add_option("--tag", f.tag, "method tag written to the trace");
  app->add_flag("--no-timing", f.no_timing, "write 0 for wall_seconds (byte-stable traces)");
}

void set(amsvrg_config* cfg, const char* key, const std::string& value) {
  if (value.empty()) return;
  check(amsvrg_config_set_string(cfg, key, value.c_str()), std::string("--") + key);
}

ConfigPtr make_config(const SolverFlags& f, const std::string& method) {
  amsvrg_config* raw = nullptr;
  check(amsvrg_config_create(&raw), "config");
  ConfigPtr cfg(raw);
  set(cfg.get(), "restart", f.restart);
  set(cfg.get(), "method", method);  // after restart: amsvrg-r2 overrides it
  set(cfg.get(), "m", f.m);
  set(cfg.get(), "stage_V", f.stage_V);
  set(cfg.get(), "stage_gap", f.stage_gap);
  set(cfg.get(), "eta", f.eta);
  set(cfg.get(), "p", f.p);
  set(cfg.get(), "q", f.q);
  set(cfg.get(), "option", f.option);
  set(cfg.get(), "batch", f.batch);
  set(cfg.get(), "epoch_length", f.epoch_length);
  set(cfg.get(), "tau", f.tau);
  set(cfg.get(), "seed", std::to_string(f.seed));
  set(cfg.get(), "max_stages", f.max_stages);
  set(cfg.get(), "max_iters", f.max_iters);
  set(cfg.get(), "max_evals", f.max_evals);
  set(cfg.get(), "target_gap", f.target_gap);
  set(cfg.get(), "fstar", f.fstar);
  set(cfg.get(), "reference_iters", f.ref_iters);
  set(cfg.get(), "tag", f.tag);
  if (f.no_timing) set(cfg.get(), "record_time", "false");
  return cfg;
}

bool is_binary(const std::string& obj) { return obj == "logistic" || obj == "logistic_binary"; }

DatasetPtr load(const DataFlags& f) {
  amsvrg_dataset* raw = nullptr;
  check(amsvrg_dataset_load(f.data.c_str(), is_binary(f.obj) ? 1 : 0, f.dim, f.scale.c_str(), &raw),
        "loading " + f.data);
  return DatasetPtr(raw);
}

ObjectivePtr make_objective(const amsvrg_dataset* ds, const std::string& kind, double lambda) {
  amsvrg_objective* raw = nullptr;
  check(amsvrg_objective_create(ds, kind.c_str(), lambda, &raw), "--obj");
  return ObjectivePtr(raw);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw CliError{kFailure, "cannot write '" + path + "'"};
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

int cmd_run(const DataFlags& df, const SolverFlags& sf, double lambda, const std::string& out,
            const std::string& summary) {
  ConfigPtr cfg = make_config(sf, sf.method);
  DatasetPtr ds = load(df);
  ObjectivePtr obj = make_objective(ds.get(), df.obj, lambda);
  amsvrg_result* raw = nullptr;
  check(amsvrg_run(obj.get(), cfg.get(), &raw), "run");
  ResultPtr res(raw);
  for (std::size_t i = 0; i < amsvrg_result_warning_count(res.get()); ++i) {
    std::cerr << "warning: " << amsvrg_result_warning(res.get(), i) << "\n";
  }
  if (!out.empty()) check(amsvrg_result_write_trace(res.get(), out.c_str()), "writing " + out);
  const std::string json = amsvrg_result_summary_json(res.get());
  if (!summary.empty()) write_text(summary, json);
  std::cout << json;
  return kOk;
}

int cmd_compare(const DataFlags& df, const SolverFlags& sf, const std::vector<double>& lambdas,
                const std::string& methods, const std::string& out, const std::string& summary) {
  const auto names = split(methods);
  if (names.size() * lambdas.size() < 2) {
    throw CliError{kUsage, "compare needs at least two runs (--methods, --lambdas)"};
  }
  std::vector<ConfigPtr> cfgs;
  for (const auto& name : names) cfgs.push_back(make_config(sf, name));
  DatasetPtr ds = load(df);
  std::vector<ObjectivePtr> objs;
  std::vector<const amsvrg_objective*> obj_ptrs;
  std::vector<const amsvrg_config*> cfg_ptrs;
  for (double lambda : lambdas) objs.push_back(make_objective(ds.get(), df.obj, lambda));
  for (const auto& obj : objs) {
    for (const auto& cfg : cfgs) {
      obj_ptrs.push_back(obj.get());
      cfg_ptrs.push_back(cfg.get());
    }
  }
  amsvrg_comparison* raw = nullptr;
  check(amsvrg_compare(obj_ptrs.data(), cfg_ptrs.data(), obj_ptrs.size(), &raw), "compare");
  ComparisonPtr cmp(raw);
  if (!out.empty()) check(amsvrg_comparison_write_trace(cmp.get(), out.c_str()), "writing " + out);
  if (!summary.empty()) write_text(summary, amsvrg_comparison_summary_json(cmp.get()));
  std::cout << amsvrg_comparison_table(cmp.get());
  return kOk;
}

int cmd_verify(const std::string& scale, std::uint64_t seed) {
  amsvrg_verify_report* raw = nullptr;
  check(amsvrg_verify(scale.c_str(), seed, &raw), "verify");
  ReportPtr rep(raw);
  std::cout << amsvrg_verify_table(rep.get());
  return amsvrg_verify_passed(rep.get()) ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AMSVRG finite-sum solvers and benchmarks"};
  app.require_subcommand(1);

  DataFlags data;
  SolverFlags solver;
  double lambda = 0.0;
  std::string out, summary;

  auto* run = app.add_subcommand("run", "run one solver, write its trace and summary");
  add_data_flags(run, data);
  add_solver_flags(run, solver, true);
  run->add_option("--lambda", lambda, "L2 regularization")->capture_default_str();
  run->add_option("--out", out, "trace CSV path");
  run->add_option("--summary", summary, "summary JSON path (also printed to stdout)");

  std::string methods = "amsvrg-r1,svrg,saga";
  std::vector<double> lambdas{0.0};
  auto* compare = app.add_subcommand("compare", "run several solvers under one budget");
  add_data_flags(compare, data);
  add_solver_flags(compare, solver, false);
  compare->add_option("--methods", methods, "comma-separated methods")->capture_default_str();
  compare->add_option("--lambdas", lambdas, "regularization values, one sweep per value")
      ->delimiter(',')
      ->capture_default_str();
  compare->add_option("--out", out, "merged trace CSV path");
  compare->add_option("--summary", summary, "summary JSON path");

  std::string scale = "small";
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "run the oracle checks and print a table");
  verify->add_option("--scale", scale, "small|full")->capture_default_str();
  verify->add_option("--seed", verify_seed, "random seed")->capture_default_str();

  std::size_t gen_n = 200, gen_d = 10;
  std::string gen_kind = "least_squares", gen_out, gen_meta;
  double gen_noise = 0.0;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "write a synthetic LIBSVM dataset");
  gen->add_option("--n", gen_n, "examples")->capture_default_str();
  gen->add_option("--dim", gen_d, "features")->capture_default_str();
  gen->add_option("--kind", gen_kind, "least_squares|logistic|multinomial")->capture_default_str();
  gen->add_option("--noise", gen_noise, "label noise level")->capture_default_str();
  gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  gen->add_option("--out", gen_out, "LIBSVM output path")->required();
  gen->add_option("--meta", gen_meta, "planted-model metadata JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == run) return cmd_run(data, solver, lambda, out, summary);
    if (active == compare) return cmd_compare(data, solver, lambdas, methods, out, summary);
    if (active == verify) return cmd_verify(scale, verify_seed);
    check(amsvrg_generate_synthetic(gen_n, gen_d, gen_kind.c_str(), gen_noise, gen_seed,
                                    gen_out.c_str(), gen_meta.empty() ? nullptr : gen_meta.c_str()),
          "gen");
    return kOk;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    if (e.code == kUsage) std::cerr << "\n" << active->help();
    return e.code;
  }
}
