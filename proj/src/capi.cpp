#include "amsvrg/amsvrg.h"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"
#include "model.hpp"
#include "runner.hpp"
#include "synthetic.hpp"
#include "trace.hpp"
#include "verify.hpp"

struct amsvrg_dataset {
  std::shared_ptr<const amsvrg::Dataset> data;
};

struct amsvrg_objective {
  std::shared_ptr<const amsvrg::Objective> obj;
};

struct amsvrg_config {
  amsvrg::RunConfig cfg;
};

struct amsvrg_result {
  amsvrg::RunOutcome outcome;
  std::string stop_reason;
  std::string summary;
  std::string csv;
};

struct amsvrg_comparison {
  amsvrg::Comparison cmp;
  std::string table;
  std::string summary;
  std::string csv;
};

struct amsvrg_verify_report {
  amsvrg::VerifyReport report;
  std::string table;
};

namespace {

thread_local std::string last_error;

amsvrg_status status_for(amsvrg::ErrorCode code) {
  switch (code) {
    case amsvrg::ErrorCode::invalid_argument: return AMSVRG_ERR_INVALID_ARGUMENT;
    case amsvrg::ErrorCode::parse: return AMSVRG_ERR_PARSE;
    case amsvrg::ErrorCode::io: return AMSVRG_ERR_IO;
    case amsvrg::ErrorCode::validation: return AMSVRG_ERR_VALIDATION;
    case amsvrg::ErrorCode::numeric: return AMSVRG_ERR_NUMERIC;
  }
  return AMSVRG_ERR_INTERNAL;
}

template <class F>
amsvrg_status guard(F&& fn) {
  try {
    fn();
    last_error.clear();
    return AMSVRG_OK;
  } catch (const amsvrg::Error& e) {
    last_error = e.what();
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return AMSVRG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AMSVRG_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return AMSVRG_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw amsvrg::InvalidArgument(what);
}

amsvrg::Point point_from(const amsvrg::Objective& obj, const double* x, std::size_t len) {
  require(x != nullptr || len == 0, "x is null");
  if (len != obj.dim_params()) {
    throw amsvrg::InvalidArgument("x has " + std::to_string(len) + " entries, objective expects " +
                                  std::to_string(obj.dim_params()));
  }
  return amsvrg::Point(std::vector<double>(x, x + len));
}

}  // namespace

extern "C" {

const char* amsvrg_last_error(void) { return last_error.c_str(); }

const char* amsvrg_status_name(amsvrg_status status) {
  switch (status) {
    case AMSVRG_OK: return "ok";
    case AMSVRG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case AMSVRG_ERR_PARSE: return "parse_error";
    case AMSVRG_ERR_IO: return "io_error";
    case AMSVRG_ERR_VALIDATION: return "validation_error";
    case AMSVRG_ERR_NUMERIC: return "numeric_error";
    case AMSVRG_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* amsvrg_version(void) { return "1.0.0"; }

amsvrg_status amsvrg_dataset_load(const char* path, int binary_labels, size_t min_dim,
                                  const char* scale, amsvrg_dataset** out) {
  return guard([&] {
    require(path && out, "null argument");
    amsvrg::LoadOptions opts;
    opts.min_dim = min_dim;
    amsvrg::Dataset ds = amsvrg::load_libsvm(path, opts);
    if (binary_labels) {
      opts.binary_label_map = amsvrg::binary_label_map_for(ds.class_labels());
      ds = amsvrg::load_libsvm(path, opts);
    }
    const auto mode = amsvrg::parse_scale_mode(scale ? scale : "none");
    if (mode != amsvrg::ScaleMode::none) ds = amsvrg::scale_features(ds, mode);
    *out = new amsvrg_dataset{std::make_shared<const amsvrg::Dataset>(std::move(ds))};
  });
}

size_t amsvrg_dataset_size(const amsvrg_dataset* ds) { return ds ? ds->data->size() : 0; }
size_t amsvrg_dataset_dim(const amsvrg_dataset* ds) { return ds ? ds->data->dim() : 0; }
void amsvrg_dataset_free(amsvrg_dataset* ds) { delete ds; }

amsvrg_status amsvrg_generate_synthetic(size_t n, size_t d, const char* kind, double noise,
                                        uint64_t seed, const char* path, const char* meta_path) {
  return guard([&] {
    require(kind && path, "null argument");
    amsvrg::SyntheticSpec spec;
    spec.n = n;
    spec.d = d;
    spec.kind = amsvrg::parse_loss_kind(kind);
    spec.noise = noise;
    spec.seed = seed;
    amsvrg::write_synthetic(amsvrg::generate_synthetic(spec), path,
                            meta_path ? meta_path : std::filesystem::path());
  });
}

amsvrg_status amsvrg_objective_create(const amsvrg_dataset* ds, const char* kind, double lambda,
                                      amsvrg_objective** out) {
  return guard([&] {
    require(ds && kind && out, "null argument");
    *out = new amsvrg_objective{
        std::make_shared<const amsvrg::Objective>(ds->data, amsvrg::parse_loss_kind(kind), lambda)};
  });
}

size_t amsvrg_objective_dim(const amsvrg_objective* obj) { return obj ? obj->obj->dim_params() : 0; }

double amsvrg_objective_smoothness(const amsvrg_objective* obj) {
  return obj ? obj->obj->smoothness_bound() : 0.0;
}

amsvrg_status amsvrg_objective_value(const amsvrg_objective* obj, const double* x, size_t len,
                                     double* value) {
  return guard([&] {
    require(obj && value, "null argument");
    *value = obj->obj->full_value(point_from(*obj->obj, x, len));
  });
}

amsvrg_status amsvrg_objective_gradient(const amsvrg_objective* obj, const double* x, size_t len,
                                        double* grad) {
  return guard([&] {
    require(obj && grad, "null argument");
    const amsvrg::Point g = obj->obj->full_gradient(point_from(*obj->obj, x, len));
    for (std::size_t i = 0; i < g.size(); ++i) grad[i] = g[i];
  });
}

void amsvrg_objective_free(amsvrg_objective* obj) { delete obj; }

amsvrg_status amsvrg_config_create(amsvrg_config** out) {
  return guard([&] {
    require(out, "null argument");
    *out = new amsvrg_config{};
  });
}

amsvrg_status amsvrg_config_set_string(amsvrg_config* cfg, const char* key, const char* value) {
  return guard([&] {
    require(cfg && key && value, "null argument");
    amsvrg::set_config_value(cfg->cfg, key, value);
  });
}

amsvrg_status amsvrg_config_set_double(amsvrg_config* cfg, const char* key, double value) {
  return guard([&] {
    require(cfg && key, "null argument");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    amsvrg::set_config_value(cfg->cfg, key, buf);
  });
}

amsvrg_status amsvrg_config_set_int(amsvrg_config* cfg, const char* key, int64_t value) {
  return guard([&] {
    require(cfg && key, "null argument");
    amsvrg::set_config_value(cfg->cfg, key, std::to_string(value));
  });
}

void amsvrg_config_free(amsvrg_config* cfg) { delete cfg; }

amsvrg_status amsvrg_run(const amsvrg_objective* obj, const amsvrg_config* cfg,
                         amsvrg_result** out) {
  return guard([&] {
    require(obj && cfg && out, "null argument");
    auto res = std::make_unique<amsvrg_result>();
    res->outcome = amsvrg::run_method(*obj->obj, cfg->cfg);
    res->stop_reason = std::string(amsvrg::to_string(res->outcome.result.stop));
    res->summary = amsvrg::summary_json(res->outcome);
    res->csv = amsvrg::format_trace_csv(res->outcome.result.trace.records());
    *out = res.release();
  });
}

const char* amsvrg_result_method(const amsvrg_result* res) {
  return res ? res->outcome.result.method.c_str() : "";
}
const char* amsvrg_result_stop_reason(const amsvrg_result* res) {
  return res ? res->stop_reason.c_str() : "";
}
double amsvrg_result_final_objective(const amsvrg_result* res) {
  return res ? res->outcome.result.final_objective : 0.0;
}
int amsvrg_result_final_gap(const amsvrg_result* res, double* gap) {
  if (!res || !res->outcome.final_gap) return 0;
  if (gap) *gap = *res->outcome.final_gap;
  return 1;
}
int64_t amsvrg_result_component_calls(const amsvrg_result* res) {
  return res ? res->outcome.result.counter.component_calls() : 0;
}
int64_t amsvrg_result_paper_axis(const amsvrg_result* res) {
  return res ? res->outcome.result.counter.paper_axis() : 0;
}
double amsvrg_result_wall_seconds(const amsvrg_result* res) {
  return res ? res->outcome.result.wall_seconds : 0.0;
}
size_t amsvrg_result_trace_length(const amsvrg_result* res) {
  return res ? res->outcome.result.trace.size() : 0;
}
size_t amsvrg_result_warning_count(const amsvrg_result* res) {
  return res ? res->outcome.result.warnings.size() : 0;
}
const char* amsvrg_result_warning(const amsvrg_result* res, size_t i) {
  if (!res || i >= res->outcome.result.warnings.size()) return "";
  return res->outcome.result.warnings[i].c_str();
}
size_t amsvrg_result_solution(const amsvrg_result* res, double* x, size_t len) {
  if (!res) return 0;
  const auto& p = res->outcome.result.x;
  for (std::size_t i = 0; x && i < len && i < p.size(); ++i) x[i] = p[i];
  return p.size();
}
const char* amsvrg_result_summary_json(const amsvrg_result* res) {
  return res ? res->summary.c_str() : "";
}
const char* amsvrg_result_trace_csv(const amsvrg_result* res) { return res ? res->csv.c_str() : ""; }

amsvrg_status amsvrg_result_write_trace(const amsvrg_result* res, const char* path) {
  return guard([&] {
    require(res && path, "null argument");
    amsvrg::write_csv(res->outcome.result.trace, path);
  });
}

void amsvrg_result_free(amsvrg_result* res) { delete res; }

amsvrg_status amsvrg_compare(const amsvrg_objective* const* objs, const amsvrg_config* const* cfgs,
                             size_t count, amsvrg_comparison** out) {
  return guard([&] {
    require(objs && cfgs && out, "null argument");
    std::vector<amsvrg::CompareEntry> entries;
    for (std::size_t i = 0; i < count; ++i) {
      require(objs[i] && cfgs[i], "null entry");
      entries.push_back({objs[i]->obj, cfgs[i]->cfg});
    }
    auto cmp = std::make_unique<amsvrg_comparison>();
    cmp->cmp = amsvrg::run_compare(entries);
    cmp->table = cmp->cmp.table_text();
    cmp->summary = cmp->cmp.summary_json();
    cmp->csv = amsvrg::format_trace_csv(cmp->cmp.merged_records());
    *out = cmp.release();
  });
}

int64_t amsvrg_comparison_budget(const amsvrg_comparison* cmp) { return cmp ? cmp->cmp.budget : 0; }
size_t amsvrg_comparison_run_count(const amsvrg_comparison* cmp) {
  return cmp ? cmp->cmp.runs.size() : 0;
}
const char* amsvrg_comparison_table(const amsvrg_comparison* cmp) {
  return cmp ? cmp->table.c_str() : "";
}
const char* amsvrg_comparison_summary_json(const amsvrg_comparison* cmp) {
  return cmp ? cmp->summary.c_str() : "";
}
const char* amsvrg_comparison_trace_csv(const amsvrg_comparison* cmp) {
  return cmp ? cmp->csv.c_str() : "";
}

amsvrg_status amsvrg_comparison_write_trace(const amsvrg_comparison* cmp, const char* path) {
  return guard([&] {
    require(cmp && path, "null argument");
    amsvrg::write_csv(cmp->cmp.merged_records(), path);
  });
}

void amsvrg_comparison_free(amsvrg_comparison* cmp) { delete cmp; }

amsvrg_status amsvrg_verify(const char* scale, uint64_t seed, amsvrg_verify_report** out) {
  return guard([&] {
    require(out, "null argument");
    amsvrg::VerifyOptions opts;
    opts.scale = amsvrg::parse_verify_scale(scale ? scale : "small");
    opts.seed = seed;
    auto rep = std::make_unique<amsvrg_verify_report>();
    rep->report = amsvrg::run_verify(opts);
    rep->table = rep->report.table();
    *out = rep.release();
  });
}

int amsvrg_verify_passed(const amsvrg_verify_report* rep) {
  return rep && rep->report.all_passed() ? 1 : 0;
}
size_t amsvrg_verify_check_count(const amsvrg_verify_report* rep) {
  return rep ? rep->report.checks.size() : 0;
}
const char* amsvrg_verify_check_name(const amsvrg_verify_report* rep, size_t i) {
  if (!rep || i >= rep->report.checks.size()) return "";
  return rep->report.checks[i].name.c_str();
}
int amsvrg_verify_check_passed(const amsvrg_verify_report* rep, size_t i) {
  if (!rep || i >= rep->report.checks.size()) return 0;
  return rep->report.checks[i].passed ? 1 : 0;
}
const char* amsvrg_verify_table(const amsvrg_verify_report* rep) {
  return rep ? rep->table.c_str() : "";
}
void amsvrg_verify_free(amsvrg_verify_report* rep) { delete rep; }

}  // extern "C"
