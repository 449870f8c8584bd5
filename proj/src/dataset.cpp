#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"

namespace amsvrg {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), is_space);
}

std::string where(std::size_t line_number) {
  return "line " + std::to_string(line_number) + ": ";
}

double parse_real(std::string_view token, std::size_t line_number, const char* what) {
  const std::string buf(token);
  char* end = nullptr;
  const double value = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    throw ParseError(where(line_number) + "malformed " + what + " '" + buf + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(where(line_number) + "non-finite " + what + " '" + buf + "'");
  }
  return value;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double SparseExample::squared_norm() const {
  double acc = 0.0;
  for (const auto& f : features) acc += f.value * f.value;
  return acc;
}

Dataset::Dataset(std::vector<SparseExample> examples, std::size_t dim)
    : examples_(std::move(examples)), dim_(dim) {
  if (examples_.empty()) throw ValidationError("dataset has no examples");
  std::set<double> labels;
  for (const auto& ex : examples_) {
    if (!ex.features.empty() && ex.features.back().index >= dim_) {
      throw ValidationError("feature index " +
                            std::to_string(ex.features.back().index + 1) +
                            " exceeds dim " + std::to_string(dim_));
    }
    labels.insert(ex.label);
  }
  class_labels_.assign(labels.begin(), labels.end());
}

std::size_t Dataset::class_index(double label) const {
  const auto it = std::lower_bound(class_labels_.begin(), class_labels_.end(), label);
  if (it == class_labels_.end() || *it != label) {
    throw ValidationError("label " + format_real(label) + " is not a known class");
  }
  return static_cast<std::size_t>(it - class_labels_.begin());
}

double Dataset::max_squared_row_norm() const {
  double best = 0.0;
  for (const auto& ex : examples_) best = std::max(best, ex.squared_norm());
  return best;
}

SparseExample parse_libsvm_line(std::string_view line, std::size_t line_number) {
  const auto tokens = split_tokens(strip_comment(line));
  if (tokens.empty()) throw ParseError(where(line_number) + "missing label");

  SparseExample ex;
  ex.label = parse_real(tokens[0], line_number, "label");
  ex.features.reserve(tokens.size() - 1);
  for (std::size_t t = 1; t < tokens.size(); ++t) {
    const auto tok = tokens[t];
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.size()) {
      throw ParseError(where(line_number) + "malformed feature token '" +
                       std::string(tok) + "'");
    }
    std::size_t index = 0;
    const auto idx_text = tok.substr(0, colon);
    const auto [ptr, ec] =
        std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), index);
    if (ec != std::errc() || ptr != idx_text.data() + idx_text.size() || index == 0) {
      throw ParseError(where(line_number) + "malformed feature index '" +
                       std::string(idx_text) + "'");
    }
    const double value = parse_real(tok.substr(colon + 1), line_number, "feature value");
    const std::size_t zero_based = index - 1;
    if (!ex.features.empty()) {
      const std::size_t prev = ex.features.back().index;
      if (zero_based == prev) {
        throw ValidationError(where(line_number) + "duplicate feature index " +
                              std::to_string(index));
      }
      if (zero_based < prev) {
        throw ValidationError(where(line_number) + "feature indices not increasing (" +
                              std::to_string(prev + 1) + " then " +
                              std::to_string(index) + ")");
      }
    }
    ex.features.push_back({zero_based, value});
  }
  return ex;
}

LabelMap binary_label_map_for(const std::vector<double>& class_labels) {
  if (class_labels.size() != 2) {
    throw ValidationError("binary task needs exactly two classes, found " +
                          std::to_string(class_labels.size()));
  }
  return {{class_labels[0], -1.0}, {class_labels[1], 1.0}};
}

Dataset parse_libsvm(std::string_view text, const LoadOptions& options) {
  std::vector<SparseExample> examples;
  std::size_t dim = 0;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    const auto line = text.substr(pos, end - pos);
    ++line_number;
    if (!is_blank(strip_comment(line))) {
      auto ex = parse_libsvm_line(line, line_number);
      if (!ex.features.empty()) dim = std::max(dim, ex.features.back().index + 1);
      examples.push_back(std::move(ex));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (examples.empty()) throw ValidationError("dataset is empty");

  if (options.binary_label_map) {
    const auto& map = *options.binary_label_map;
    std::set<double> distinct;
    for (const auto& ex : examples) distinct.insert(ex.label);
    if (distinct.size() > 2) {
      throw ValidationError("binary label map requested but dataset has " +
                            std::to_string(distinct.size()) + " classes");
    }
    for (auto& ex : examples) {
      const auto it = map.find(ex.label);
      if (it == map.end()) {
        throw ValidationError("label " + format_real(ex.label) +
                              " missing from binary label map");
      }
      ex.label = it->second;
    }
  }
  return Dataset(std::move(examples), std::max(dim, options.min_dim));
}

Dataset load_libsvm(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_libsvm(buf.str(), options);
  } catch (const Error& e) {
    // Prefix the file name, keep the error kind.
    const std::string msg = path.string() + ": " + e.what();
    switch (e.code()) {
      case ErrorCode::parse: throw ParseError(msg);
      case ErrorCode::validation: throw ValidationError(msg);
      default: throw;
    }
  }
}

std::string to_libsvm_text(const Dataset& ds) {
  std::string out;
  for (const auto& ex : ds.examples()) {
    out += format_real(ex.label);
    for (const auto& f : ex.features) {
      out += ' ';
      out += std::to_string(f.index + 1);
      out += ':';
      out += format_real(f.value);
    }
    out += '\n';
  }
  return out;
}

void write_libsvm(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write dataset '" + path.string() + "'");
  out << to_libsvm_text(ds);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

Dataset scale_features(const Dataset& ds, ScaleMode mode) {
  if (mode == ScaleMode::none) return ds;
  std::vector<SparseExample> scaled = ds.examples();
  for (auto& ex : scaled) {
    const double nrm = std::sqrt(ex.squared_norm());
    if (nrm == 0.0) continue;
    for (auto& f : ex.features) f.value /= nrm;
  }
  return Dataset(std::move(scaled), ds.dim());
}

ScaleMode parse_scale_mode(std::string_view name) {
  if (name == "none") return ScaleMode::none;
  if (name == "unit_row_norm") return ScaleMode::unit_row_norm;
  throw InvalidArgument("unknown scale mode '" + std::string(name) + "'");
}

}  // namespace amsvrg
