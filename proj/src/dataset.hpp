#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amsvrg {

struct Feature {
  std::size_t index;  // 0-based in memory, 1-based on disk
  double value;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct SparseExample {
  std::vector<Feature> features;  // strictly increasing indices
  double label = 0.0;

  double squared_norm() const;

  friend bool operator==(const SparseExample&, const SparseExample&) = default;
};

// Immutable once built; every example's features are implicit zeros outside
// the stored indices.
class Dataset {
 public:
  Dataset() = default;
  // Throws ValidationError on an empty example list or a dim smaller than the
  // largest feature index.
  Dataset(std::vector<SparseExample> examples, std::size_t dim);

  std::size_t size() const noexcept { return examples_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<SparseExample>& examples() const noexcept { return examples_; }
  const SparseExample& operator[](std::size_t i) const { return examples_[i]; }
  // Sorted distinct labels.
  const std::vector<double>& class_labels() const noexcept { return class_labels_; }

  // Position of `label` in class_labels(), or throws ValidationError.
  std::size_t class_index(double label) const;

  double max_squared_row_norm() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<SparseExample> examples_;
  std::size_t dim_ = 0;
  std::vector<double> class_labels_;
};

// Original label -> mapped label; used to send two classes onto {-1, +1}.
using LabelMap = std::map<double, double>;

// `<label> <idx>:<val> ...`; text after '#' is ignored. Throws ParseError for
// malformed tokens and ValidationError for repeated or decreasing indices.
// `line_number` only decorates error messages.
SparseExample parse_libsvm_line(std::string_view line, std::size_t line_number = 1);

struct LoadOptions {
  std::optional<LabelMap> binary_label_map;
  // Raise dim to at least this value (train/test alignment).
  std::size_t min_dim = 0;
};

Dataset parse_libsvm(std::string_view text, const LoadOptions& options = {});
Dataset load_libsvm(const std::filesystem::path& path, const LoadOptions& options = {});

// {smaller label -> -1, larger label -> +1}; throws ValidationError unless the
// dataset has exactly two classes.
LabelMap binary_label_map_for(const std::vector<double>& class_labels);

std::string to_libsvm_text(const Dataset& ds);
void write_libsvm(const Dataset& ds, const std::filesystem::path& path);

enum class ScaleMode { none, unit_row_norm };

Dataset scale_features(const Dataset& ds, ScaleMode mode);

ScaleMode parse_scale_mode(std::string_view name);

}  // namespace amsvrg
