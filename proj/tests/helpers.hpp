#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "dataset.hpp"
#include "geometry.hpp"
#include "model.hpp"

namespace testing {

inline std::shared_ptr<const amsvrg::Dataset> dense_dataset(
    const std::vector<std::vector<double>>& rows, const std::vector<double>& labels) {
  std::vector<amsvrg::SparseExample> ex(rows.size());
  std::size_t dim = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    dim = std::max(dim, rows[i].size());
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (rows[i][j] != 0.0) ex[i].features.push_back({j, rows[i][j]});
    }
    ex[i].label = labels[i];
  }
  return std::make_shared<const amsvrg::Dataset>(std::move(ex), dim);
}

inline amsvrg::Point random_point(std::mt19937_64& rng, std::size_t d, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  amsvrg::Point p(d);
  for (auto& v : p) v = g(rng);
  return p;
}

// Gaussian rows; labels by kind (real, +-1, or class ids 0..2).
inline std::shared_ptr<const amsvrg::Dataset> random_dataset(std::mt19937_64& rng, std::size_t n,
                                                             std::size_t d, amsvrg::LossKind kind) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(d));
  std::vector<double> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& v : rows[i]) v = g(rng);
    switch (kind) {
      case amsvrg::LossKind::least_squares: labels[i] = g(rng); break;
      case amsvrg::LossKind::logistic_binary: labels[i] = i % 2 ? 1.0 : -1.0; break;
      case amsvrg::LossKind::logistic_multinomial: labels[i] = static_cast<double>(i % 3); break;
    }
  }
  return dense_dataset(rows, labels);
}

}  // namespace testing
