#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"

namespace amsvrg {

namespace {

// log(1 + exp(-t)) without overflow.
double log1p_exp_neg(double t) {
  return t > 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
}

// 1 / (1 + exp(t))
double sigmoid_neg(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

double sparse_dot(const SparseExample& ex, const Point& x, std::size_t offset) {
  double acc = 0.0;
  for (const auto& f : ex.features) acc += f.value * x[offset + f.index];
  return acc;
}

}  // namespace

LossKind parse_loss_kind(std::string_view name) {
  if (name == "least_squares" || name == "ls" || name == "ridge") return LossKind::least_squares;
  if (name == "logistic" || name == "logistic_binary") return LossKind::logistic_binary;
  if (name == "multinomial" || name == "logistic_multinomial") {
    return LossKind::logistic_multinomial;
  }
  throw InvalidArgument("unknown objective '" + std::string(name) + "'");
}

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::least_squares: return "least_squares";
    case LossKind::logistic_binary: return "logistic";
    case LossKind::logistic_multinomial: return "multinomial";
  }
  return "?";
}

Objective::Objective(std::shared_ptr<const Dataset> data, LossKind kind, double lambda)
    : data_(std::move(data)), kind_(kind), lambda_(lambda) {
  if (!data_) throw InvalidArgument("objective needs a dataset");
  if (!std::isfinite(lambda_) || lambda_ < 0.0) {
    throw InvalidArgument("lambda must be finite and non-negative");
  }
  const Dataset& ds = *data_;
  switch (kind_) {
    case LossKind::least_squares:
      dim_params_ = ds.dim();
      break;
    case LossKind::logistic_binary:
      for (const auto& ex : ds.examples()) {
        if (ex.label != 1.0 && ex.label != -1.0) {
          throw ValidationError("binary logistic labels must be -1 or +1");
        }
      }
      dim_params_ = ds.dim();
      break;
    case LossKind::logistic_multinomial:
      num_classes_ = ds.class_labels().size();
      if (num_classes_ < 2) throw ValidationError("multinomial logistic needs >= 2 classes");
      dim_params_ = ds.dim() * num_classes_;
      class_of_.reserve(ds.size());
      for (const auto& ex : ds.examples()) class_of_.push_back(ds.class_index(ex.label));
      break;
  }
  if (dim_params_ == 0) throw ValidationError("objective has zero parameters");
}

void Objective::check_point(const Point& x) const {
  if (x.size() != dim_params_) {
    throw InvalidArgument("point has " + std::to_string(x.size()) +
                          " entries, objective expects " + std::to_string(dim_params_));
  }
}

void Objective::check_index(std::size_t i) const {
  if (i >= n()) {
    throw InvalidArgument("component index " + std::to_string(i) + " out of range [0, " +
                          std::to_string(n()) + ")");
  }
}

double Objective::loss_value(std::size_t i, const Point& x) const {
  const SparseExample& ex = (*data_)[i];
  switch (kind_) {
    case LossKind::least_squares: {
      const double r = sparse_dot(ex, x, 0) - ex.label;
      return 0.5 * r * r;
    }
    case LossKind::logistic_binary:
      return log1p_exp_neg(ex.label * sparse_dot(ex, x, 0));
    case LossKind::logistic_multinomial: {
      const std::size_t d = data_->dim();
      std::vector<double> margins(num_classes_);
      for (std::size_t c = 0; c < num_classes_; ++c) margins[c] = sparse_dot(ex, x, c * d);
      const double top = *std::max_element(margins.begin(), margins.end());
      double sum = 0.0;
      for (double m : margins) sum += std::exp(m - top);
      return top + std::log(sum) - margins[class_of_[i]];
    }
  }
  return 0.0;
}

void Objective::accumulate_loss_gradient(std::size_t i, const Point& x, double scale,
                                         Point& out) const {
  const SparseExample& ex = (*data_)[i];
  switch (kind_) {
    case LossKind::least_squares: {
      const double coef = scale * (sparse_dot(ex, x, 0) - ex.label);
      for (const auto& f : ex.features) out[f.index] += coef * f.value;
      break;
    }
    case LossKind::logistic_binary: {
      const double t = ex.label * sparse_dot(ex, x, 0);
      const double coef = -scale * ex.label * sigmoid_neg(t);
      for (const auto& f : ex.features) out[f.index] += coef * f.value;
      break;
    }
    case LossKind::logistic_multinomial: {
      const std::size_t d = data_->dim();
      std::vector<double> prob(num_classes_);
      for (std::size_t c = 0; c < num_classes_; ++c) prob[c] = sparse_dot(ex, x, c * d);
      const double top = *std::max_element(prob.begin(), prob.end());
      double sum = 0.0;
      for (double& p : prob) {
        p = std::exp(p - top);
        sum += p;
      }
      for (std::size_t c = 0; c < num_classes_; ++c) {
        const double coef = scale * (prob[c] / sum - (c == class_of_[i] ? 1.0 : 0.0));
        for (const auto& f : ex.features) out[c * d + f.index] += coef * f.value;
      }
      break;
    }
  }
}

double Objective::component_value(std::size_t i, const Point& x) const {
  check_index(i);
  check_point(x);
  return loss_value(i, x) + 0.5 * lambda_ * squared_norm(x);
}

Point Objective::component_gradient(std::size_t i, const Point& x) const {
  const std::size_t one[1] = {i};
  return batch_gradient(one, x);
}

Point Objective::batch_gradient(std::span<const std::size_t> indices, const Point& x,
                                EvalCounter* counter) const {
  if (indices.empty()) throw InvalidArgument("batch_gradient: empty index set");
  check_point(x);
  for (std::size_t i : indices) check_index(i);
  Point g(dim_params_);
  for (std::size_t i : indices) accumulate_loss_gradient(i, x, 1.0, g);
  const double inv = 1.0 / static_cast<double>(indices.size());
  for (std::size_t j = 0; j < dim_params_; ++j) g[j] = g[j] * inv + lambda_ * x[j];
  if (counter) {
    const auto b = static_cast<std::int64_t>(indices.size());
    counter->charge(b, b);
  }
  return g;
}

double Objective::full_value(const Point& x) const {
  check_point(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < n(); ++i) acc += loss_value(i, x);
  return acc / static_cast<double>(n()) + 0.5 * lambda_ * squared_norm(x);
}

Point Objective::full_gradient(const Point& x, EvalCounter* counter) const {
  std::vector<std::size_t> all(n());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return batch_gradient(all, x, counter);
}

double Objective::smoothness_bound() const {
  const double r2 = data_->max_squared_row_norm();
  switch (kind_) {
    case LossKind::least_squares: return r2 + lambda_;
    case LossKind::logistic_binary: return 0.25 * r2 + lambda_;
    case LossKind::logistic_multinomial: return 0.5 * r2 + lambda_;
  }
  return r2 + lambda_;
}

}  // namespace amsvrg
