#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>

#include "dataset.hpp"
#include "geometry.hpp"
#include "trace.hpp"

namespace amsvrg {

enum class LossKind { least_squares, logistic_binary, logistic_multinomial };

LossKind parse_loss_kind(std::string_view name);
std::string_view to_string(LossKind kind);

// f(x) = (1/n) sum_i f_i(x), where each f_i carries its own (lambda/2)||x||^2
// term. Multinomial parameters are a flattened d x C matrix, class c occupying
// x[c*d .. c*d + d).
//
// All members are const and thread-safe; the optional EvalCounter is the only
// mutable state touched and belongs to the caller.
class Objective {
 public:
  Objective(std::shared_ptr<const Dataset> data, LossKind kind, double lambda);

  LossKind kind() const noexcept { return kind_; }
  double lambda() const noexcept { return lambda_; }
  std::size_t n() const noexcept { return data_->size(); }
  std::size_t dim_params() const noexcept { return dim_params_; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  const Dataset& data() const noexcept { return *data_; }
  const std::shared_ptr<const Dataset>& data_ptr() const noexcept { return data_; }

  double component_value(std::size_t i, const Point& x) const;
  Point component_gradient(std::size_t i, const Point& x) const;

  // Mean of component gradients over `indices`; charges |indices| to both
  // counter axes when a counter is given.
  Point batch_gradient(std::span<const std::size_t> indices, const Point& x,
                       EvalCounter* counter = nullptr) const;

  double full_value(const Point& x) const;
  // Charges n to both counter axes when a counter is given.
  Point full_gradient(const Point& x, EvalCounter* counter = nullptr) const;

  // Closed-form component smoothness constant L (an upper bound).
  double smoothness_bound() const;
  // mu; the L2 coefficient, zero for the unregularized problem.
  double strong_convexity_bound() const noexcept { return lambda_; }

 private:
  void check_point(const Point& x) const;
  void check_index(std::size_t i) const;
  double loss_value(std::size_t i, const Point& x) const;
  // out += scale * grad(loss_i)(x); the regularizer is added by callers.
  void accumulate_loss_gradient(std::size_t i, const Point& x, double scale, Point& out) const;

  std::shared_ptr<const Dataset> data_;
  LossKind kind_;
  double lambda_;
  std::size_t dim_params_ = 0;
  std::size_t num_classes_ = 1;
  std::vector<std::size_t> class_of_;  // multinomial only
};

}  // namespace amsvrg
