#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace amsvrg {

// Dense iterate in parameter space. Value semantics; sizes must agree for
// every binary operation below.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
  Point(std::initializer_list<double> values) : coords_(values) {}
  explicit Point(std::vector<double> values) : coords_(std::move(values)) {}

  std::size_t size() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }

  double& operator[](std::size_t i) { return coords_[i]; }
  double operator[](std::size_t i) const { return coords_[i]; }

  double* data() noexcept { return coords_.data(); }
  const double* data() const noexcept { return coords_.data(); }

  std::span<double> span() noexcept { return coords_; }
  std::span<const double> span() const noexcept { return coords_; }

  const std::vector<double>& values() const noexcept { return coords_; }

  auto begin() noexcept { return coords_.begin(); }
  auto end() noexcept { return coords_.end(); }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  void fill(double value);
  bool all_finite() const noexcept;

  Point& operator+=(const Point& other);
  Point& operator-=(const Point& other);
  Point& operator*=(double scale);

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

Point operator+(Point lhs, const Point& rhs);
Point operator-(Point lhs, const Point& rhs);
Point operator*(double scale, Point p);

double dot(const Point& a, const Point& b);
double squared_norm(const Point& a);
double norm(const Point& a);
double distance(const Point& a, const Point& b);
// y += scale * x
void axpy(double scale, const Point& x, Point& y);

// Bregman divergence generated by d(x) = 1/2 ||x||^2. Other generating
// functions would supply the same three members.
struct EuclideanBregman {
  // V_x(y) = d(y) - d(x) - <grad d(x), y - x>
  static double value(const Point& x, const Point& y);
  // Gradient of V_x(.) evaluated at y.
  static Point gradient(const Point& x, const Point& y);
  // argmin_z { alpha <v, z - z0> + V_{z0}(z) }
  static Point mirror_step(const Point& z0, const Point& v, double alpha);
};

double bregman_value(const Point& x, const Point& y);

// argmin_y { eta <v, y - x> + 1/2 ||y - x||^2 } = x - eta v
Point sgd_step(const Point& x, const Point& v, double eta);

Point mirror_step(const Point& z, const Point& v, double alpha);

// (1 - tau) y + tau z, tau in [0, 1].
Point convex_combine(const Point& y, const Point& z, double tau);

}  // namespace amsvrg
