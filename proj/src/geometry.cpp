#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace amsvrg {

namespace {

void require_same_dim(const Point& a, const Point& b, const char* op) {
  if (a.size() != b.size()) {
    throw InvalidArgument(std::string(op) + ": dimension mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
}

}  // namespace

void Point::fill(double value) { std::fill(coords_.begin(), coords_.end(), value); }

bool Point::all_finite() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](double v) { return std::isfinite(v); });
}

Point& Point::operator+=(const Point& other) {
  require_same_dim(*this, other, "operator+=");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& other) {
  require_same_dim(*this, other, "operator-=");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Point& Point::operator*=(double scale) {
  for (double& c : coords_) c *= scale;
  return *this;
}

Point operator+(Point lhs, const Point& rhs) { return lhs += rhs; }
Point operator-(Point lhs, const Point& rhs) { return lhs -= rhs; }
Point operator*(double scale, Point p) { return p *= scale; }

double dot(const Point& a, const Point& b) {
  require_same_dim(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double squared_norm(const Point& a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return acc;
}

double norm(const Point& a) { return std::sqrt(squared_norm(a)); }

double distance(const Point& a, const Point& b) {
  require_same_dim(a, b, "distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

void axpy(double scale, const Point& x, Point& y) {
  require_same_dim(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += scale * x[i];
}

double EuclideanBregman::value(const Point& x, const Point& y) {
  require_same_dim(x, y, "bregman_value");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = y[i] - x[i];
    acc += d * d;
  }
  return 0.5 * acc;
}

Point EuclideanBregman::gradient(const Point& x, const Point& y) { return y - x; }

Point EuclideanBregman::mirror_step(const Point& z0, const Point& v, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("mirror_step: alpha must be positive");
  require_same_dim(z0, v, "mirror_step");
  Point z = z0;
  axpy(-alpha, v, z);
  return z;
}

double bregman_value(const Point& x, const Point& y) {
  return EuclideanBregman::value(x, y);
}

Point sgd_step(const Point& x, const Point& v, double eta) {
  if (!(eta > 0.0)) throw InvalidArgument("sgd_step: eta must be positive");
  require_same_dim(x, v, "sgd_step");
  Point y = x;
  axpy(-eta, v, y);
  return y;
}

Point mirror_step(const Point& z, const Point& v, double alpha) {
  return EuclideanBregman::mirror_step(z, v, alpha);
}

Point convex_combine(const Point& y, const Point& z, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw InvalidArgument("convex_combine: tau outside [0, 1]");
  }
  require_same_dim(y, z, "convex_combine");
  Point x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = (1.0 - tau) * y[i] + tau * z[i];
  return x;
}

}  // namespace amsvrg
