#include "sampling.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "error.hpp"

namespace amsvrg {

double delta(std::size_t n, std::size_t b) {
  if (n == 0 || b < 1 || b > n) {
    throw InvalidArgument("delta: batch size " + std::to_string(b) + " outside [1, " +
                          std::to_string(n) + "]");
  }
  if (n == 1) return 0.0;
  const auto nd = static_cast<double>(n);
  const auto bd = static_cast<double>(b);
  return (nd - bd) / (bd * (nd - 1.0));
}

BatchSchedule::BatchSchedule(std::size_t n, double p) : n_(n), p_(p) {
  if (n_ == 0) throw InvalidArgument("batch schedule needs n >= 1");
  if (!(p_ > 0.0) || !std::isfinite(p_)) throw InvalidArgument("batch schedule needs p > 0");
}

std::size_t BatchSchedule::batch_size(std::int64_t k) const {
  if (k < 0) throw InvalidArgument("batch_size: k must be non-negative");
  const double nd = static_cast<double>(n_);
  const double k2 = static_cast<double>(k) + 2.0;
  const double ratio = nd * k2 / (p_ * (nd - 1.0) + k2);
  if (ratio >= nd) return n_;
  // Snap values sitting on an integer so that exact boundary cases are not
  // pushed up by rounding in the quotient.
  const double b = std::ceil(ratio * (1.0 - kBatchBoundarySlack));
  if (b < 1.0) return 1;
  return std::min(n_, static_cast<std::size_t>(b));
}

SubsetSampler::SubsetSampler(std::size_t n, std::uint64_t seed) : rng_(seed), pool_(n) {
  if (n == 0) throw InvalidArgument("sampler needs n >= 1");
  std::iota(pool_.begin(), pool_.end(), std::size_t{0});
}

std::vector<std::size_t> SubsetSampler::sample(std::size_t b) {
  const std::size_t n = pool_.size();
  if (b < 1 || b > n) {
    throw InvalidArgument("sample_subset: size " + std::to_string(b) + " outside [1, " +
                          std::to_string(n) + "]");
  }
  if (b == n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }
  for (std::size_t i = 0; i < b; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool_[i], pool_[pick(rng_)]);
  }
  return {pool_.begin(), pool_.begin() + static_cast<std::ptrdiff_t>(b)};
}

std::size_t SubsetSampler::sample_one() {
  std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
  return pick(rng_);
}

}  // namespace amsvrg
