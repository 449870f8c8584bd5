#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace amsvrg {

// Variance shrink factor of a size-b uniform subset mean:
// (n - b) / (b (n - 1)); zero when n == 1.
double delta(std::size_t n, std::size_t b);

// Relative slack used when deciding whether a batch size sits exactly on the
// 4 L delta alpha <= p boundary. Real boundaries differ by far more than this
// at any n the library can hold in memory.
inline constexpr double kBatchBoundarySlack = 1e-9;

// b_{k+1} = min(n, ceil(n (k+2) / (p (n-1) + k + 2))), the smallest batch
// satisfying 4 L delta(n, b) alpha_{k+1} <= p with alpha_{k+1} = (k+2)/(4L).
class BatchSchedule {
 public:
  BatchSchedule(std::size_t n, double p);

  std::size_t n() const noexcept { return n_; }
  double p() const noexcept { return p_; }

  // Batch size used at inner iteration k (that is, b_{k+1}).
  std::size_t batch_size(std::int64_t k) const;

  // p > 1/2 lies outside the range the accelerated analysis covers.
  bool outside_theory() const noexcept { return p_ > 0.5; }

 private:
  std::size_t n_;
  double p_;
};

// Uniform subsets of {0..n-1} without replacement. A single permutation is
// carried across draws and partially reshuffled each time, so every draw is
// uniform over all C(n, b) subsets.
class SubsetSampler {
 public:
  SubsetSampler(std::size_t n, std::uint64_t seed);

  std::size_t n() const noexcept { return pool_.size(); }

  // b distinct indices. b == n returns 0..n-1 in order without consuming
  // randomness.
  std::vector<std::size_t> sample(std::size_t b);

  // Uniform index in [0, n), with replacement.
  std::size_t sample_one();

 private:
  std::mt19937_64 rng_;
  std::vector<std::size_t> pool_;
};

}  // namespace amsvrg
