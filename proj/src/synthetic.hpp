#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "dataset.hpp"
#include "geometry.hpp"
#include "model.hpp"

namespace amsvrg {

struct SyntheticSpec {
  std::size_t n = 200;
  std::size_t d = 10;
  LossKind kind = LossKind::least_squares;
  double noise = 0.0;
  std::uint64_t seed = 1;
  std::size_t classes = 3;  // multinomial only
};

// Dense N(0, 1) features and a planted model with N(0, 1/d) weights.
//   least squares: b = <a, w> + noise * N(0, 1)
//   logistic:      b = sign(<a, w> + noise * N(0, 1)), in {-1, +1}
//   multinomial:   b = argmax_c (<a, w_c> + noise * N(0, 1)), in {0..C-1}
struct SyntheticData {
  SyntheticSpec spec;
  Dataset dataset;
  Point planted;  // multinomial: class-major, like Objective parameters
  // Unregularized optimal value when it is known in closed form
  // (noise-free least squares interpolates: f* = 0).
  std::optional<double> f_star_unregularized;
};

SyntheticData generate_synthetic(const SyntheticSpec& spec);

std::string synthetic_metadata_json(const SyntheticData& data);

// Writes the LIBSVM file and, when meta_path is non-empty, the metadata JSON.
void write_synthetic(const SyntheticData& data, const std::filesystem::path& path,
                     const std::filesystem::path& meta_path = {});

}  // namespace amsvrg
