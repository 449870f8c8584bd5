#include "synthetic.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"

#include "error.hpp"

namespace amsvrg {

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n < 1 || spec.d < 1) throw InvalidArgument("synthetic data needs n, d >= 1");
  if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise)) {
    throw InvalidArgument("noise must be finite and >= 0");
  }
  const bool multi = spec.kind == LossKind::logistic_multinomial;
  if (multi && spec.classes < 2) throw InvalidArgument("multinomial data needs >= 2 classes");
  const std::size_t groups = multi ? spec.classes : 1;

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Point planted(groups * spec.d);
  const double w_scale = 1.0 / std::sqrt(static_cast<double>(spec.d));
  for (auto& w : planted) w = w_scale * gauss(rng);

  std::vector<SparseExample> examples;
  examples.reserve(spec.n);
  std::vector<double> margin(groups);
  for (std::size_t i = 0; i < spec.n; ++i) {
    SparseExample ex;
    ex.features.reserve(spec.d);
    for (std::size_t j = 0; j < spec.d; ++j) ex.features.push_back({j, gauss(rng)});
    for (std::size_t c = 0; c < groups; ++c) {
      double s = 0.0;
      for (const auto& f : ex.features) s += planted[c * spec.d + f.index] * f.value;
      margin[c] = s + spec.noise * gauss(rng);
    }
    switch (spec.kind) {
      case LossKind::least_squares: ex.label = margin[0]; break;
      case LossKind::logistic_binary: ex.label = margin[0] >= 0.0 ? 1.0 : -1.0; break;
      case LossKind::logistic_multinomial: {
        std::size_t best = 0;
        for (std::size_t c = 1; c < groups; ++c) {
          if (margin[c] > margin[best]) best = c;
        }
        ex.label = static_cast<double>(best);
        break;
      }
    }
    examples.push_back(std::move(ex));
  }

  SyntheticData out{spec, Dataset(std::move(examples), spec.d), std::move(planted), std::nullopt};
  if (spec.kind == LossKind::least_squares && spec.noise == 0.0) out.f_star_unregularized = 0.0;
  return out;
}

std::string synthetic_metadata_json(const SyntheticData& data) {
  nlohmann::json j;
  j["n"] = data.spec.n;
  j["d"] = data.spec.d;
  j["kind"] = std::string(to_string(data.spec.kind));
  j["noise"] = data.spec.noise;
  j["seed"] = data.spec.seed;
  if (data.spec.kind == LossKind::logistic_multinomial) j["classes"] = data.spec.classes;
  j["planted"] = data.planted.values();
  j["f_star_unregularized"] =
      data.f_star_unregularized ? nlohmann::json(*data.f_star_unregularized) : nlohmann::json();
  return j.dump(2) + "\n";
}

void write_synthetic(const SyntheticData& data, const std::filesystem::path& path,
                     const std::filesystem::path& meta_path) {
  write_libsvm(data.dataset, path);
  if (meta_path.empty()) return;
  std::ofstream out(meta_path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + meta_path.string() + "' for writing");
  out << synthetic_metadata_json(data);
  if (!out) throw IoError("write failed for '" + meta_path.string() + "'");
}

}  // namespace amsvrg
