#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oracles.hpp"

namespace amsvrg {

enum class VerifyScale { small, full };

VerifyScale parse_verify_scale(std::string_view name);
std::string_view to_string(VerifyScale scale);

struct VerifyOptions {
  VerifyScale scale = VerifyScale::small;
  std::uint64_t seed = 1;
  // Replaces the library's delta(n, b) inside the oracle right-hand sides.
  // Only used to confirm the checks notice a wrong formula.
  DeltaFn delta_fn;
};

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  VerifyScale scale = VerifyScale::small;
  std::uint64_t seed = 1;
  std::vector<VerifyCheck> checks;

  bool all_passed() const;
  // Fixed-width table, one row per check. Contains no timings, so equal
  // seeds give equal text.
  std::string table() const;
};

VerifyReport run_verify(const VerifyOptions& options);

}  // namespace amsvrg
