#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "eda/model.hpp"

namespace eda {

// Length of the maximal all-ones prefix, in [0, n]; n iff x is all ones.
inline std::int64_t leading_ones(const BitString& x) {
  std::int64_t count = 0;
  for (std::uint8_t b : x) {
    if (!b) break;
    ++count;
  }
  return count;
}

// Number of ones in x.
inline std::int64_t one_max(const BitString& x) {
  std::int64_t count = 0;
  for (std::uint8_t b : x) count += b;
  return count;
}

// A pseudo-Boolean fitness function together with the metadata the drift
// checkers need. weakly_prefers_ones means flipping any single 0 to 1 never
// decreases the fitness.
struct FitnessFunction {
  std::string name;
  std::function<std::int64_t(const BitString&)> evaluate;
  std::function<bool(const BitString&)> is_optimum;
  bool weakly_prefers_ones = false;
};

// Lookup by name ("leadingones", "onemax"); throws std::invalid_argument for
// unknown names.
FitnessFunction make_benchmark(const std::string& name);

std::vector<std::string> benchmark_names();

}  // namespace eda
