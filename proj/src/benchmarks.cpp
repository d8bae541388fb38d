#include "eda/benchmarks.hpp"

#include <algorithm>
#include <stdexcept>

namespace eda {

namespace {

bool all_ones(const BitString& x) {
  return std::all_of(x.begin(), x.end(), [](std::uint8_t b) { return b != 0; });
}

}  // namespace

FitnessFunction make_benchmark(const std::string& name) {
  if (name == "leadingones") {
    FitnessFunction f;
    f.name = name;
    f.evaluate = [](const BitString& x) { return leading_ones(x); };
    f.is_optimum = all_ones;
    f.weakly_prefers_ones = true;
    return f;
  }
  if (name == "onemax") {
    FitnessFunction f;
    f.name = name;
    f.evaluate = [](const BitString& x) { return one_max(x); };
    f.is_optimum = all_ones;
    f.weakly_prefers_ones = true;
    return f;
  }
  throw std::invalid_argument("unknown benchmark \"" + name +
                              "\" (available: leadingones, onemax)");
}

std::vector<std::string> benchmark_names() { return {"leadingones", "onemax"}; }

}  // namespace eda
