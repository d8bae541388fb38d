#include "eda/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eda {

ModelParams make_well_behaved(int n, double target_mu) {
  if (n < 3)
    throw std::invalid_argument("make_well_behaved: n must be >= 3, got " + std::to_string(n));
  if (!(target_mu > 0.0))
    throw std::invalid_argument("make_well_behaved: target_mu must be positive");

  const double half_range = 0.5 - 1.0 / n;  // = (n-2)/(2n)
  std::int64_t m = static_cast<std::int64_t>(std::floor(target_mu * half_range + 0.5));
  if (m < 1) m = 1;

  ModelParams params;
  params.n = n;
  params.m = m;
  params.mu = 2.0 * static_cast<double>(m) * n / (n - 2);
  params.mu_adjustment = std::fabs(params.mu - target_mu) / target_mu;
  return params;
}

double freq_value(const ModelParams& params, std::int64_t k) {
  if (k < 0 || k > params.upper_index())
    throw std::out_of_range("freq_value: index " + std::to_string(k) + " outside [0, " +
                            std::to_string(params.upper_index()) + "]");
  const double num = static_cast<double>(2 * params.m + k * (params.n - 2));
  return num / (2.0 * static_cast<double>(params.m) * params.n);
}

FrequencyVector::FrequencyVector(const ModelParams& params)
    : params_(params),
      k_(static_cast<std::size_t>(params.n), params.m),
      p_(static_cast<std::size_t>(params.n), freq_value(params, params.m)) {}

void FrequencyVector::set_index(int i, std::int64_t k) {
  p_[static_cast<std::size_t>(i)] = freq_value(params_, k);  // validates k
  k_[static_cast<std::size_t>(i)] = k;
}

}  // namespace eda
