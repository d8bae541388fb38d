#include "eda/umda.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace eda {

UmdaParams make_umda_params(int n, int lambda, int mu_sel) {
  if (n < 3) throw std::invalid_argument("make_umda_params: n must be >= 3");
  if (mu_sel < 1 || mu_sel > lambda)
    throw std::invalid_argument("make_umda_params: need 1 <= mu_sel <= lambda, got mu_sel=" +
                                std::to_string(mu_sel) + " lambda=" + std::to_string(lambda));
  return UmdaParams{n, lambda, mu_sel};
}

UmdaModel::UmdaModel(int n)
    : n_(n),
      den_(2),
      num_(static_cast<std::size_t>(n), 1),
      p_(static_cast<std::size_t>(n), 0.5) {}

void UmdaModel::set_from_counts(const std::vector<int>& counts, int mu_sel) {
  den_ = mu_sel;
  const double lo = 1.0 / n_;
  const double hi = static_cast<double>(n_ - 1) / n_;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    num_[i] = counts[i];
    if (num_[i] * n_ <= den_)
      p_[i] = lo;
    else if (num_[i] * n_ >= den_ * (n_ - 1))
      p_[i] = hi;
    else
      p_[i] = static_cast<double>(num_[i]) / static_cast<double>(den_);
  }
}

std::optional<int> umda_update_from_samples(UmdaState& state,
                                            const std::vector<BitString>& samples,
                                            const FitnessFunction& f) {
  const int n = state.params.n;
  const int lambda = state.params.lambda;
  const int mu_sel = state.params.mu_sel;

  std::optional<int> first_optimum;
  std::vector<std::int64_t> fitness(static_cast<std::size_t>(lambda));
  for (int i = 0; i < lambda; ++i) {
    fitness[static_cast<std::size_t>(i)] = f.evaluate(samples[static_cast<std::size_t>(i)]);
    if (!first_optimum && f.is_optimum(samples[static_cast<std::size_t>(i)])) first_optimum = i;
  }

  std::vector<int> order(static_cast<std::size_t>(lambda));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return fitness[static_cast<std::size_t>(a)] > fitness[static_cast<std::size_t>(b)];
  });

  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < mu_sel; ++r) {
    const BitString& x = samples[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];
    for (int i = 0; i < n; ++i) counts[static_cast<std::size_t>(i)] += x[static_cast<std::size_t>(i)];
  }
  state.model.set_from_counts(counts, mu_sel);

  state.iteration += 1;
  state.evaluations += lambda;
  return first_optimum;
}

std::optional<int> umda_step(UmdaState& state, const FitnessFunction& f, RandomSource& rng,
                             UmdaScratch& scratch) {
  const int lambda = state.params.lambda;
  scratch.samples.resize(static_cast<std::size_t>(lambda));
  for (int i = 0; i < lambda; ++i)
    sample_bits(state.model.freqs(), rng, scratch.samples[static_cast<std::size_t>(i)]);
  return umda_update_from_samples(state, scratch.samples, f);
}

}  // namespace eda
