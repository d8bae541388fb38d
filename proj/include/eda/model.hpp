#pragma once

#include <cstdint>
#include <vector>

#include "eda/random.hpp"

namespace eda {

using BitString = std::vector<std::uint8_t>;

// Geometry of the well-behaved frequency grid. Frequencies live on the
// lattice p = 1/n + k/mu with integer index k in [0, 2m], where
// m = mu*(1/2 - 1/n) is an integer, equivalently mu = 2*m*n/(n-2). Index 0
// is the lower border 1/n, index m is 1/2, index 2m is the upper border
// 1 - 1/n, and every non-clamped update moves an index by exactly +-1.
struct ModelParams {
  int n = 0;
  std::int64_t m = 0;
  double mu = 0.0;
  double mu_adjustment = 0.0;  // |mu - target_mu| / target_mu

  std::int64_t upper_index() const { return 2 * m; }
  std::int64_t grid_size() const { return 2 * m + 1; }
};

// Snaps target_mu to the nearest well-behaved value: m is target_mu*(1/2-1/n)
// rounded half up and clamped below at 1, mu = m/(1/2 - 1/n). Throws
// std::invalid_argument for n < 3 (the border interval degenerates) or
// target_mu <= 0.
ModelParams make_well_behaved(int n, double target_mu);

// Decodes a grid index to its frequency 1/n + k/mu, computed from the exact
// rational form (2m + k(n-2)) / (2mn). Throws std::out_of_range for k
// outside [0, 2m].
double freq_value(const ModelParams& params, std::int64_t k);

// The cGA's probabilistic model. Indices are the authoritative state; the
// decoded double frequencies are cached for sampling.
class FrequencyVector {
 public:
  // All positions start at index m, i.e. p_i = 1/2.
  explicit FrequencyVector(const ModelParams& params);

  int n() const { return params_.n; }
  const ModelParams& params() const { return params_; }

  std::int64_t index(int i) const { return k_[static_cast<std::size_t>(i)]; }
  double freq(int i) const { return p_[static_cast<std::size_t>(i)]; }
  const std::vector<std::int64_t>& indices() const { return k_; }
  const std::vector<double>& freqs() const { return p_; }

  // Adds a +-1 grid delta with clamping to [0, 2m]; returns the delta that
  // was actually applied.
  int apply_delta(int i, int delta) {
    const std::int64_t hi = params_.upper_index();
    std::int64_t k = k_[static_cast<std::size_t>(i)] + delta;
    if (k < 0) k = 0;
    if (k > hi) k = hi;
    const int applied = static_cast<int>(k - k_[static_cast<std::size_t>(i)]);
    if (applied != 0) {
      k_[static_cast<std::size_t>(i)] = k;
      p_[static_cast<std::size_t>(i)] = freq_value(params_, k);
    }
    return applied;
  }

  // Bounds-checked direct assignment, for tests and constructed states.
  void set_index(int i, std::int64_t k);

 private:
  ModelParams params_;
  std::vector<std::int64_t> k_;
  std::vector<double> p_;
};

// Samples one individual: bit i is 1 with probability freqs[i], drawn in
// position order 1..n with exactly one uniform draw per position.
inline void sample_bits(const std::vector<double>& freqs, RandomSource& rng, BitString& out) {
  out.resize(freqs.size());
  for (std::size_t i = 0; i < freqs.size(); ++i)
    out[i] = rng.next_double() < freqs[i] ? 1 : 0;
}

inline void sample_into(const FrequencyVector& p, RandomSource& rng, BitString& out) {
  sample_bits(p.freqs(), rng, out);
}

inline BitString sample(const FrequencyVector& p, RandomSource& rng) {
  BitString x;
  sample_into(p, rng, x);
  return x;
}

}  // namespace eda
