#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eda/benchmarks.hpp"
#include "eda/model.hpp"
#include "eda/random.hpp"

namespace eda {

// UMDA configuration: lambda samples per iteration, update from the mu_sel
// best. Borders are the usual [1/n, 1 - 1/n].
struct UmdaParams {
  int n = 0;
  int lambda = 0;
  int mu_sel = 0;
};

// Validates n >= 3 and 1 <= mu_sel <= lambda.
UmdaParams make_umda_params(int n, int lambda, int mu_sel);

// The UMDA's model. Frequencies are exact rationals num/den (den is 2
// initially and mu_sel after the first update); the border clamp to
// [1/n, 1 - 1/n] is applied when reading, so the stored rational stays
// exact. This is a different representation from the cGA's 1/mu grid.
class UmdaModel {
 public:
  explicit UmdaModel(int n);

  int n() const { return n_; }
  double freq(int i) const { return p_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& freqs() const { return p_; }
  std::int64_t numerator(int i) const { return num_[static_cast<std::size_t>(i)]; }
  std::int64_t denominator() const { return den_; }

  // Replaces every frequency with counts[i]/mu_sel.
  void set_from_counts(const std::vector<int>& counts, int mu_sel);

  // Effective (clamped) frequency equals the upper border 1 - 1/n.
  bool at_upper(int i) const {
    return num_[static_cast<std::size_t>(i)] * n_ >= den_ * (n_ - 1);
  }
  // Effective frequency strictly above 1 - 3/n.
  bool strictly_high(int i) const {
    if (n_ == 3) return true;  // 1 - 3/n = 0 and effective freqs are >= 1/n
    return num_[static_cast<std::size_t>(i)] * n_ > den_ * (n_ - 3);
  }
  // Effective frequency strictly below 1 - 3/n.
  bool below_high(int i) const {
    if (n_ == 3) return false;
    const std::int64_t num = num_[static_cast<std::size_t>(i)];
    if (num * n_ <= den_) return n_ > 4;  // clamped to the lower border 1/n
    if (num * n_ >= den_ * (n_ - 1)) return false;
    return num * n_ < den_ * (n_ - 3);
  }
  // Effective frequency strictly below 1/4.
  bool below_quarter(int i) const {
    return n_ > 4 && 4 * num_[static_cast<std::size_t>(i)] < den_;
  }

 private:
  int n_;
  std::int64_t den_;
  std::vector<std::int64_t> num_;
  std::vector<double> p_;  // effective frequencies, border-clamped
};

struct UmdaState {
  UmdaParams params;
  UmdaModel model;
  std::int64_t iteration = 0;
  std::int64_t evaluations = 0;

  explicit UmdaState(const UmdaParams& p) : params(p), model(p.n) {}
};

// Reusable sample buffer for the run loop.
struct UmdaScratch {
  std::vector<BitString> samples;
};

// Deterministic half of an iteration: ranks `samples` by fitness descending
// (ties broken by ascending sample index), sets each frequency to the
// one-count among the top mu_sel over mu_sel, and advances the counters.
// Returns the 0-based index of the first optimal sample, if any; optimality
// is checked on the raw samples before the update.
std::optional<int> umda_update_from_samples(UmdaState& state,
                                            const std::vector<BitString>& samples,
                                            const FitnessFunction& f);

// One full iteration: draw lambda samples (each consuming n uniforms in
// position order), then update.
std::optional<int> umda_step(UmdaState& state, const FitnessFunction& f, RandomSource& rng,
                             UmdaScratch& scratch);

inline std::optional<int> umda_step(UmdaState& state, const FitnessFunction& f,
                                    RandomSource& rng) {
  UmdaScratch scratch;
  return umda_step(state, f, rng, scratch);
}

}  // namespace eda
