#include "eda/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "eda/stats.hpp"

namespace eda {

namespace {

constexpr int kMaxOracleN = 10;

std::uint32_t pow3(int e) {
  std::uint32_t v = 1;
  for (int i = 0; i < e; ++i) v *= 3;
  return v;
}

}  // namespace

std::uint32_t StepDistribution::encode_delta(std::span<const int> delta) {
  std::uint32_t code = 0;
  std::uint32_t base = 1;
  for (int d : delta) {
    if (d < -1 || d > 1) throw std::invalid_argument("encode_delta: entry outside {-1,0,+1}");
    code += static_cast<std::uint32_t>(d + 1) * base;
    base *= 3;
  }
  return code;
}

std::vector<int> StepDistribution::decode_delta(std::uint32_t code, int n) {
  std::vector<int> delta(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    delta[static_cast<std::size_t>(i)] = static_cast<int>(code % 3) - 1;
    code /= 3;
  }
  return delta;
}

long double StepDistribution::probability(std::uint32_t code) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), code,
                             [](const auto& e, std::uint32_t c) { return e.first < c; });
  if (it == entries.end() || it->first != code) return 0.0L;
  return it->second;
}

StepDistribution exact_step_distribution(const ModelParams& params, const FrequencyVector& p,
                                         const FitnessFunction& f) {
  const int n = params.n;
  if (n > kMaxOracleN)
    throw std::invalid_argument("exact_step_distribution: n must be <= " +
                                std::to_string(kMaxOracleN) + " (4^n pairs are enumerated), got " +
                                std::to_string(n));

  const std::uint32_t masks = 1u << n;
  const std::int64_t hi = params.upper_index();

  // Exact per-bit probabilities as long double rationals on the grid.
  std::vector<long double> p1(static_cast<std::size_t>(n)), p0(static_cast<std::size_t>(n));
  const long double denom = 2.0L * static_cast<long double>(params.m) * n;
  for (int i = 0; i < n; ++i) {
    const std::int64_t k = p.index(i);
    p1[static_cast<std::size_t>(i)] =
        static_cast<long double>(2 * params.m + k * (n - 2)) / denom;
    p0[static_cast<std::size_t>(i)] =
        static_cast<long double>(2 * params.m * (n - 1) - k * (n - 2)) / denom;
  }

  // Sampling weight and fitness per bit mask (bit i of the mask = position i).
  std::vector<long double> weight(masks);
  std::vector<std::int64_t> fitness(masks);
  BitString x(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    long double w = 1.0L;
    for (int i = 0; i < n; ++i) {
      const bool bit = (mask >> i) & 1u;
      x[static_cast<std::size_t>(i)] = bit ? 1 : 0;
      w *= bit ? p1[static_cast<std::size_t>(i)] : p0[static_cast<std::size_t>(i)];
    }
    weight[mask] = w;
    fitness[mask] = f.evaluate(x);
  }

  const std::uint32_t codes = pow3(n);
  std::vector<KahanSum> buckets(codes);

  for (std::uint32_t a = 0; a < masks; ++a) {
    const long double wa = weight[a];
    if (wa == 0.0L) continue;
    for (std::uint32_t b = 0; b < masks; ++b) {
      // Rank: swap only on strict inequality, exactly like rank_pair.
      const std::uint32_t win = fitness[a] < fitness[b] ? b : a;
      const std::uint32_t lose = win == a ? b : a;
      std::uint32_t code = 0;
      std::uint32_t base = 1;
      for (int i = 0; i < n; ++i) {
        const int d = static_cast<int>((win >> i) & 1u) - static_cast<int>((lose >> i) & 1u);
        int applied = d;
        const std::int64_t k = p.index(i);
        if ((d > 0 && k >= hi) || (d < 0 && k <= 0)) applied = 0;
        code += static_cast<std::uint32_t>(applied + 1) * base;
        base *= 3;
      }
      buckets[code].add(wa * weight[b]);
    }
  }

  StepDistribution dist;
  dist.n = n;
  dist.mu = params.mu;
  dist.freqs = p.freqs();
  KahanSum total;
  for (std::uint32_t code = 0; code < codes; ++code) {
    const long double prob = buckets[code].value();
    if (prob != 0.0L) {
      dist.entries.emplace_back(code, prob);
      total.add(prob);
    }
  }
  dist.total = total.value();
  return dist;
}

double exact_expected_delta(const StepDistribution& dist, int position) {
  if (position < 1 || position > dist.n)
    throw std::invalid_argument("exact_expected_delta: position outside [1, n]");
  const std::uint32_t div = pow3(position - 1);
  KahanSum sum;
  for (const auto& [code, prob] : dist.entries) {
    const int d = static_cast<int>((code / div) % 3) - 1;
    if (d != 0) sum.add(prob * d);
  }
  return static_cast<double>(sum.value() / static_cast<long double>(dist.mu));
}

double lemma3_formula(std::span<const double> freqs, int prefix_len, double mu) {
  if (prefix_len < 0 || prefix_len >= static_cast<int>(freqs.size()))
    throw std::invalid_argument("lemma3_formula: prefix_len outside [0, n-1]");
  long double prod = 1.0L;
  for (int j = 0; j < prefix_len; ++j)
    prod *= static_cast<long double>(freqs[static_cast<std::size_t>(j)]) *
            freqs[static_cast<std::size_t>(j)];
  const long double pi = freqs[static_cast<std::size_t>(prefix_len)];
  return static_cast<double>(2.0L / mu * prod * pi * (1.0L - pi));
}

double lemma3_formula(const FrequencyVector& p, int prefix_len) {
  return lemma3_formula(p.freqs(), prefix_len, p.params().mu);
}

double lemma2_conditional_drift(std::span<const double> freqs, int position, double mu) {
  if (position < 1 || position > static_cast<int>(freqs.size()))
    throw std::invalid_argument("lemma2_conditional_drift: position outside [1, n]");
  long double prod = 1.0L;
  for (int j = 0; j + 1 < position; ++j)
    prod *= static_cast<long double>(freqs[static_cast<std::size_t>(j)]) *
            freqs[static_cast<std::size_t>(j)];
  return static_cast<double>(prod / mu);
}

double lemma2_conditional_drift(const FrequencyVector& p, int position) {
  return lemma2_conditional_drift(p.freqs(), position, p.params().mu);
}

double tv_distance(const StepDistribution& dist,
                   const std::vector<std::pair<std::uint32_t, std::int64_t>>& counts,
                   std::int64_t total) {
  if (total <= 0) throw std::invalid_argument("tv_distance: total must be positive");
  std::unordered_map<std::uint32_t, long double> exact;
  exact.reserve(dist.entries.size());
  for (const auto& [code, prob] : dist.entries) exact.emplace(code, prob);

  long double tv = 0.0L;
  for (const auto& [code, count] : counts) {
    const long double emp = static_cast<long double>(count) / total;
    auto it = exact.find(code);
    if (it == exact.end()) {
      tv += emp;
    } else {
      tv += std::fabs(emp - it->second);
      exact.erase(it);
    }
  }
  for (const auto& [code, prob] : exact) tv += prob;
  return static_cast<double>(tv / 2.0L);
}

}  // namespace eda
