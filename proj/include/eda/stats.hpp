#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace eda {

// Neumaier-compensated accumulator.
struct KahanSum {
  long double sum = 0.0L;
  long double comp = 0.0L;

  void add(long double x) {
    const long double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  long double value() const { return sum + comp; }
};

// One-sided z for 99% confidence.
inline constexpr double kWilsonZ99 = 2.3263478740408408;

// Wilson score interval bounds for a binomial proportion.
double wilson_lower(std::int64_t successes, std::int64_t trials, double z = kWilsonZ99);
double wilson_upper(std::int64_t successes, std::int64_t trials, double z = kWilsonZ99);

// Quantile with linear interpolation between order statistics (q in [0, 1]).
double percentile(std::vector<double> values, double q);
inline double median(std::vector<double> values) { return percentile(std::move(values), 0.5); }

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares of y on x; requires at least two points.
LinearFit ols_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace eda
