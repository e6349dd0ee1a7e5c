#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "cdperc/errors.hpp"

namespace cdperc {

inline constexpr double kZ95 = 1.959963984540054;

// Wilson score interval; stays inside [0,1] and behaves near the endpoints,
// where most of our estimates live.
inline std::pair<double, double> wilson_interval(std::int64_t successes,
                                                 std::int64_t trials,
                                                 double z = kZ95) {
  if (trials < 1) throw DomainError("wilson_interval: trials must be >= 1");
  if (successes < 0 || successes > trials)
    throw DomainError("wilson_interval: successes outside [0, trials]");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  double lo = center - half;
  double hi = center + half;
  if (lo < 0.0) lo = 0.0;
  if (hi > 1.0) hi = 1.0;
  return {lo, hi};
}

struct EstimateResult {
  std::int64_t successes = 0;
  std::int64_t trials = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t master_seed = 0;
};

inline EstimateResult make_estimate(std::int64_t successes,
                                    std::int64_t trials,
                                    std::uint64_t master_seed) {
  auto [lo, hi] = wilson_interval(successes, trials);
  return EstimateResult{successes, trials,
                        static_cast<double>(successes) /
                            static_cast<double>(trials),
                        lo, hi, master_seed};
}

inline double binomial_sigma(double p, std::int64_t trials) {
  if (trials < 1) throw DomainError("binomial_sigma: trials must be >= 1");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

// P(Bin(n, p) <= x), summed directly; meant for small x.
inline double binomial_cdf(std::int64_t x, std::int64_t n, double p) {
  if (n < 0 || p < 0.0 || p > 1.0) throw DomainError("binomial_cdf: inputs");
  if (x < 0) return 0.0;
  if (x >= n) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  double total = 0.0;
  for (std::int64_t i = 0; i <= x; ++i) {
    const double lc = std::lgamma(static_cast<double>(n) + 1.0) -
                      std::lgamma(static_cast<double>(i) + 1.0) -
                      std::lgamma(static_cast<double>(n - i) + 1.0);
    total += std::exp(lc + static_cast<double>(i) * std::log(p) +
                      static_cast<double>(n - i) * std::log1p(-p));
  }
  return total < 1.0 ? total : 1.0;
}

}  // namespace cdperc
