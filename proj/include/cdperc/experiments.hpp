#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

#include "cdperc/core.hpp"
#include "cdperc/errors.hpp"
#include "cdperc/patterns.hpp"
#include "cdperc/reach.hpp"
#include "cdperc/rng.hpp"
#include "cdperc/stats.hpp"

namespace cdperc {

struct TrialConfig {
  int m = 2;
  index_t n = 1;
  index_t N = -1;  // tail horizon; -1 means the 4n default
  index_t k = -1;  // explicit repetition count, or derived from s
  double s = -1.0;
  std::int64_t trials = 1000;
  std::uint64_t master_seed = 0;
  int threads = 1;
};

inline index_t resolved_k(const TrialConfig& cfg) {
  if (cfg.k >= 0) return cfg.k;
  if (cfg.s > 0.0) return choose_k(cfg.s, cfg.n, cfg.m);
  throw DomainError("TrialConfig: need k >= 0 or s > 0");
}

// The proxy horizon: "no percolation to infinity" is approximated by "no
// percolation to N", N defaulting to 4n.
inline index_t resolved_N(const TrialConfig& cfg) {
  const index_t N = cfg.N > 0 ? cfg.N : std::max<index_t>(4 * cfg.n, cfg.n + 1);
  if (N <= cfg.n) throw DomainError("TrialConfig: N must exceed n");
  return N;
}

namespace detail {

// Runs trials 0..trials-1 across worker threads; each trial is a pure
// function of (master_seed, t) and reports by bumping counters. Counter
// merge is plain addition, so the result is identical at any parallelism.
template <class Fn>
std::vector<std::int64_t> run_counting_trials(std::int64_t trials, int threads,
                                              std::size_t n_counters,
                                              Fn&& fn) {
  if (trials < 1) throw DomainError("run_counting_trials: trials >= 1");
  if (threads < 1) threads = 1;
  if (static_cast<std::int64_t>(threads) > trials)
    threads = static_cast<int>(trials);

  if (threads == 1) {
    std::vector<std::int64_t> counters(n_counters, 0);
    for (std::int64_t t = 0; t < trials; ++t) fn(t, counters);
    return counters;
  }

  std::vector<std::vector<std::int64_t>> partial(
      static_cast<std::size_t>(threads),
      std::vector<std::int64_t>(n_counters, 0));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const std::int64_t chunk = trials / threads;
  const std::int64_t rem = trials % threads;
  std::int64_t lo = 0;
  for (int w = 0; w < threads; ++w) {
    const std::int64_t hi = lo + chunk + (w < rem ? 1 : 0);
    pool.emplace_back([&, w, lo, hi] {
      try {
        auto& mine = partial[static_cast<std::size_t>(w)];
        for (std::int64_t t = lo; t < hi; ++t) fn(t, mine);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
    lo = hi;
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<std::int64_t> total(n_counters, 0);
  for (const auto& part : partial)
    for (std::size_t c = 0; c < n_counters; ++c) total[c] += part[c];
  return total;
}

}  // namespace detail

// I.i.d. uniform colors; identical (m, length, seed) gives identical output.
inline ColorSequence sample_sequence(int m, index_t length,
                                     std::uint64_t seed) {
  if (m < 1) throw DomainError("sample_sequence: m must be >= 1");
  if (length < 0) throw DomainError("sample_sequence: negative length");
  RandomEngine eng = make_engine(seed);
  std::vector<color_t> v;
  v.reserve(static_cast<std::size_t>(length));
  for (index_t i = 0; i < length; ++i)
    v.push_back(static_cast<color_t>(
        uniform_below(eng, static_cast<std::uint64_t>(m))));
  return ColorSequence(m, std::move(v));
}

// Overwrite rows n-1 .. n+km-2 of Y with k copies of the reversed basic
// pattern; everything else is untouched.
inline ColorSequence plant_E(ColorSequence Y, index_t n, index_t k) {
  if (n < 1) throw DomainError("plant_E: n must be >= 1");
  if (k < 0) throw DomainError("plant_E: k must be >= 0");
  if (k == 0) return Y;
  const int m = Y.m();
  if (n + k * m - 2 >= Y.size())
    throw SequenceExhausted("plant_E: Y prefix too short");
  for (index_t i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j) Y.set(n + i * m + j - 1, m - 1 - j);
  return Y;
}

// Write a copy of the basic pattern at position 0 and n more copies behind
// uniformly drawn filler gaps g in [0, k-1]. The result keeps X's values
// outside the planted copies and is extended with fresh colors up to the
// maximal packing length, so its length does not depend on the drawn gaps.
// Accidental occurrences inside fillers only shorten the realized gaps, so
// the column event holds on the result unconditionally.
inline ColorSequence plant_F(ColorSequence X, index_t n, index_t k,
                             std::uint64_t seed) {
  if (n < 1) throw DomainError("plant_F: n must be >= 1");
  if (k < 1) throw DomainError("plant_F: k must be >= 1");
  const int m = X.m();
  const index_t max_len = (n + 1) * m + n * (k - 1);
  RandomEngine eng = make_engine(seed);
  std::vector<index_t> gaps;
  gaps.reserve(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i)
    gaps.push_back(static_cast<index_t>(
        uniform_below(eng, static_cast<std::uint64_t>(k))));
  while (X.size() < max_len)
    X.append(static_cast<color_t>(
        uniform_below(eng, static_cast<std::uint64_t>(m))));
  index_t pos = 0;
  for (index_t copy = 0; copy <= n; ++copy) {
    for (int j = 0; j < m; ++j) X.set(pos + j, j);
    if (copy < n) pos += m + gaps[static_cast<std::size_t>(copy)];
  }
  return X;
}

// Scan length that (a) decides the column event outright and (b) keeps the
// chance of an insufficient-occurrence trial below target_rate. Occurrences
// at positions 0, m, 2m, ... are independent coin flips with p1 each, so
// B blocks give at least Bin(B, p1) occurrences.
inline index_t f_scan_length(int m, index_t n, index_t k,
                             double target_rate = 1e-3) {
  const double p1 = base_occurrence_prob(m);
  index_t blocks = n + 1;
  while (binomial_cdf(n, blocks, p1) > target_rate) blocks *= 2;
  // tighten back down
  index_t lo = blocks / 2, hi = blocks;
  while (lo + 1 < hi) {
    const index_t mid = lo + (hi - lo) / 2;
    if (binomial_cdf(n, mid, p1) <= target_rate)
      hi = mid;
    else
      lo = mid;
  }
  const index_t decisive = decisive_scan_length(n, std::max<index_t>(k, 1), m);
  return std::max(decisive, hi * m);
}

struct EventProbEstimates {
  EstimateResult e;
  EstimateResult f;
  std::int64_t f_insufficient = 0;  // counted separately, never a success
  index_t x_scan_length = 0;
  index_t y_length = 0;
};

// Empirical frequencies of the two events over fresh samples. The scan
// length makes an insufficient prefix imply the event fails, so scoring
// insufficient trials as failures keeps the estimator exact; the count is
// still reported.
inline EventProbEstimates estimate_event_probs(const TrialConfig& cfg) {
  if (cfg.n < 1) throw DomainError("estimate_event_probs: n must be >= 1");
  const index_t k = resolved_k(cfg);
  const int m = cfg.m;
  const index_t y_len = cfg.n + std::max<index_t>(k, 1) * m;
  const index_t scan = f_scan_length(m, cfg.n, k);
  const auto counts = detail::run_counting_trials(
      cfg.trials, cfg.threads, 3,
      [&](std::int64_t t, std::vector<std::int64_t>& c) {
        const std::uint64_t ts = derive_seed(cfg.master_seed,
                                             static_cast<std::uint64_t>(t));
        const ColorSequence X = sample_sequence(m, scan, derive_seed(ts, 0));
        const ColorSequence Y = sample_sequence(m, y_len, derive_seed(ts, 1));
        if (holds_E(Y, cfg.n, k)) ++c[0];
        switch (classify_F(X, cfg.n, k)) {
          case FStatus::Holds:
            ++c[1];
            break;
          case FStatus::Insufficient:
            ++c[2];
            break;
          default:
            break;
        }
      });
  EventProbEstimates out;
  out.e = make_estimate(counts[0], cfg.trials, cfg.master_seed);
  out.f = make_estimate(counts[1], cfg.trials, cfg.master_seed);
  out.f_insufficient = counts[2];
  out.x_scan_length = scan;
  out.y_length = y_len;
  return out;
}

// Frequency of percolation to distance n.
inline EstimateResult estimate_reach(const TrialConfig& cfg) {
  if (cfg.n < 0) throw DomainError("estimate_reach: n must be >= 0");
  const index_t len = cfg.n + 1;
  const auto counts = detail::run_counting_trials(
      cfg.trials, cfg.threads, 1,
      [&](std::int64_t t, std::vector<std::int64_t>& c) {
        const std::uint64_t ts = derive_seed(cfg.master_seed,
                                             static_cast<std::uint64_t>(t));
        const ColorSequence X =
            sample_sequence(cfg.m, len, derive_seed(ts, 0));
        const ColorSequence Y =
            sample_sequence(cfg.m, len, derive_seed(ts, 1));
        if (percolates_to(X, Y, cfg.n)) ++c[0];
      });
  return make_estimate(counts[0], cfg.trials, cfg.master_seed);
}

struct ReachTail {
  EstimateResult reach;  // percolates to n
  EstimateResult tail;   // percolates to n but not to N
  index_t horizon_N = 0;
};

// One frontier sweep per trial decides both events: with d the maximal
// reached distance inside the (N+1)-window, reach is d >= n and tail is
// n <= d < N. Tail successes are a subset of reach successes by
// construction, on every shared-seed batch.
inline ReachTail estimate_reach_and_tail(const TrialConfig& cfg) {
  if (cfg.n < 0) throw DomainError("estimate_reach_and_tail: n >= 0");
  const index_t N = resolved_N(cfg);
  const index_t len = N + 1;
  const auto counts = detail::run_counting_trials(
      cfg.trials, cfg.threads, 2,
      [&](std::int64_t t, std::vector<std::int64_t>& c) {
        const std::uint64_t ts = derive_seed(cfg.master_seed,
                                             static_cast<std::uint64_t>(t));
        const ColorSequence X =
            sample_sequence(cfg.m, len, derive_seed(ts, 0));
        const ColorSequence Y =
            sample_sequence(cfg.m, len, derive_seed(ts, 1));
        const index_t d = max_reach_distance(X, Y, N);
        if (d >= cfg.n) {
          ++c[0];
          if (d < N) ++c[1];
        }
      });
  ReachTail out;
  out.reach = make_estimate(counts[0], cfg.trials, cfg.master_seed);
  out.tail = make_estimate(counts[1], cfg.trials, cfg.master_seed);
  out.horizon_N = N;
  return out;
}

inline EstimateResult estimate_tail(const TrialConfig& cfg) {
  return estimate_reach_and_tail(cfg).tail;
}

// Joint and marginal frequencies of the two pattern events and the
// rectangle-escape event, plus an independence diagnostic: cov is the
// empirical covariance of 1[E] and 1[F and G], and sigma its null standard
// error, so |cov| > 4 sigma flags measurable dependence.
struct EventChainReport {
  std::int64_t trials = 0;
  std::int64_t excluded = 0;  // trials lacking n occurrences for the rectangle
  std::int64_t counted = 0;
  std::int64_t count_e = 0;
  std::int64_t count_f = 0;
  std::int64_t count_f_insufficient = 0;
  std::int64_t count_g = 0;
  std::int64_t count_fg = 0;
  std::int64_t count_efg = 0;
  double p_e = 0.0;
  double p_fg = 0.0;
  double p_efg = 0.0;
  double cov = 0.0;
  double sigma = 0.0;
  bool dependence_flagged = false;
  std::uint64_t master_seed = 0;
};

inline EventChainReport event_chain_probe(const TrialConfig& cfg) {
  if (cfg.n < 1) throw DomainError("event_chain_probe: n must be >= 1");
  const index_t k = resolved_k(cfg);
  const int m = cfg.m;
  const index_t y_len =
      std::max<index_t>(cfg.n + std::max<index_t>(k, 1) * m, cfg.n + 2);
  const index_t scan = f_scan_length(m, cfg.n, k);
  enum { kExcluded, kE, kF, kFIns, kG, kFG, kEFG, kCounters };
  const auto counts = detail::run_counting_trials(
      cfg.trials, cfg.threads, kCounters,
      [&](std::int64_t t, std::vector<std::int64_t>& c) {
        const std::uint64_t ts = derive_seed(cfg.master_seed,
                                             static_cast<std::uint64_t>(t));
        const ColorSequence X = sample_sequence(m, scan, derive_seed(ts, 0));
        const ColorSequence Y = sample_sequence(m, y_len, derive_seed(ts, 1));
        const OccurrenceTable table = find_occurrences(X, cfg.n);
        if (static_cast<index_t>(table.taus.size()) < cfg.n ||
            table.taus.back() + 2 > X.size()) {
          ++c[kExcluded];
          return;
        }
        const bool e = holds_E(Y, cfg.n, k);
        const FStatus fs = classify_F(X, cfg.n, k);
        const bool f = fs == FStatus::Holds;
        if (fs == FStatus::Insufficient) ++c[kFIns];
        const bool g =
            escapes_rectangle(X, Y, Rectangle{table.taus.back(), cfg.n - 1});
        if (e) ++c[kE];
        if (f) ++c[kF];
        if (g) ++c[kG];
        if (f && g) ++c[kFG];
        if (e && f && g) ++c[kEFG];
      });
  EventChainReport rep;
  rep.trials = cfg.trials;
  rep.excluded = counts[kExcluded];
  rep.counted = cfg.trials - rep.excluded;
  rep.count_e = counts[kE];
  rep.count_f = counts[kF];
  rep.count_f_insufficient = counts[kFIns];
  rep.count_g = counts[kG];
  rep.count_fg = counts[kFG];
  rep.count_efg = counts[kEFG];
  rep.master_seed = cfg.master_seed;
  if (rep.counted > 0) {
    const double T = static_cast<double>(rep.counted);
    rep.p_e = static_cast<double>(rep.count_e) / T;
    rep.p_fg = static_cast<double>(rep.count_fg) / T;
    rep.p_efg = static_cast<double>(rep.count_efg) / T;
    rep.cov = rep.p_efg - rep.p_e * rep.p_fg;
    rep.sigma = std::sqrt(rep.p_e * (1.0 - rep.p_e) * rep.p_fg *
                          (1.0 - rep.p_fg) / T);
    rep.dependence_flagged =
        rep.sigma > 0.0 && std::abs(rep.cov) > 4.0 * rep.sigma;
  }
  return rep;
}

inline constexpr double kPowerLawResidualThreshold = 0.1;

struct TailFit {
  std::vector<std::pair<double, double>> points;  // (n, p_hat) as given
  double alpha_hat = 0.0;
  double residual_rms = 0.0;  // in log space
  bool power_law_like = false;
};

// Least squares of ln p against ln n; slope -alpha_hat. Points with p <= 0
// or n <= 0 carry no log-space information and are dropped.
inline TailFit fit_power_law(
    const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> logs;
  for (const auto& [n, p] : points)
    if (n > 0.0 && p > 0.0) logs.emplace_back(std::log(n), std::log(p));
  if (logs.size() < 2)
    throw DegenerateFit("fit_power_law: need two points with p > 0");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(logs.size());
  my /= static_cast<double>(logs.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw DegenerateFit("fit_power_law: all n equal");
  const double slope = sxy / sxx;
  double ss = 0.0;
  for (const auto& [x, y] : logs) {
    const double r = y - (my + slope * (x - mx));
    ss += r * r;
  }
  TailFit fit;
  fit.points = points;
  fit.alpha_hat = 0.0 - slope;
  fit.residual_rms = std::sqrt(ss / static_cast<double>(logs.size()));
  fit.power_law_like = fit.residual_rms <= kPowerLawResidualThreshold;
  return fit;
}

}  // namespace cdperc
