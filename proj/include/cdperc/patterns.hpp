#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "cdperc/core.hpp"
#include "cdperc/errors.hpp"

namespace cdperc {

// The basic pattern (0,1,...,m-1): the one column word whose occurrences
// force a vertical step through every row color.
inline ColorSequence basic_sequence(int m) {
  if (m < 1) throw DomainError("basic_sequence: m must be >= 1");
  std::vector<color_t> v(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) v[static_cast<std::size_t>(j)] = j;
  return ColorSequence(m, std::move(v));
}

inline ColorSequence reversed_basic(int m) {
  if (m < 1) throw DomainError("reversed_basic: m must be >= 1");
  std::vector<color_t> v(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) v[static_cast<std::size_t>(j)] = m - 1 - j;
  return ColorSequence(m, std::move(v));
}

// Start indices of copies of the basic pattern inside X, ascending. Copies
// cannot overlap: position j of a copy carries the forced color j, so two
// starts closer than m contradict each other. The scanner still skips m
// after each hit, which makes the non-overlap invariant structural.
struct OccurrenceTable {
  int m = 1;
  std::vector<index_t> taus;        // tau_1 < tau_2 < ... (0-based indices)
  index_t scanned_length = 0;
};

inline constexpr index_t kAllOccurrences =
    std::numeric_limits<index_t>::max();

inline OccurrenceTable find_occurrences(const ColorSequence& X,
                                        index_t max_count = kAllOccurrences) {
  OccurrenceTable table;
  table.m = X.m();
  table.scanned_length = X.size();
  if (max_count <= 0) return table;
  const int m = X.m();
  index_t i = 0;
  while (i + m <= X.size()) {
    bool hit = true;
    for (int j = 0; j < m; ++j) {
      if (X.at(i + j) != j) {
        hit = false;
        break;
      }
    }
    if (hit) {
      table.taus.push_back(i);
      if (static_cast<index_t>(table.taus.size()) >= max_count) break;
      i += m;
    } else {
      ++i;
    }
  }
  return table;
}

// Event on Y: k consecutive copies of the reversed basic pattern starting at
// row n-1, i.e. Y(n + i*m + j - 1) = m-1-j for i in [0,k-1], j in [0,m-1].
inline bool holds_E(const ColorSequence& Y, index_t n, index_t k) {
  if (n < 1) throw DomainError("holds_E: n must be >= 1");
  if (k < 0) throw DomainError("holds_E: k must be >= 0");
  if (k == 0) return true;
  const int m = Y.m();
  const index_t last = n + k * m - 2;
  if (last >= Y.size()) throw SequenceExhausted("holds_E: Y prefix too short");
  for (index_t i = 0; i < k; ++i) {
    for (int j = 0; j < m; ++j) {
      if (Y.at(n + i * m + j - 1) != m - 1 - j) return false;
    }
  }
  return true;
}

enum class FStatus {
  Holds,
  Fails,
  // Fewer than n+1 occurrences in the scanned prefix; the prefix cannot
  // certify the event either way. Distinct from Fails by contract.
  Insufficient,
};

// Event on X: the first n+1 occurrences of the basic pattern exist with
// tau_1 <= k-1 and tau_{i+1} - m - tau_i <= k-1 for i in [1, n].
inline FStatus classify_F(const ColorSequence& X, index_t n, index_t k) {
  if (n < 1) throw DomainError("classify_F: n must be >= 1");
  if (k < 0) throw DomainError("classify_F: k must be >= 0");
  const OccurrenceTable table = find_occurrences(X, n + 1);
  if (static_cast<index_t>(table.taus.size()) < n + 1)
    return FStatus::Insufficient;
  if (table.taus[0] > k - 1) return FStatus::Fails;
  const int m = X.m();
  for (index_t i = 0; i < n; ++i) {
    if (table.taus[static_cast<std::size_t>(i + 1)] - m -
            table.taus[static_cast<std::size_t>(i)] >
        k - 1)
      return FStatus::Fails;
  }
  return FStatus::Holds;
}

inline bool holds_F(const ColorSequence& X, index_t n, index_t k) {
  switch (classify_F(X, n, k)) {
    case FStatus::Holds:
      return true;
    case FStatus::Fails:
      return false;
    default:
      throw InsufficientOccurrences(
          "holds_F: fewer than n+1 occurrences in the scanned prefix");
  }
}

// Probability that the basic pattern starts at a fixed position.
inline double base_occurrence_prob(int m) {
  if (m < 1) throw DomainError("base_occurrence_prob: m must be >= 1");
  return std::pow(static_cast<double>(m), -static_cast<double>(m));
}

struct AnalyticBounds {
  int m = 1;
  double p1 = 1.0;     // m^{-m}
  double alpha = 0.0;  // -m ln(p1) / p1
};

inline AnalyticBounds analytic_bounds(int m) {
  const double p1 = base_occurrence_prob(m);
  return AnalyticBounds{m, p1, -static_cast<double>(m) * std::log(p1) / p1};
}

// Repetition count paired with a polynomial failure target n^{-s}:
// k = ceil((s+1) * m * ln(n) / p1). Natural log; the derivation needs
// p1*k/m >= (s+1) ln n so that n * exp(-p1*k/m) <= n^{-s}.
inline index_t choose_k(double s, index_t n, int m) {
  if (!(s > 0.0)) throw DomainError("choose_k: s must be > 0");
  if (n < 2) throw DomainError("choose_k: n must be >= 2");
  if (m < 1) throw DomainError("choose_k: m must be >= 1");
  const double p1 = base_occurrence_prob(m);
  const double raw = (s + 1.0) * static_cast<double>(m) *
                     std::log(static_cast<double>(n)) / p1;
  if (!std::isfinite(raw) || raw > 9.0e15)
    throw DomainError("choose_k: k does not fit in an integer");
  return static_cast<index_t>(std::ceil(raw));
}

// Exact probability of the row event: p1^k.
inline double prob_E_exact(int m, index_t k) {
  if (k < 0) throw DomainError("prob_E_exact: k must be >= 0");
  return std::pow(base_occurrence_prob(m),
                  static_cast<double>(k));
}

// Analytic lower bound for the column event: max(0, 1 - n exp(-p1 k / m)).
inline double prob_F_lower(int m, index_t n, index_t k) {
  if (n < 1) throw DomainError("prob_F_lower: n must be >= 1");
  if (k < 0) throw DomainError("prob_F_lower: k must be >= 0");
  const double p1 = base_occurrence_prob(m);
  const double bound =
      1.0 - static_cast<double>(n) *
                std::exp(-p1 * static_cast<double>(k) / static_cast<double>(m));
  return bound > 0.0 ? bound : 0.0;
}

// Prefix length beyond which the column event is fully decided: when every
// condition holds, tau_{n+1} <= (k-1) + n(m+k-1), so scanning that far plus
// one pattern length settles Holds/Fails; Insufficient then implies Fails
// for any extension of the prefix.
inline index_t decisive_scan_length(index_t n, index_t k, int m) {
  if (n < 1 || k < 1 || m < 1)
    throw DomainError("decisive_scan_length: need n, k, m >= 1");
  return (k - 1) + n * (m + k - 1) + m;
}

}  // namespace cdperc
