#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cdperc/errors.hpp"

namespace cdperc {

using index_t = std::int64_t;
using color_t = std::int32_t;

// Finite prefix of a color stream over the alphabet {0..m-1}. Two of these
// (X for columns, Y for rows) induce the point coloring of the lattice:
// (i,j) is blocked when X(i) = Y(j), white otherwise.
class ColorSequence {
 public:
  explicit ColorSequence(int m, std::vector<color_t> values = {})
      : m_(m), values_(std::move(values)) {
    if (m_ < 1) throw DomainError("alphabet size must be >= 1");
    for (color_t c : values_) check_color(c);
  }

  int m() const { return m_; }
  index_t size() const { return static_cast<index_t>(values_.size()); }

  color_t at(index_t i) const {
    if (i < 0 || i >= size()) throw IndexError("color index out of range");
    return values_[static_cast<std::size_t>(i)];
  }

  const std::vector<color_t>& values() const { return values_; }

  void set(index_t i, color_t c) {
    if (i < 0 || i >= size()) throw IndexError("color index out of range");
    check_color(c);
    values_[static_cast<std::size_t>(i)] = c;
  }

  void append(color_t c) {
    check_color(c);
    values_.push_back(c);
  }

  bool operator==(const ColorSequence& o) const {
    return m_ == o.m_ && values_ == o.values_;
  }

 private:
  void check_color(color_t c) const {
    if (c < 0 || c >= m_) throw DomainError("color outside [0, m-1]");
  }

  int m_;
  std::vector<color_t> values_;
};

// Binary schedule: bit 1 advances the column walk (a Right step), bit 0 the
// row walk (an Up step).
class DelaySequence {
 public:
  DelaySequence() = default;
  explicit DelaySequence(std::vector<std::uint8_t> bits)
      : bits_(std::move(bits)) {
    for (auto b : bits_) {
      if (b > 1) throw DomainError("delay bits must be 0 or 1");
    }
  }

  index_t size() const { return static_cast<index_t>(bits_.size()); }

  std::uint8_t at(index_t n) const {
    if (n < 0 || n >= size()) throw IndexError("delay index out of range");
    return bits_[static_cast<std::size_t>(n)];
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const DelaySequence& o) const { return bits_ == o.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

struct LatticePoint {
  index_t i = 0;  // column
  index_t j = 0;  // row
  bool operator==(const LatticePoint& o) const { return i == o.i && j == o.j; }
};

inline index_t l1_distance(const LatticePoint& a, const LatticePoint& b) {
  const index_t di = a.i >= b.i ? a.i - b.i : b.i - a.i;
  const index_t dj = a.j >= b.j ? a.j - b.j : b.j - a.j;
  return di + dj;
}

enum class Step : std::uint8_t { Right, Up };

// Directed lattice path starting implicitly at (0,0).
struct LatticePath {
  std::vector<Step> steps;
  bool operator==(const LatticePath& o) const { return steps == o.steps; }
};

// s_n: number of 1-bits among u(0..n-1). s_0 = 0, s_{n+1} - s_n = u(n).
inline index_t partial_sum(const DelaySequence& u, index_t n) {
  if (n < 0 || n > u.size()) throw IndexError("partial_sum: n out of range");
  index_t s = 0;
  for (index_t i = 0; i < n; ++i) s += u.at(i);
  return s;
}

// Value of the delayed sequence x^(u) at step n, i.e. x(s_n).
inline color_t delayed_value(const ColorSequence& x, const DelaySequence& u,
                             index_t n) {
  const index_t s = partial_sum(u, n);
  if (s >= x.size()) throw SequenceExhausted("delayed_value: x exhausted");
  return x.at(s);
}

inline DelaySequence complement(const DelaySequence& u) {
  std::vector<std::uint8_t> bits(u.bits());
  for (auto& b : bits) b = static_cast<std::uint8_t>(1 - b);
  return DelaySequence(std::move(bits));
}

// Earliest n in [0, T] where the two delayed walks read equal colors, i.e.
// x(s_n) = y(n - s_n); nullopt when the schedule keeps them apart through the
// whole horizon. The horizon is inclusive: a length-T schedule visits T+1
// lattice points.
inline std::optional<index_t> collision_time(const ColorSequence& x,
                                             const ColorSequence& y,
                                             const DelaySequence& u,
                                             index_t T) {
  if (T < 0) throw IndexError("collision_time: negative horizon");
  index_t s = 0;
  for (index_t n = 0; n <= T; ++n) {
    if (s >= x.size()) throw SequenceExhausted("collision_time: x exhausted");
    if (n - s >= y.size())
      throw SequenceExhausted("collision_time: y exhausted");
    if (x.at(s) == y.at(n - s)) return n;
    if (n < T) s += u.at(n);
  }
  return std::nullopt;
}

// (i,j) is white iff its column and row colors differ.
inline bool is_white(const ColorSequence& X, const ColorSequence& Y,
                     const LatticePoint& p) {
  if (p.i < 0 || p.i >= X.size()) throw IndexError("is_white: column index");
  if (p.j < 0 || p.j >= Y.size()) throw IndexError("is_white: row index");
  return X.at(p.i) != Y.at(p.j);
}

// Bit n is 1 iff step n is horizontal.
inline DelaySequence path_to_delay(const LatticePath& path) {
  std::vector<std::uint8_t> bits;
  bits.reserve(path.steps.size());
  for (Step s : path.steps)
    bits.push_back(s == Step::Right ? std::uint8_t{1} : std::uint8_t{0});
  return DelaySequence(std::move(bits));
}

inline LatticePath delay_to_path(const DelaySequence& u) {
  LatticePath p;
  p.steps.reserve(static_cast<std::size_t>(u.size()));
  for (index_t n = 0; n < u.size(); ++n)
    p.steps.push_back(u.at(n) == 1 ? Step::Right : Step::Up);
  return p;
}

// Points visited by a path: after n steps the walker sits at (s_n, n - s_n).
inline std::vector<LatticePoint> visited_points(const LatticePath& path) {
  std::vector<LatticePoint> pts;
  pts.reserve(path.steps.size() + 1);
  LatticePoint cur{0, 0};
  pts.push_back(cur);
  for (Step s : path.steps) {
    if (s == Step::Right)
      ++cur.i;
    else
      ++cur.j;
    pts.push_back(cur);
  }
  return pts;
}

inline constexpr index_t kBruteforceHorizonLimit = 20;

// Exhaustive search over all 2^T schedules: does any of them avoid collision
// through horizon T? Independent of the frontier DP on purpose; the two are
// cross-checked in the tests.
inline bool exists_schedule_bruteforce(const ColorSequence& x,
                                       const ColorSequence& y, index_t T) {
  if (T < 0) throw IndexError("bruteforce: negative horizon");
  if (T > kBruteforceHorizonLimit)
    throw OracleLimitExceeded("bruteforce horizon above 2^20 search guard");
  if (x.size() < T + 1 || y.size() < T + 1)
    throw SequenceExhausted("bruteforce: prefixes must cover the horizon");
  const std::uint64_t schedules = std::uint64_t{1} << T;
  for (std::uint64_t mask = 0; mask < schedules; ++mask) {
    index_t s = 0;
    bool collided = false;
    for (index_t n = 0; n <= T; ++n) {
      if (x.at(s) == y.at(n - s)) {
        collided = true;
        break;
      }
      if (n < T) s += static_cast<index_t>((mask >> n) & 1u);
    }
    if (!collided) return true;
  }
  return false;
}

}  // namespace cdperc
