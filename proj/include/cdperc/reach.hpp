#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "cdperc/bitrow.hpp"
#include "cdperc/core.hpp"
#include "cdperc/errors.hpp"

namespace cdperc {

// One row of the reachable set: bit i is set iff a white directed path from
// (0,0) ends at (i, row) with every visited point white.
struct ReachFrontier {
  index_t row = 0;
  BitRow bits{0};
};

struct Rectangle {
  index_t a = 0;  // inclusive column bound
  index_t b = 0;  // inclusive row bound
};

namespace detail {

// Streaming frontier sweep over an abstract white mask. mask_fn(j, out)
// writes the white mask of row j into out; row_fn(j, frontier) returns false
// to stop early. Live state is O(W): one frontier row plus scratch.
template <class MaskFn, class RowFn>
void scan_reach_rows_masked(index_t W, index_t H, MaskFn&& mask_fn,
                            RowFn&& row_fn) {
  if (W <= 0 || H <= 0) return;
  BitRow frontier(W);
  BitRow open(W);
  std::vector<std::uint64_t> scratch;
  frontier.set(0);  // origin enters row 0 if white
  for (index_t j = 0; j < H; ++j) {
    mask_fn(j, open);
    fill_right_runs_inplace(open, frontier, scratch);
    if (!row_fn(j, static_cast<const BitRow&>(frontier))) return;
    if (!frontier.any()) {
      // A dead frontier stays dead: later rows seed only from this one.
      BitRow empty(W);
      for (index_t r = j + 1; r < H; ++r)
        if (!row_fn(r, static_cast<const BitRow&>(empty))) return;
      return;
    }
  }
}

// Per-color column masks let a row's white mask be computed in O(W/64).
class ColumnMasks {
 public:
  ColumnMasks(const ColorSequence& X, index_t W) : width_(W) {
    masks_.assign(static_cast<std::size_t>(X.m()), BitRow(W));
    for (index_t i = 0; i < W; ++i)
      masks_[static_cast<std::size_t>(X.at(i))].set(i);
  }

  // out = columns whose color differs from row_color.
  void white_mask(color_t row_color, BitRow& out) const {
    const auto& blocked = masks_[static_cast<std::size_t>(row_color)].words();
    auto& w = out.words();
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = ~blocked[k];
    out.trim();
  }

 private:
  index_t width_;
  std::vector<BitRow> masks_;
};

template <class RowFn>
void scan_reach_rows(const ColorSequence& X, const ColorSequence& Y, index_t W,
                     index_t H, RowFn&& row_fn) {
  if (W > X.size() || H > Y.size())
    throw SequenceExhausted("reach window exceeds stored prefixes");
  if (W <= 0 || H <= 0) return;
  ColumnMasks cols(X, W);
  scan_reach_rows_masked(
      W, H, [&](index_t j, BitRow& out) { cols.white_mask(Y.at(j), out); },
      std::forward<RowFn>(row_fn));
}

}  // namespace detail

// Materialized frontiers for rows 0..H-1.
inline std::vector<ReachFrontier> reach_rows(const ColorSequence& X,
                                             const ColorSequence& Y, index_t W,
                                             index_t H) {
  std::vector<ReachFrontier> rows;
  rows.reserve(static_cast<std::size_t>(std::max<index_t>(H, 0)));
  detail::scan_reach_rows(X, Y, W, H, [&](index_t j, const BitRow& bits) {
    rows.push_back(ReachFrontier{j, bits});
    return true;
  });
  return rows;
}

// Largest d in [0, N] such that some reachable white point sits at L1
// distance d from the origin; -1 when the origin itself is blocked. The set
// of achieved distances is an interval starting at 0, because every prefix
// of a witnessing path is itself a witness.
inline index_t max_reach_distance(const ColorSequence& X,
                                  const ColorSequence& Y, index_t N) {
  if (N < 0) throw DomainError("max_reach_distance: negative bound");
  index_t best = -1;
  detail::scan_reach_rows(X, Y, N + 1, N + 1,
                          [&](index_t j, const BitRow& bits) {
                            const index_t hi = bits.highest_set();
                            if (hi >= 0)
                              best = std::max(best, std::min(hi + j, N));
                            return best < N;
                          });
  return best;
}

inline bool percolates_to(const ColorSequence& X, const ColorSequence& Y,
                          index_t n) {
  return max_reach_distance(X, Y, n) == n;
}

struct EscapeReport {
  bool top = false;    // reached row b+1 at a column <= a+1
  bool right = false;  // reached column a+1 at a row <= b+1
  bool escaped() const { return top || right; }
};

// Does a white directed path from the origin, confined to the rectangle
// [0,a] x [0,b] until its final step, reach a white point just outside the
// top or right edge? Scanning the (a+2) x (b+2) window suffices: the first
// outside point of any witnessing path lies in that window with all earlier
// points inside the rectangle.
inline EscapeReport escape_report(const ColorSequence& X,
                                  const ColorSequence& Y,
                                  const Rectangle& rect) {
  if (rect.a < 0 || rect.b < 0) throw DomainError("rectangle bounds negative");
  const index_t W = rect.a + 2;
  const index_t H = rect.b + 2;
  EscapeReport rep;
  detail::scan_reach_rows(X, Y, W, H, [&](index_t j, const BitRow& bits) {
    if (j == H - 1 && bits.any()) rep.top = true;
    if (bits.test(W - 1)) rep.right = true;
    return !(rep.top && rep.right);
  });
  return rep;
}

inline bool escapes_rectangle(const ColorSequence& X, const ColorSequence& Y,
                              const Rectangle& rect) {
  return escape_report(X, Y, rect).escaped();
}

}  // namespace cdperc
