#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "cdperc/errors.hpp"

namespace cdperc {

// Fixed-width bit vector used as one row of the reachability frontier.
// Bit i = column i. Tail bits above width are kept zero.
class BitRow {
 public:
  explicit BitRow(std::int64_t width) : width_(width) {
    if (width_ < 0) throw DomainError("BitRow width must be >= 0");
    words_.assign(static_cast<std::size_t>((width_ + 63) / 64), 0);
  }

  std::int64_t width() const { return width_; }

  bool test(std::int64_t i) const {
    if (i < 0 || i >= width_) throw IndexError("BitRow::test out of range");
    return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u;
  }

  void set(std::int64_t i) {
    if (i < 0 || i >= width_) throw IndexError("BitRow::set out of range");
    words_[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  // Highest set bit, -1 when empty.
  std::int64_t highest_set() const {
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (words_[w])
        return static_cast<std::int64_t>(w) * 64 + 63 -
               std::countl_zero(words_[w]);
    }
    return -1;
  }

  std::int64_t count() const {
    std::int64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  bool operator==(const BitRow& o) const {
    return width_ == o.width_ && words_ == o.words_;
  }

  // Zero any bits at or above width; callers that write raw words use this
  // to restore the invariant.
  void trim() {
    const int r = static_cast<int>(width_ & 63);
    if (!words_.empty() && r != 0)
      words_.back() &= (std::uint64_t{1} << r) - 1;
  }

 private:
  std::int64_t width_;
  std::vector<std::uint64_t> words_;
};

namespace detail {

// dst |= (src << shift) & gate, over whole word arrays of equal length.
// Top-down word order keeps every read at a not-yet-updated index, so the
// call is safe when dst aliases src.
inline void shl_or_masked(std::vector<std::uint64_t>& dst,
                          const std::vector<std::uint64_t>& src,
                          const std::vector<std::uint64_t>& gate,
                          std::int64_t shift) {
  const std::int64_t nw = static_cast<std::int64_t>(dst.size());
  const std::int64_t wd = shift >> 6;
  const int bd = static_cast<int>(shift & 63);
  for (std::int64_t w = nw - 1; w >= 0; --w) {
    std::uint64_t v = 0;
    const std::int64_t lo = w - wd;
    if (lo >= 0) {
      v = src[static_cast<std::size_t>(lo)] << bd;
      if (bd != 0 && lo - 1 >= 0)
        v |= src[static_cast<std::size_t>(lo - 1)] >> (64 - bd);
    }
    dst[static_cast<std::size_t>(w)] |= v & gate[static_cast<std::size_t>(w)];
  }
}

// gate &= (gate << shift), processed top-down so each word reads the
// pre-update value of lower words.
inline void shl_and_self(std::vector<std::uint64_t>& gate,
                         std::int64_t shift) {
  const std::int64_t nw = static_cast<std::int64_t>(gate.size());
  const std::int64_t wd = shift >> 6;
  const int bd = static_cast<int>(shift & 63);
  for (std::int64_t w = nw - 1; w >= 0; --w) {
    std::uint64_t v = 0;
    const std::int64_t lo = w - wd;
    if (lo >= 0) {
      v = gate[static_cast<std::size_t>(lo)] << bd;
      if (bd != 0 && lo - 1 >= 0)
        v |= gate[static_cast<std::size_t>(lo - 1)] >> (64 - bd);
    }
    gate[static_cast<std::size_t>(w)] &= v;
  }
}

}  // namespace detail

// Rightward closure inside runs of open cells: result bit i is set iff some
// seed bit j <= i lies in the same contiguous open run, i.e. [j..i] is all
// open. Kogge-Stone doubling, O(words * log2 width) per call.
inline void fill_right_runs_inplace(const BitRow& open, BitRow& seeds,
                                    std::vector<std::uint64_t>& gate_scratch) {
  auto& x = seeds.words();
  const auto& m = open.words();
  for (std::size_t w = 0; w < x.size(); ++w) x[w] &= m[w];
  gate_scratch = m;
  const std::int64_t width = open.width();
  for (std::int64_t shift = 1; shift < width; shift <<= 1) {
    detail::shl_or_masked(x, x, gate_scratch, shift);
    detail::shl_and_self(gate_scratch, shift);
  }
  seeds.trim();
}

inline BitRow fill_right_runs(const BitRow& open, const BitRow& seeds) {
  if (open.width() != seeds.width())
    throw DomainError("fill_right_runs: width mismatch");
  BitRow out = seeds;
  std::vector<std::uint64_t> scratch;
  fill_right_runs_inplace(open, out, scratch);
  return out;
}

}  // namespace cdperc
