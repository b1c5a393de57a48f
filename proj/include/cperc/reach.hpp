#pragma once

#include <cstdint>
#include <vector>

#include "cperc/sequence.hpp"

namespace cperc {

// 1-based inclusive window [a1,a2] x [b1,b2]; columns index x, rows index y.
struct Rect {
    std::int64_t a1 = 1, a2 = 1, b1 = 1, b2 = 1;
    std::int64_t width() const { return a2 - a1 + 1; }
    std::int64_t height() const { return b2 - b1 + 1; }
};

void check_rect(const Sequence& x, const Sequence& y, const Rect& r);

// Bit-packed row set at one sweep column of the oriented DP.
class Frontier {
public:
    explicit Frontier(std::int64_t height)
        : height_(height), words_(static_cast<std::size_t>((height + 63) / 64), 0) {}

    std::int64_t height() const { return height_; }
    bool test(std::int64_t r) const {
        return (words_[static_cast<std::size_t>(r >> 6)] >> (r & 63)) & 1u;
    }
    void set(std::int64_t r) { words_[static_cast<std::size_t>(r >> 6)] |= 1ull << (r & 63); }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    std::int64_t highest() const;  // highest set bit index, -1 if empty
    std::int64_t count_range(std::int64_t lo, std::int64_t hi) const;  // popcount on [lo,hi]

    std::vector<std::uint64_t>& words() { return words_; }
    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::int64_t height_;
    std::vector<std::uint64_t> words_;
};

// One oriented-DP column step: seeds from the left neighbour column plus
// upward propagation through open runs. open_mask/prev/out are word arrays
// of the same height; out may alias prev.
void frontier_step(const std::vector<std::uint64_t>& open_mask,
                   const std::vector<std::uint64_t>& seeds_from_left,
                   std::vector<std::uint64_t>& out, std::int64_t height);

// Row symbols of a window, for building per-column open masks (bit r set
// iff y[b1+r] != x_symbol).
class ColumnMasks {
public:
    ColumnMasks(const Sequence& y, const Rect& r);
    std::int64_t height() const { return height_; }
    std::size_t words() const { return nwords_; }
    void build(std::uint32_t x_symbol, std::vector<std::uint64_t>& mask) const;

private:
    std::int64_t height_;
    std::size_t nwords_;
    std::vector<std::uint32_t> rows_;
};

// Reachable-site set of the oriented DP from the rectangle's bottom-left
// site, all columns retained (memory ~ area/8 bits).
class ReachSet {
public:
    ReachSet(Rect rect, std::vector<std::vector<std::uint64_t>> cols);

    const Rect& rect() const { return rect_; }
    bool marked(Site s) const;  // absolute coordinates
    // Counts over absolute coordinate ranges on the two far boundaries.
    std::int64_t count_top_row(std::int64_t c_lo, std::int64_t c_hi) const;
    std::int64_t count_right_col(std::int64_t r_lo, std::int64_t r_hi) const;
    bool top_row_marked(std::int64_t col) const;
    bool right_col_marked(std::int64_t row) const;

    const std::vector<std::uint64_t>& column_words(std::int64_t col) const;

private:
    Rect rect_;
    std::vector<std::vector<std::uint64_t>> cols_;  // [width][words]
};

// Oriented reachability from (a1,b1) with step set {right, up} (fixed; the
// scheduling semantics advance one walk per event). Site (a1,b1) is marked
// iff it is open.
ReachSet reach(const Sequence& x, const Sequence& y, const Rect& rect);

// True iff reach marks (a2,b2). O(height/64) memory.
bool cc_connected(const Sequence& x, const Sequence& y, const Rect& rect);

// Sites of [a1,a2]x[b1,b2] from which (a2,b2) is reachable; exposed as
// bitsets over the bottom row and left column (what the side-to-corner
// events need).
struct BackwardBoundary {
    Rect rect;
    Frontier bottom_row;  // index col - a1
    Frontier left_col;    // index row - b1
};
BackwardBoundary backward_reach(const Sequence& x, const Sequence& y, const Rect& rect);

// Largest n <= n_max with a reachable site on the anti-diagonal col+row = n;
// 0 when the origin is closed. Monotone in n_max.
std::int64_t survival_depth(const Sequence& x, const Sequence& y, std::int64_t n_max);

// Non-oriented variant: true iff the 4-neighbour open cluster of (1,1)
// inside [1,n]^2 contains a site with col==n or row==n.
bool non_oriented_reaches(const Sequence& x, const Sequence& y, std::int64_t n);

// Backtracks an open oriented path from the rectangle's origin to target
// (which must be marked); returned sites run origin..target.
std::vector<Site> extract_path(const ReachSet& reached, Site target);

}  // namespace cperc
