#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cperc/block.hpp"
#include "cperc/params.hpp"
#include "cperc/reach.hpp"

namespace cperc {

// Chunk of a level-(j+1) block: a group of L_j^p_chunk consecutive level-j
// sub-blocks (the last chunk absorbs the remainder), carried as its level-0
// span plus the sub-block range.
struct Chunk {
    Role owner = Role::x_walk;
    std::int64_t index = 1;            // k, 1-based
    std::int64_t first0 = 1, last0 = 0;  // contiguous level-0 indices
    std::int64_t first_sub = 1, last_sub = 0;
    std::int64_t size0() const { return last0 - first0 + 1; }
};

// Partition of the block's level-0 interval per the chunk definition;
// throws InfeasibleError("no full chunk") when the block is shorter than
// one chunk.
std::vector<Chunk> chunks(const Block& b, const Params& p);

enum class SideTag { bottom, left, top, right };

struct EntryExit {
    SideTag side = SideTag::bottom;
    std::int64_t chunk_index = 1;
    int level = 0;  // j (sub-block level)
};

struct EntryExitSets {
    std::vector<EntryExit> entries;  // E_in
    std::vector<EntryExit> exits;    // E_out
    std::vector<std::pair<EntryExit, EntryExit>> pairs;  // E(X,Y)
    bool too_few_chunks = false;
};

// Index-window/slope filter on bare chunk counts (exact 128-bit slope
// comparisons); the block version below derives n_x, n_y by chunking.
EntryExitSets entry_exit_core(std::int64_t n_x, std::int64_t n_y, int j, std::int64_t l_j,
                              std::int64_t slope_r);
EntryExitSets entry_exit_pairs(const Block& xb, const Block& yb, const Params& p);

// Density threshold helper: smallest integer count satisfying
// count >= threshold * size.
std::int64_t required_count(double threshold, std::int64_t size);

// Chunk-level events between two same-level blocks over their rectangle.
// j is the sub-block level (block level - 1); thresholds 3/4 + 2^-(j+5).
bool cs_connected(const Sequence& x, const Sequence& y, const Block& xb, const Block& yb,
                  const Params& p);
bool sc_connected(const Sequence& x, const Sequence& y, const Block& xb, const Block& yb,
                  const Params& p);
bool ss_connected(const Sequence& x, const Sequence& y, const Block& xb, const Block& yb,
                  const Params& p);

// A contiguous run of level-j sub-blocks inside a level-(j+1) block,
// projected to one axis: full span plus the spans of its first and last
// sub-block (the starred events count on those).
struct AxisSegment {
    std::int64_t lo = 1, hi = 0;
    std::int64_t head_lo = 1, head_hi = 0;
    std::int64_t tail_lo = 1, tail_hi = 0;
    int level = 0;  // j
};
AxisSegment make_segment(const Block& b, std::int64_t sub_lo, std::int64_t sub_hi);

struct StarVerdicts {
    bool cs_star = false;
    bool sc_star = false;
    bool ss_star = false;
};

// Starred segment events; densities use exponent j+7/2 and are computed in
// binary floating point with count ceilings (platform-stable IEEE ops).
StarVerdicts starred_events(const Sequence& x, const Sequence& y, const AxisSegment& xs,
                            const AxisSegment& ys, const Params& p);

namespace testing {
// Naive per-pair Condition-S check by subset enumeration over per-source
// reach sets; exponential, for small instances in tests only.
bool condition_s_oracle(const Sequence& x, const Sequence& y, const Rect& rect,
                        SideTag entry_side, std::int64_t e_lo, std::int64_t e_hi,
                        SideTag exit_side, std::int64_t x_lo, std::int64_t x_hi,
                        std::int64_t n_a, std::int64_t n_b);
}  // namespace testing

}  // namespace cperc
