#pragma once

#include <cstdint>
#include <vector>

#include "cperc/errors.hpp"
#include "cperc/sequence.hpp"

namespace cperc {

// A level-j segment of a sequence produced by the recursive partition.
// Level-1 blocks have single-symbol (level-0) sub-blocks; a level-(j+1)
// block records the boundaries of its level-j sub-blocks.
struct Block {
    enum class Law { first_block, mu, mu_good };

    int level = 1;
    Role role = Role::x_walk;
    std::int64_t lo0 = 1, hi0 = 0;        // level-0 span, 1-based inclusive
    std::vector<std::int64_t> sub_ends;   // absolute level-0 end of each sub-block
    std::int64_t excess = 0;              // T: length beyond the deterministic part
    std::int64_t padding = -1;            // W: geometric draw (levels >= 2), -1 otherwise
    std::vector<std::int64_t> bad_subs;   // 1-based positions of bad sub-blocks
    Law law = Law::mu;

    std::int64_t sub_count() const { return static_cast<std::int64_t>(sub_ends.size()); }
    std::int64_t length0() const { return hi0 - lo0 + 1; }

    std::int64_t sub_lo0(std::int64_t i) const {  // 1-based sub index
        if (i < 1 || i > sub_count()) throw BoundsError("sub-block index out of range");
        return i == 1 ? lo0 : sub_ends[static_cast<std::size_t>(i - 2)] + 1;
    }
    std::int64_t sub_hi0(std::int64_t i) const {
        if (i < 1 || i > sub_count()) throw BoundsError("sub-block index out of range");
        return sub_ends[static_cast<std::size_t>(i - 1)];
    }
    bool sub_is_bad(std::int64_t i) const {
        for (auto b : bad_subs)
            if (b == i) return true;
        return false;
    }
};

// Level-j segmentation of a consumed sequence prefix.
struct BlockPartition {
    int level = 1;
    Role role = Role::x_walk;
    std::vector<Block> blocks;
    std::int64_t consumed0 = 0;  // level-0 prefix length tiled by the blocks
    bool incomplete = false;     // stopping pattern / good run not found in remaining input
};

}  // namespace cperc
