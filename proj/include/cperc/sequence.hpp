#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cperc/errors.hpp"

namespace cperc {

enum class Role { x_walk, y_walk };

// A finite word over {1..alphabet}; the step stream of one walk.
// Interfaces are 1-based throughout, matching the lattice origin (1,1).
struct Sequence {
    std::int64_t alphabet = 0;  // M
    std::vector<std::uint32_t> items;
    Role role = Role::x_walk;

    std::int64_t size() const { return static_cast<std::int64_t>(items.size()); }

    std::uint32_t at(std::int64_t i) const {
        if (i < 1 || i > size()) {
            throw BoundsError("sequence index " + std::to_string(i) + " outside [1," +
                              std::to_string(size()) + "]");
        }
        return items[static_cast<std::size_t>(i - 1)];
    }
};

struct Site {
    std::int64_t col = 1;  // indexes the X sequence
    std::int64_t row = 1;  // indexes the Y sequence
};

// Site (col,row) is open iff x[col] != y[row].
bool is_open(const Sequence& x, const Sequence& y, Site s);

// n i.i.d.-uniform symbols on {1..alphabet} from xoshiro256** seeded with
// splitmix64(seed ^ role tag); rejection sampling keeps the draw unbiased
// and the output identical on every platform. Prefix-stable in n.
Sequence generate(std::int64_t alphabet, std::int64_t n, std::uint64_t seed, Role role);

// Text format: header "M=<int> n=<int>", then whitespace-separated symbols.
// Binary format: little-endian u32 M, u32 n, then n little-endian u32 items.
// read_sequence_file sniffs the format by the "M=" prefix.
Sequence read_sequence_file(const std::string& path, Role role);
void write_sequence_text(const Sequence& s, const std::string& path);
void write_sequence_binary(const Sequence& s, const std::string& path);

}  // namespace cperc
