#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cperc/sequence.hpp"

namespace cperc {

enum class Move : std::uint8_t { advance_x, advance_y };

struct ScheduleStep {
    Move move;
    std::uint32_t vertex;  // vertex of K_M the advancing walk occupies after the move
};

// A delay schedule: the walks start on x[1], y[1]; each step advances
// exactly one walk to its next vertex while the other holds. A valid
// schedule keeps the walks on distinct vertices after every prefix.
struct Schedule {
    std::vector<ScheduleStep> steps;
};

// Converts an open oriented path from (1,1) into the schedule that realizes
// it: a right step advances X, an up step advances Y. Throws DomainError
// naming the first offending index when the path is not oriented or visits
// a closed site.
Schedule extract_schedule(const std::vector<Site>& path, const Sequence& x, const Sequence& y);

struct VerifyResult {
    bool ok = true;
    std::int64_t first_violation = -1;  // 0 = initial collision, k = after step k
};

// Replays the schedule against the step sequences: positions must match the
// sequences and stay distinct after every prefix. Never throws.
VerifyResult verify_schedule(const Schedule& s, const Sequence& x, const Sequence& y);

// One move per line: "X <vertex>" or "Y <vertex>".
void write_schedule(const Schedule& s, const std::string& path);
Schedule read_schedule(const std::string& path);

}  // namespace cperc
