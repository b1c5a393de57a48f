#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cperc/params.hpp"

namespace cperc {

// Order-preserving index matching between I1 = [a+1, a+t] and
// I2 = [b+1, b+t'] covering the marked sets B and B', with gap-ratio
// (slope) constraints between consecutive matched pairs.
struct Assignment {
    std::int64_t a = 0, t = 0;        // I1 = [a+1, a+t]
    std::int64_t b = 0, t_prime = 0;  // I2 = [b+1, b+t']
    int level = 0;                    // j
    std::vector<std::int64_t> from;   // strictly increasing
    std::vector<std::int64_t> to;     // strictly increasing, paired by index
    std::vector<std::uint8_t> from_is_marked;  // from[i] in B (vs preimage of B')
};

// Checks conditions (i)-(iii) of the admissible-assignment definition
// against the given marked sets; exact slope arithmetic.
ValidationReport validate_assignment(const Assignment& asg, const std::vector<std::int64_t>& b_set,
                                     const std::vector<std::int64_t>& b_prime_set, const Params& p);

// Builds the family of L_j^2 admissible assignments with the shift
// structure: member h maps each x in B to tau_1(x)+h-1 and each y in B'
// from tau_1^{-1}(y)-h+1. Proportional placement; every member is
// validated before return. Throws InfeasibleError when the slope
// precondition fails or the intervals are too cramped for the family.
std::vector<Assignment> build_assignments(std::int64_t a, std::int64_t t, std::int64_t b,
                                          std::int64_t t_prime,
                                          const std::vector<std::int64_t>& b_set,
                                          const std::vector<std::int64_t>& b_prime_set, int j,
                                          const Params& p);

// First assignment in the family whose marked pairs all stay at least
// `margin` away (sup-norm) from every point of the forbidden set. margin
// defaults to the 2 k0 R^3 10^(j+8) formula (checked arithmetic). Throws
// InfeasibleError when no family member qualifies.
Assignment select_avoiding(const std::vector<Assignment>& family,
                           const std::vector<std::pair<std::int64_t, std::int64_t>>& forbidden,
                           const Params& p, std::optional<std::int64_t> margin = std::nullopt);

// One cell of a route: position in the cell grid A = [1..t] x [1..t'],
// plus entry and exit ports in the cell's n x n' rectangle.
struct RoutePoint {
    std::int64_t cell_col = 1, cell_row = 1;
    std::int64_t in_col = 1, in_row = 1;
    std::int64_t out_col = 1, out_row = 1;
};

// A chunk-level oriented path through a rectangle of rectangles with
// per-cell port windows and slope constraints.
struct Route {
    int level = 1;  // j
    std::int64_t t = 1, t_prime = 1;
    std::vector<std::int64_t> cell_widths;   // n_i, one per column
    std::vector<std::int64_t> cell_heights;  // n'_i, one per row
    std::vector<RoutePoint> points;
};

// Conditions (i)-(iv) of the route definition; exact slope arithmetic,
// corner exceptions at the route's global endpoints.
ValidationReport validate_route(const Route& r, const Params& p);

// Cell-dimension window the route builders require:
// [L_{j-1}^c, L_{j-1}^c + L_{j-1}] with c = max(1, len_exponent - 4).
std::pair<std::int64_t, std::int64_t> route_cell_bounds(const Params& p, int j);

// Corner-to-corner route hugging the straight line from corner to corner
// (floor/ceil crossing formulas, ports clamped into the margin windows).
// The route stays within L1 distance 50 of the diagonal.
Route build_cc_route(std::int64_t t, std::int64_t t_prime,
                     const std::vector<std::int64_t>& cell_widths,
                     const std::vector<std::int64_t>& cell_heights, int j, const Params& p);

// Corner-to-corner route whose cell path avoids a forbidden cell set, found
// by retrying over sampled mid-line offsets; throws InfeasibleError after
// `attempts` failures.
Route build_cc_route_avoiding(std::int64_t t, std::int64_t t_prime,
                              const std::vector<std::int64_t>& cell_widths,
                              const std::vector<std::int64_t>& cell_heights, int j,
                              const Params& p,
                              const std::vector<std::pair<std::int64_t, std::int64_t>>& forbidden,
                              int attempts, std::uint64_t seed);

enum class ConnectionKind { corner_to_side, side_to_corner, side_to_side };

struct PortRef {
    // A port on the first cell (entries) or last cell (exits).
    std::int64_t col = 1, row = 1;
};

struct ConnectionRoute {
    PortRef entry;  // (1,1) for corner starts
    PortRef exit;   // (n_t, n'_t') for corner ends
    Route route;
};

// One route per required port (or port pair, for side-to-side): the
// admissible-connection families. min_span guards the construction
// (defaults to the 5^(j+6) R threshold; override for desk-scale runs).
std::vector<ConnectionRoute> build_connection(ConnectionKind kind, std::int64_t t,
                                              std::int64_t t_prime,
                                              const std::vector<std::int64_t>& cell_widths,
                                              const std::vector<std::int64_t>& cell_heights, int j,
                                              const Params& p,
                                              std::optional<std::int64_t> min_span = std::nullopt);

}  // namespace cperc
