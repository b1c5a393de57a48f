#include "cperc/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "cperc/checked.hpp"
#include "cperc/errors.hpp"
#include "cperc/ratio.hpp"
#include "cperc/rng.hpp"

namespace cperc {

namespace {

using i128 = __int128;

std::int64_t trim_width(const Params& p, int j) {
    return checked_pow(scale(p, j), p.run_exponent(), "interval trim");
}

bool contains(const std::vector<std::int64_t>& sorted, std::int64_t v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

ValidationReport validate_assignment(const Assignment& asg, const std::vector<std::int64_t>& b_set,
                                     const std::vector<std::int64_t>& b_prime_set,
                                     const Params& p) {
    ValidationReport rep;
    const std::int64_t trim = trim_width(p, asg.level);
    const std::int64_t i2s_lo = asg.b + trim + 1, i2s_hi = asg.b + asg.t_prime - trim;
    std::vector<std::int64_t> bs = b_set, bps = b_prime_set;
    std::sort(bs.begin(), bs.end());
    std::sort(bps.begin(), bps.end());
    for (auto v : bs) {
        if (v < asg.a + trim + 1 || v > asg.a + asg.t - trim) {
            rep.fail("B not inside trimmed I1*");
            break;
        }
    }
    for (auto v : bps) {
        if (v < i2s_lo || v > i2s_hi) {
            rep.fail("B' not inside trimmed I2*");
            break;
        }
    }
    const std::size_t ell = asg.from.size();
    if (asg.to.size() != ell || asg.from_is_marked.size() != ell) {
        rep.fail("(i) pair arrays inconsistent");
        return rep;
    }
    if (ell != bs.size() + bps.size()) rep.fail("(i) |H| != |B|+|B'|");
    for (std::size_t i = 0; i < ell; ++i) {
        if (asg.from[i] < asg.a + 1 || asg.from[i] > asg.a + asg.t) rep.fail("(i) H outside I1");
        if (asg.to[i] < i2s_lo || asg.to[i] > i2s_hi) rep.fail("(i) H' outside I2*");
        if (i > 0 && asg.from[i] <= asg.from[i - 1]) rep.fail("(i) H not strictly increasing");
        if (i > 0 && asg.to[i] <= asg.to[i - 1]) rep.fail("(i) H' not strictly increasing");
    }
    for (auto v : bs) {
        if (!std::binary_search(asg.from.begin(), asg.from.end(), v)) {
            rep.fail("(i) B not covered by H");
            break;
        }
    }
    for (auto v : bps) {
        if (!std::binary_search(asg.to.begin(), asg.to.end(), v)) {
            rep.fail("(i) B' not covered by H'");
            break;
        }
    }
    for (std::size_t i = 0; i < ell; ++i) {
        if (contains(bs, asg.from[i]) && contains(bps, asg.to[i])) {
            rep.fail("(ii) tau(B) meets B'");
            break;
        }
    }
    // (iii) with sentinels a_0 = a, a_{l+1} = a+t+1 (same on the other side).
    std::int64_t prev_from = asg.a, prev_to = asg.b;
    for (std::size_t i = 0; i <= ell; ++i) {
        const std::int64_t nf = i < ell ? asg.from[i] : asg.a + asg.t + 1;
        const std::int64_t nt = i < ell ? asg.to[i] : asg.b + asg.t_prime + 1;
        const std::int64_t gap_a = nf - prev_from - 1;
        const std::int64_t gap_b = nt - prev_to - 1;
        if (!slope_within_half_exponent(gap_b, gap_a, p.slope_r, asg.level)) {
            rep.fail("(iii) gap ratio outside window at pair " + std::to_string(i));
        }
        prev_from = nf;
        prev_to = nt;
    }
    return rep;
}

namespace {

struct AnchorItem {
    std::int64_t pref_from, pref_to;
    bool from_fixed;  // true: B item (from pinned); false: B' item (to pinned)
};

// Places sliding values between pinned ones: forward lower bounds, backward
// upper bounds, windows kept clear of the avoid set.
struct Placer {
    std::int64_t span;  // family size S: sliding values sweep [v-(S-1), v] or [v, v+S-1]
    std::vector<std::int64_t> avoid;  // sorted; sliding windows must miss it

    bool window_clear(std::int64_t w_lo, std::int64_t w_hi) const {
        auto it = std::lower_bound(avoid.begin(), avoid.end(), w_lo);
        return it == avoid.end() || *it > w_hi;
    }
};

}  // namespace

std::vector<Assignment> build_assignments(std::int64_t a, std::int64_t t, std::int64_t b,
                                          std::int64_t t_prime,
                                          const std::vector<std::int64_t>& b_set,
                                          const std::vector<std::int64_t>& b_prime_set, int j,
                                          const Params& p) {
    if (static_cast<std::int64_t>(b_set.size()) > 3 * p.k0 ||
        static_cast<std::int64_t>(b_prime_set.size()) > 3 * p.k0) {
        throw InfeasibleError("build_assignments: marked sets exceed 3*k0");
    }
    if (!slope_within_dyadic(t_prime, t, p.slope_r, j + 4)) {
        throw InfeasibleError("build_assignments: t'/t outside the slope window");
    }
    const std::int64_t family = checked_pow(scale(p, j), 2, "assignment family size");
    if (family > (1 << 22)) {
        throw InfeasibleError("build_assignments: family of L_j^2 assignments too large to materialize");
    }
    const std::int64_t trim = trim_width(p, j);
    std::vector<std::int64_t> bs = b_set, bps = b_prime_set;
    std::sort(bs.begin(), bs.end());
    std::sort(bps.begin(), bps.end());
    for (auto v : bs) {
        if (v <= a + trim || v > a + t - trim) {
            throw DomainError("build_assignments: B must sit inside the trimmed I1*");
        }
    }
    for (auto v : bps) {
        if (v <= b + trim || v > b + t_prime - trim) {
            throw DomainError("build_assignments: B' must sit inside the trimmed I2*");
        }
    }

    // Proportional anchors, merged in order.
    auto map_to = [&](std::int64_t x) {
        return b + ((x - a) * t_prime + t / 2) / t;
    };
    auto map_from = [&](std::int64_t y) {
        return a + ((y - b) * t + t_prime / 2) / t_prime;
    };
    std::vector<AnchorItem> items;
    for (auto x : bs) items.push_back({x, map_to(x), true});
    for (auto y : bps) items.push_back({map_from(y), y, false});
    std::sort(items.begin(), items.end(), [](const AnchorItem& l, const AnchorItem& r) {
        if (l.pref_from != r.pref_from) return l.pref_from < r.pref_from;
        return l.pref_to < r.pref_to;
    });
    const std::size_t n = items.size();

    // FROM side: B pinned, B' preimages sweep left by h-1.
    // TO side: B' pinned, B images sweep right by h-1.
    auto place_side = [&](bool from_side) -> std::vector<std::int64_t> {
        std::vector<std::int64_t> pos(n);
        Placer pl;
        pl.span = family;
        pl.avoid = from_side ? bs : bps;
        const std::int64_t range_lo = from_side ? a + 1 : b + trim + 1;
        const std::int64_t range_hi = from_side ? a + t : b + t_prime - trim;
        // Sliding direction: from-side slides left (window [v-S+1, v]);
        // to-side slides right (window [v, v+S-1]).
        auto pinned = [&](std::size_t i) { return from_side ? items[i].from_fixed : !items[i].from_fixed; };
        auto pref = [&](std::size_t i) { return from_side ? items[i].pref_from : items[i].pref_to; };
        auto win_lo = [&](std::int64_t v) { return from_side ? v - family + 1 : v; };
        auto win_hi = [&](std::int64_t v) { return from_side ? v : v + family - 1; };
        // Gap needed so order holds for every member of the family.
        auto gap = [&](std::size_t i, std::size_t k) {
            if (from_side) return pinned(i) && !pinned(k) ? family : static_cast<std::int64_t>(1);
            return !pinned(i) && pinned(k) ? family : static_cast<std::int64_t>(1);
        };
        // Backward upper bounds.
        std::vector<std::int64_t> ub(n);
        std::int64_t next_ub = range_hi;
        for (std::size_t ii = n; ii-- > 0;) {
            std::int64_t u = next_ub;
            if (!pinned(ii)) u = std::min(u, range_hi - (from_side ? 0 : family - 1));
            if (pinned(ii) && pref(ii) > u) {
                throw InfeasibleError("build_assignments: pinned anchor exceeds its upper bound");
            }
            ub[ii] = pinned(ii) ? pref(ii) : u;
            next_ub = ub[ii] - gap(ii, ii + 1 < n ? ii + 1 : ii);
            if (ii > 0) next_ub = ub[ii] - gap(ii - 1, ii);
        }
        // Forward placement.
        std::int64_t prev = std::numeric_limits<std::int64_t>::min() / 4;
        bool have_prev = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t lb = range_lo + (from_side ? family - 1 : 0);
            if (pinned(i)) lb = range_lo;
            if (have_prev) lb = std::max(lb, prev + gap(i - 1, i));
            if (pinned(i)) {
                if (pref(i) < lb) {
                    throw InfeasibleError("build_assignments: pinned anchor below its lower bound");
                }
                pos[i] = pref(i);
            } else {
                std::int64_t v = std::max(pref(i), lb);
                // Search upward for a clear sweep window, then downward.
                std::int64_t tries = 0;
                std::int64_t up = v;
                bool ok = false;
                while (up <= ub[i] && tries < 4096) {
                    if (pl.window_clear(win_lo(up), win_hi(up))) {
                        ok = true;
                        break;
                    }
                    auto it = std::lower_bound(pl.avoid.begin(), pl.avoid.end(), win_lo(up));
                    up = from_side ? *it + family : *it + 1;
                    ++tries;
                }
                if (ok) {
                    v = up;
                } else {
                    std::int64_t down = std::min(pref(i), ub[i]);
                    ok = false;
                    tries = 0;
                    while (down >= lb && tries < 4096) {
                        if (pl.window_clear(win_lo(down), win_hi(down))) {
                            ok = true;
                            break;
                        }
                        auto it = std::upper_bound(pl.avoid.begin(), pl.avoid.end(), win_hi(down));
                        --it;
                        down = from_side ? *it - 1 : *it - family;
                        ++tries;
                    }
                    if (!ok) {
                        throw InfeasibleError("build_assignments: no clear sweep window for an anchor");
                    }
                    v = down;
                }
                if (v < lb || v > ub[i]) {
                    throw InfeasibleError("build_assignments: anchor bounds collapsed");
                }
                pos[i] = v;
            }
            prev = pos[i];
            have_prev = true;
        }
        return pos;
    };

    const std::vector<std::int64_t> from_base = place_side(true);
    const std::vector<std::int64_t> to_base = place_side(false);

    std::vector<Assignment> out;
    out.reserve(static_cast<std::size_t>(family));
    for (std::int64_t h = 1; h <= family; ++h) {
        Assignment asg;
        asg.a = a;
        asg.t = t;
        asg.b = b;
        asg.t_prime = t_prime;
        asg.level = j;
        for (std::size_t i = 0; i < n; ++i) {
            const bool is_b = items[i].from_fixed;
            asg.from.push_back(is_b ? from_base[i] : from_base[i] - (h - 1));
            asg.to.push_back(is_b ? to_base[i] + (h - 1) : to_base[i]);
            asg.from_is_marked.push_back(is_b ? 1 : 0);
        }
        const ValidationReport rep = validate_assignment(asg, bs, bps, p);
        if (!rep.ok) {
            throw InfeasibleError("build_assignments: member " + std::to_string(h) +
                                  " fails validation: " + rep.violations.front());
        }
        out.push_back(std::move(asg));
    }
    return out;
}

Assignment select_avoiding(const std::vector<Assignment>& family,
                           const std::vector<std::pair<std::int64_t, std::int64_t>>& forbidden,
                           const Params& p, std::optional<std::int64_t> margin) {
    if (family.empty()) throw DomainError("select_avoiding: empty family");
    if (static_cast<std::int64_t>(forbidden.size()) > p.k0) {
        throw DomainError("select_avoiding: forbidden set exceeds k0");
    }
    std::int64_t dist = 0;
    if (margin) {
        dist = *margin;
    } else {
        const int j = family.front().level;
        std::int64_t tenpow = checked_pow(10, j + 8, "avoidance margin");
        std::int64_t r3 = checked_pow(p.slope_r, 3, "avoidance margin");
        dist = checked_mul(checked_mul(2 * p.k0, r3, "avoidance margin"), tenpow,
                           "avoidance margin");
    }
    for (const auto& asg : family) {
        bool ok = true;
        for (std::size_t i = 0; i < asg.from.size() && ok; ++i) {
            for (const auto& s : forbidden) {
                const std::int64_t dx = std::abs(asg.from[i] - s.first);
                const std::int64_t dy = std::abs(asg.to[i] - s.second);
                if (std::max(dx, dy) < dist) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return asg;
    }
    throw InfeasibleError("select_avoiding: no family member clears the forbidden set");
}

// ---------------------------------------------------------------------------
// Routes.

namespace {

// Monotone polyline through rational points (xn/dn, yn/dn).
struct RationalPoint {
    i128 xn, yn, dn;
};

struct Polyline {
    std::vector<RationalPoint> pts;  // strictly increasing in both coords
};

i128 floordiv(i128 n, i128 d) {
    i128 q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
    return q;
}

// y at integer x, as (num, den) with den > 0.
void line_y_at(const Polyline& pl, std::int64_t x, i128& num, i128& den) {
    for (std::size_t s = 0; s + 1 < pl.pts.size(); ++s) {
        const auto& pa = pl.pts[s];
        const auto& pb = pl.pts[s + 1];
        // segment covers x if xa/da <= x <= xb/db
        if (pa.xn <= static_cast<i128>(x) * pa.dn && static_cast<i128>(x) * pb.dn <= pb.xn) {
            const i128 dxn = pb.xn * pa.dn - pa.xn * pb.dn;  // over da*db
            const i128 dyn = pb.yn * pa.dn - pa.yn * pb.dn;
            num = pa.yn * dxn + (static_cast<i128>(x) * pa.dn - pa.xn) * dyn;
            den = pa.dn * dxn;
            return;
        }
    }
    throw InfeasibleError("route line does not span the requested column");
}

void line_x_at(const Polyline& pl, std::int64_t y, i128& num, i128& den) {
    for (std::size_t s = 0; s + 1 < pl.pts.size(); ++s) {
        const auto& pa = pl.pts[s];
        const auto& pb = pl.pts[s + 1];
        if (pa.yn <= static_cast<i128>(y) * pa.dn && static_cast<i128>(y) * pb.dn <= pb.yn) {
            const i128 dxn = pb.xn * pa.dn - pa.xn * pb.dn;
            const i128 dyn = pb.yn * pa.dn - pa.yn * pb.dn;
            num = pa.xn * dyn + (static_cast<i128>(y) * pa.dn - pa.yn) * dxn;
            den = pa.dn * dyn;
            return;
        }
    }
    throw InfeasibleError("route line does not span the requested row");
}

std::int64_t clamp_port(std::int64_t v, std::int64_t margin, std::int64_t size) {
    if (v < margin) return margin;
    if (v > size - margin) return size - margin;
    return v;
}

struct PortSpec {
    bool is_corner = true;
    std::int64_t col = 1, row = 1;
};

Route route_from_polyline(const Polyline& pl, std::int64_t t, std::int64_t t_prime,
                          const std::vector<std::int64_t>& widths,
                          const std::vector<std::int64_t>& heights, int j, const Params& p,
                          const PortSpec& entry, const PortSpec& exit) {
    const std::int64_t margin = scale(p, j - 1);
    // Crossings of the grid lines.
    std::vector<std::int64_t> col_cross_row(static_cast<std::size_t>(std::max<std::int64_t>(t, 1)), 0);
    std::vector<std::int64_t> col_cross_off(col_cross_row.size(), 0);
    for (std::int64_t i = 1; i <= t - 1; ++i) {
        i128 num, den;
        line_y_at(pl, i, num, den);
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i128 fl = floordiv(num, den);
        std::int64_t row = static_cast<std::int64_t>(fl) + 1;
        row = std::max<std::int64_t>(1, std::min(t_prime, row));
        const i128 frac = num - fl * den;  // in [0, den)
        const std::int64_t nh = heights[static_cast<std::size_t>(row - 1)];
        std::int64_t off = static_cast<std::int64_t>(floordiv(frac * nh, den)) + 1;
        off = clamp_port(off, margin, nh);
        col_cross_row[static_cast<std::size_t>(i - 1)] = row;
        col_cross_off[static_cast<std::size_t>(i - 1)] = off;
    }
    std::vector<std::int64_t> row_cross_col(static_cast<std::size_t>(std::max<std::int64_t>(t_prime, 1)), 0);
    std::vector<std::int64_t> row_cross_off(row_cross_col.size(), 0);
    for (std::int64_t i = 1; i <= t_prime - 1; ++i) {
        i128 num, den;
        line_x_at(pl, i, num, den);
        if (den < 0) {
            num = -num;
            den = -den;
        }
        // col = ceil(num/den); frac in (0,1] relative to col-1
        i128 fl = floordiv(num, den);
        i128 rem = num - fl * den;
        std::int64_t col;
        i128 fracnum;
        if (rem == 0) {
            col = static_cast<std::int64_t>(fl);
            fracnum = den;  // x exactly integer: offset fraction 1
        } else {
            col = static_cast<std::int64_t>(fl) + 1;
            fracnum = rem;
        }
        col = std::max<std::int64_t>(1, std::min(t, col));
        const std::int64_t nw = widths[static_cast<std::size_t>(col - 1)];
        std::int64_t off = static_cast<std::int64_t>(floordiv(fracnum * nw + den - 1, den));  // ceil
        off = clamp_port(off, margin, nw);
        row_cross_col[static_cast<std::size_t>(i - 1)] = col;
        row_cross_off[static_cast<std::size_t>(i - 1)] = off;
    }

    // Walk the staircase.
    Route r;
    r.level = j;
    r.t = t;
    r.t_prime = t_prime;
    r.cell_widths = widths;
    r.cell_heights = heights;
    std::int64_t c = 1, row = 1;
    std::int64_t guard = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> cells{{1, 1}};
    std::vector<int> moves;  // 0 right, 1 up (move leaving cells[k])
    while (!(c == t && row == t_prime)) {
        if (++guard > t + t_prime + 4) {
            throw InfeasibleError("route assembly did not terminate");
        }
        if (c <= t - 1 && col_cross_row[static_cast<std::size_t>(c - 1)] == row) {
            moves.push_back(0);
            ++c;
        } else if (row <= t_prime - 1 && row_cross_col[static_cast<std::size_t>(row - 1)] == c) {
            moves.push_back(1);
            ++row;
        } else {
            throw InfeasibleError("route line produced a disconnected staircase");
        }
        cells.push_back({c, row});
    }

    for (std::size_t k = 0; k < cells.size(); ++k) {
        RoutePoint pt;
        pt.cell_col = cells[k].first;
        pt.cell_row = cells[k].second;
        if (k == 0) {
            pt.in_col = entry.col;
            pt.in_row = entry.row;
        } else if (moves[k - 1] == 0) {
            pt.in_col = 1;
            pt.in_row = col_cross_off[static_cast<std::size_t>(cells[k - 1].first - 1)];
        } else {
            pt.in_col = row_cross_off[static_cast<std::size_t>(cells[k - 1].second - 1)];
            pt.in_row = 1;
        }
        if (k + 1 == cells.size()) {
            pt.out_col = exit.col;
            pt.out_row = exit.row;
        } else if (moves[k] == 0) {
            pt.out_col = r.cell_widths[static_cast<std::size_t>(pt.cell_col - 1)];
            pt.out_row = col_cross_off[static_cast<std::size_t>(pt.cell_col - 1)];
        } else {
            pt.out_col = row_cross_off[static_cast<std::size_t>(pt.cell_row - 1)];
            pt.out_row = r.cell_heights[static_cast<std::size_t>(pt.cell_row - 1)];
        }
        r.points.push_back(pt);
    }
    return r;
}

void check_route_inputs(std::int64_t t, std::int64_t t_prime,
                        const std::vector<std::int64_t>& widths,
                        const std::vector<std::int64_t>& heights, int j, const Params& p) {
    if (j < 1) throw DomainError("route level j must be >= 1");
    if (t < 1 || t_prime < 1) throw DomainError("route grid must be non-empty");
    if (static_cast<std::int64_t>(widths.size()) != t ||
        static_cast<std::int64_t>(heights.size()) != t_prime) {
        throw DomainError("route cell dimension lists must match t, t'");
    }
    const auto [lo, hi] = route_cell_bounds(p, j);
    for (auto v : widths) {
        if (v < lo || v > hi) {
            throw InfeasibleError("cell width outside [" + std::to_string(lo) + "," +
                                  std::to_string(hi) + "]");
        }
    }
    for (auto v : heights) {
        if (v < lo || v > hi) {
            throw InfeasibleError("cell height outside [" + std::to_string(lo) + "," +
                                  std::to_string(hi) + "]");
        }
    }
}

}  // namespace

std::pair<std::int64_t, std::int64_t> route_cell_bounds(const Params& p, int j) {
    const std::int64_t base = scale(p, j - 1);
    const std::int64_t c = std::max<std::int64_t>(1, p.len_exponent() - 4);
    const std::int64_t lo = checked_pow(base, c, "route cell bound");
    return {lo, checked_add(lo, base, "route cell bound")};
}

ValidationReport validate_route(const Route& r, const Params& p) {
    ValidationReport rep;
    if (r.points.empty()) {
        rep.fail("(i) empty route");
        return rep;
    }
    if (static_cast<std::int64_t>(r.cell_widths.size()) != r.t ||
        static_cast<std::int64_t>(r.cell_heights.size()) != r.t_prime) {
        rep.fail("cell dimension lists do not match t, t'");
        return rep;
    }
    const std::int64_t margin = scale(p, r.level - 1);
    if (r.points.front().cell_col != 1 || r.points.front().cell_row != 1) {
        rep.fail("(i) route does not start at (1,1)");
    }
    if (r.points.back().cell_col != r.t || r.points.back().cell_row != r.t_prime) {
        rep.fail("(i) route does not end at (t,t')");
    }
    for (std::size_t k = 0; k + 1 < r.points.size(); ++k) {
        const auto& u = r.points[k];
        const auto& v = r.points[k + 1];
        const std::int64_t dc = v.cell_col - u.cell_col, dr = v.cell_row - u.cell_row;
        if (!((dc == 1 && dr == 0) || (dc == 0 && dr == 1))) {
            rep.fail("(i) cells not an oriented path at step " + std::to_string(k));
        }
        if (!(u.out_col == v.in_col || u.out_row == v.in_row)) {
            rep.fail("(iv) consecutive ports disagree in both coordinates at step " +
                     std::to_string(k));
        }
    }
    for (std::size_t k = 0; k < r.points.size(); ++k) {
        const auto& pt = r.points[k];
        if (pt.cell_col < 1 || pt.cell_col > r.t || pt.cell_row < 1 || pt.cell_row > r.t_prime) {
            rep.fail("(i) cell outside grid at point " + std::to_string(k));
            continue;
        }
        const std::int64_t nw = r.cell_widths[static_cast<std::size_t>(pt.cell_col - 1)];
        const std::int64_t nh = r.cell_heights[static_cast<std::size_t>(pt.cell_row - 1)];
        const bool corner_entry = k == 0 && pt.in_col == 1 && pt.in_row == 1;
        const bool entry_bottom = pt.in_row == 1 && pt.in_col >= margin && pt.in_col <= nw - margin;
        const bool entry_left = pt.in_col == 1 && pt.in_row >= margin && pt.in_row <= nh - margin;
        if (!(corner_entry || entry_bottom || entry_left)) {
            rep.fail("(ii) entry port outside margin windows at point " + std::to_string(k));
        }
        const bool corner_exit =
            k + 1 == r.points.size() && pt.out_col == nw && pt.out_row == nh;
        const bool exit_top = pt.out_row == nh && pt.out_col >= margin && pt.out_col <= nw - margin;
        const bool exit_right = pt.out_col == nw && pt.out_row >= margin && pt.out_row <= nh - margin;
        if (!(corner_exit || exit_top || exit_right)) {
            rep.fail("(ii) exit port outside margin windows at point " + std::to_string(k));
        }
        if (!slope_within_dyadic(pt.out_row - pt.in_row, pt.out_col - pt.in_col, p.slope_r,
                                 r.level + 3)) {
            rep.fail("(iii) port slope outside window at point " + std::to_string(k));
        }
    }
    return rep;
}

Route build_cc_route(std::int64_t t, std::int64_t t_prime,
                     const std::vector<std::int64_t>& cell_widths,
                     const std::vector<std::int64_t>& cell_heights, int j, const Params& p) {
    check_route_inputs(t, t_prime, cell_widths, cell_heights, j, p);
    if (!slope_within_half_exponent(t_prime, t, p.slope_r, j)) {
        throw InfeasibleError("build_cc_route: t'/t outside the slope window");
    }
    Polyline pl;
    pl.pts.push_back({0, 0, 1});
    pl.pts.push_back({static_cast<i128>(t), static_cast<i128>(t_prime), 1});
    PortSpec entry{true, 1, 1};
    PortSpec exit{true, cell_widths.back(), cell_heights.back()};
    return route_from_polyline(pl, t, t_prime, cell_widths, cell_heights, j, p, entry, exit);
}

Route build_cc_route_avoiding(std::int64_t t, std::int64_t t_prime,
                              const std::vector<std::int64_t>& cell_widths,
                              const std::vector<std::int64_t>& cell_heights, int j,
                              const Params& p,
                              const std::vector<std::pair<std::int64_t, std::int64_t>>& forbidden,
                              int attempts, std::uint64_t seed) {
    check_route_inputs(t, t_prime, cell_widths, cell_heights, j, p);
    if (!slope_within_half_exponent(t_prime, t, p.slope_r, j)) {
        throw InfeasibleError("build_cc_route_avoiding: t'/t outside the slope window");
    }
    Xoshiro256ss rng(seed);
    auto hits_forbidden = [&](const Route& r) {
        for (const auto& pt : r.points) {
            for (const auto& f : forbidden) {
                if (pt.cell_col == f.first && pt.cell_row == f.second) return true;
            }
        }
        return false;
    };
    for (int k = 0; k < std::max(1, attempts); ++k) {
        // Midpoint offset in quarter-cell steps of t'/4 range; attempt 0 is
        // the straight diagonal.
        const std::int64_t span = std::max<std::int64_t>(1, t_prime);
        const std::int64_t d4 =
            k == 0 ? 0
                   : static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(2 * span))) -
                         span;  // numerator over denominator 4
        Polyline pl;
        pl.pts.push_back({0, 0, 1});
        if (k > 0) {
            const i128 mid_y = static_cast<i128>(2 * t_prime) + d4;  // over den 4
            if (mid_y <= 0 || mid_y >= static_cast<i128>(4) * t_prime) continue;
            pl.pts.push_back({static_cast<i128>(2) * t, mid_y, 4});
        }
        pl.pts.push_back({static_cast<i128>(t), static_cast<i128>(t_prime), 1});
        PortSpec entry{true, 1, 1};
        PortSpec exit{true, cell_widths.back(), cell_heights.back()};
        Route r;
        try {
            r = route_from_polyline(pl, t, t_prime, cell_widths, cell_heights, j, p, entry, exit);
        } catch (const InfeasibleError&) {
            continue;
        }
        if (hits_forbidden(r)) continue;
        if (!validate_route(r, p).ok) continue;
        return r;
    }
    throw InfeasibleError("build_cc_route_avoiding: no clear route in " +
                          std::to_string(attempts) + " attempts");
}

std::vector<ConnectionRoute> build_connection(ConnectionKind kind, std::int64_t t,
                                              std::int64_t t_prime,
                                              const std::vector<std::int64_t>& cell_widths,
                                              const std::vector<std::int64_t>& cell_heights, int j,
                                              const Params& p,
                                              std::optional<std::int64_t> min_span) {
    check_route_inputs(t, t_prime, cell_widths, cell_heights, j, p);
    std::int64_t threshold;
    if (min_span) {
        threshold = *min_span;
    } else {
        threshold = checked_mul(checked_pow(5, j + 6, "connection threshold"), p.slope_r,
                                "connection threshold");
    }
    if (t < threshold || t_prime < threshold) {
        throw InfeasibleError("build_connection: t, t' below the span threshold " +
                              std::to_string(threshold));
    }
    const std::int64_t margin = scale(p, j - 1);
    const std::int64_t n_first_w = cell_widths.front(), n_first_h = cell_heights.front();
    const std::int64_t n_last_w = cell_widths.back(), n_last_h = cell_heights.back();

    std::vector<PortRef> entries, exits;
    if (kind == ConnectionKind::corner_to_side) {
        entries.push_back({1, 1});
    } else {
        for (std::int64_t o = margin; o <= n_first_w - margin; ++o) entries.push_back({o, 1});
        for (std::int64_t o = margin; o <= n_first_h - margin; ++o) entries.push_back({1, o});
    }
    if (kind == ConnectionKind::side_to_corner) {
        exits.push_back({n_last_w, n_last_h});
    } else {
        for (std::int64_t o = margin; o <= n_last_w - margin; ++o) exits.push_back({o, n_last_h});
        for (std::int64_t o = margin; o <= n_last_h - margin; ++o) exits.push_back({n_last_w, o});
    }

    std::vector<ConnectionRoute> out;
    for (const auto& en : entries) {
        for (const auto& ex : exits) {
            Polyline pl;
            // Continuous start: corner (0,0), bottom port (o/n, 0), left port (0, o/n').
            if (en.col == 1 && en.row == 1 && kind == ConnectionKind::corner_to_side) {
                pl.pts.push_back({0, 0, 1});
            } else if (en.row == 1) {
                pl.pts.push_back({static_cast<i128>(en.col), 0, static_cast<i128>(n_first_w)});
            } else {
                pl.pts.push_back({0, static_cast<i128>(en.row), static_cast<i128>(n_first_h)});
            }
            // Continuous end: corner (t,t'), top port (t-1+o/n, t'), right port (t, t'-1+o/n').
            if (kind == ConnectionKind::side_to_corner) {
                pl.pts.push_back({static_cast<i128>(t), static_cast<i128>(t_prime), 1});
            } else if (ex.row == n_last_h && ex.col != n_last_w) {
                pl.pts.push_back({static_cast<i128>(t - 1) * n_last_w + ex.col,
                                  static_cast<i128>(t_prime) * n_last_w,
                                  static_cast<i128>(n_last_w)});
            } else {
                pl.pts.push_back({static_cast<i128>(t) * n_last_h,
                                  static_cast<i128>(t_prime - 1) * n_last_h + ex.row,
                                  static_cast<i128>(n_last_h)});
            }
            PortSpec entry{en.col == 1 && en.row == 1, en.col, en.row};
            PortSpec exit{ex.col == n_last_w && ex.row == n_last_h, ex.col, ex.row};
            Route r = route_from_polyline(pl, t, t_prime, cell_widths, cell_heights, j, p, entry,
                                          exit);
            const ValidationReport rep = validate_route(r, p);
            if (!rep.ok) {
                throw InfeasibleError("build_connection: route for a required port fails: " +
                                      rep.violations.front());
            }
            out.push_back({en, ex, std::move(r)});
        }
    }
    return out;
}

}  // namespace cperc
