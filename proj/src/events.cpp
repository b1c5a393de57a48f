#include "cperc/events.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cperc/checked.hpp"
#include "cperc/ratio.hpp"

namespace cperc {

std::vector<Chunk> chunks(const Block& b, const Params& p) {
    if (b.level < 1) throw DomainError("chunks: block level must be >= 1");
    const int j = b.level - 1;
    const std::int64_t l_j = scale(p, j);
    const std::int64_t chunk_subs = checked_pow(l_j, p.chunk_exponent(), "chunk size");
    const std::int64_t n_subs = b.sub_count();
    const std::int64_t n = n_subs / chunk_subs;
    if (n < 1) throw InfeasibleError("no full chunk: block has " + std::to_string(n_subs) +
                                     " sub-blocks, chunk needs " + std::to_string(chunk_subs));
    std::vector<Chunk> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t k = 1; k <= n; ++k) {
        Chunk c;
        c.owner = b.role;
        c.index = k;
        c.first_sub = (k - 1) * chunk_subs + 1;
        c.last_sub = (k == n) ? n_subs : k * chunk_subs;
        c.first0 = b.sub_lo0(c.first_sub);
        c.last0 = b.sub_hi0(c.last_sub);
        out.push_back(c);
    }
    return out;
}

EntryExitSets entry_exit_core(std::int64_t n_x, std::int64_t n_y, int j, std::int64_t l_j,
                              std::int64_t slope_r) {
    EntryExitSets out;
    if (n_x <= 2 * l_j || n_y <= 2 * l_j) {
        out.too_few_chunks = true;
        return out;
    }
    const int e = j + 4;
    for (std::int64_t k = l_j; k <= n_x - l_j; ++k) {
        if (slope_within_dyadic(n_y - 1, n_x - k, slope_r, e)) {
            out.entries.push_back({SideTag::bottom, k, j});
        }
        if (slope_within_dyadic(n_y - 1, k - 1, slope_r, e)) {
            out.exits.push_back({SideTag::top, k, j});
        }
    }
    for (std::int64_t k = l_j; k <= n_y - l_j; ++k) {
        if (slope_within_dyadic(n_y - k, n_x - 1, slope_r, e)) {
            out.entries.push_back({SideTag::left, k, j});
        }
        if (slope_within_dyadic(k - 1, n_x - 1, slope_r, e)) {
            out.exits.push_back({SideTag::right, k, j});
        }
    }
    // Pairs need only the index windows plus the pair slope; the slope is
    // the chunk-granularity ratio between entry and exit sites.
    for (std::int64_t k = l_j; k <= n_x - l_j; ++k) {
        for (std::int64_t k2 = l_j; k2 <= n_y - l_j; ++k2) {
            if (slope_within_dyadic(k2 - 1, n_x - k, slope_r, e)) {
                out.pairs.push_back({{SideTag::bottom, k, j}, {SideTag::right, k2, j}});
            }
        }
        for (std::int64_t k2 = l_j; k2 <= n_x - l_j; ++k2) {
            if (slope_within_dyadic(n_y - 1, k2 - k, slope_r, e)) {
                out.pairs.push_back({{SideTag::bottom, k, j}, {SideTag::top, k2, j}});
            }
        }
    }
    for (std::int64_t k = l_j; k <= n_y - l_j; ++k) {
        for (std::int64_t k2 = l_j; k2 <= n_y - l_j; ++k2) {
            if (slope_within_dyadic(k2 - k, n_x - 1, slope_r, e)) {
                out.pairs.push_back({{SideTag::left, k, j}, {SideTag::right, k2, j}});
            }
        }
        for (std::int64_t k2 = l_j; k2 <= n_x - l_j; ++k2) {
            if (slope_within_dyadic(n_y - k, k2 - 1, slope_r, e)) {
                out.pairs.push_back({{SideTag::left, k, j}, {SideTag::top, k2, j}});
            }
        }
    }
    return out;
}

EntryExitSets entry_exit_pairs(const Block& xb, const Block& yb, const Params& p) {
    if (xb.level != yb.level) throw DomainError("entry_exit_pairs: block levels differ");
    const int j = xb.level - 1;
    const std::int64_t l_j = scale(p, j);
    const auto cx = chunks(xb, p);
    const auto cy = chunks(yb, p);
    return entry_exit_core(static_cast<std::int64_t>(cx.size()),
                           static_cast<std::int64_t>(cy.size()), j, l_j, p.slope_r);
}

std::int64_t required_count(double threshold, std::int64_t size) {
    if (size <= 0) return 0;
    return static_cast<std::int64_t>(std::ceil(threshold * static_cast<double>(size)));
}

namespace {

// Forward DP from one boundary source, recording reachability bitsets on
// the window's top row and right column.
void source_boundary(const Sequence& x, const Sequence& y, const Rect& rect, SideTag side,
                     std::int64_t pos, Frontier& top, Frontier& right) {
    const std::int64_t w = rect.width();
    ColumnMasks masks(y, rect);
    std::vector<std::uint64_t> open(masks.words()), cur(masks.words(), 0);
    const std::int64_t c_start = side == SideTag::bottom ? pos : rect.a1;
    bool first = true;
    for (std::int64_t c = c_start; c <= rect.a2; ++c) {
        masks.build(x.at(c), open);
        if (first) {
            cur.assign(masks.words(), 0);
            const std::int64_t seed_row = side == SideTag::bottom ? 0 : pos - rect.b1;
            cur[static_cast<std::size_t>(seed_row >> 6)] |= 1ull << (seed_row & 63);
            first = false;
        }
        frontier_step(open, cur, cur, masks.height());
        const std::int64_t top_bit = masks.height() - 1;
        if ((cur[static_cast<std::size_t>(top_bit >> 6)] >> (top_bit & 63)) & 1u) {
            top.set(c - rect.a1);
        }
    }
    for (std::int64_t r = 0; r < masks.height(); ++r) {
        if ((cur[static_cast<std::size_t>(r >> 6)] >> (r & 63)) & 1u) right.set(r);
    }
    (void)w;
}

struct SourceData {
    std::vector<std::int64_t> pos;  // absolute coordinate on the entry side
    std::vector<Frontier> top;      // per-source top-row sets (width bits)
    std::vector<Frontier> right;    // per-source right-column sets (height bits)
};

SourceData compute_sources(const Sequence& x, const Sequence& y, const Rect& rect, SideTag side,
                           std::vector<std::pair<std::int64_t, std::int64_t>> ranges) {
    std::sort(ranges.begin(), ranges.end());
    SourceData out;
    for (const auto& [lo, hi] : ranges) {
        for (std::int64_t v = lo; v <= hi; ++v) {
            if (!out.pos.empty() && out.pos.back() >= v) continue;
            out.pos.push_back(v);
        }
    }
    out.top.reserve(out.pos.size());
    out.right.reserve(out.pos.size());
    for (std::int64_t v : out.pos) {
        Frontier t(rect.width()), r(rect.height());
        source_boundary(x, y, rect, side, v, t, r);
        out.top.push_back(std::move(t));
        out.right.push_back(std::move(r));
    }
    return out;
}

struct SideStats {
    // Per candidate (nonempty reach on the relevant exit side), in source order.
    std::vector<std::int64_t> pos, lo, hi;
};

SideStats side_stats(const SourceData& src, bool exit_is_top, std::int64_t chunk_lo,
                     std::int64_t chunk_hi, std::int64_t base) {
    SideStats s;
    for (std::size_t i = 0; i < src.pos.size(); ++i) {
        if (src.pos[i] < chunk_lo || src.pos[i] > chunk_hi) continue;
        const Frontier& f = exit_is_top ? src.top[i] : src.right[i];
        std::int64_t lo = -1, hi = -1;
        for (std::int64_t b = 0; b < f.height(); ++b) {
            if (f.test(b)) {
                if (lo < 0) lo = b;
                hi = b;
            }
        }
        if (lo < 0) continue;
        s.pos.push_back(src.pos[i]);
        s.lo.push_back(lo + base);
        s.hi.push_back(hi + base);
    }
    return s;
}

// Union of per-source exit-side sets, with a prefix-count table.
struct UnionSide {
    std::vector<std::uint8_t> member;   // indexed by absolute coord - base
    std::vector<std::int64_t> prefix;   // prefix[i] = count of members < base+i
    std::int64_t base = 0;

    std::int64_t count(std::int64_t lo, std::int64_t hi) const {
        lo = std::max(lo - base, static_cast<std::int64_t>(0));
        hi = std::min(hi - base, static_cast<std::int64_t>(member.size()) - 1);
        if (lo > hi) return 0;
        return prefix[static_cast<std::size_t>(hi + 1)] - prefix[static_cast<std::size_t>(lo)];
    }
};

UnionSide union_side(const SourceData& src, bool exit_is_top, std::int64_t size,
                     std::int64_t base) {
    UnionSide u;
    u.base = base;
    u.member.assign(static_cast<std::size_t>(size), 0);
    for (std::size_t i = 0; i < src.pos.size(); ++i) {
        const Frontier& f = exit_is_top ? src.top[i] : src.right[i];
        for (std::int64_t b = 0; b < f.height(); ++b) {
            if (f.test(b)) u.member[static_cast<std::size_t>(b)] = 1;
        }
    }
    u.prefix.assign(u.member.size() + 1, 0);
    for (std::size_t i = 0; i < u.member.size(); ++i) {
        u.prefix[i + 1] = u.prefix[i] + u.member[i];
    }
    return u;
}

// Exact Condition-S feasibility for one entry/exit chunk pair.
//
// Each candidate's exit-side reach set equals U cap [lo_a, hi_a] where U is
// the union over same-side sources (a consequence of the planarity crossing
// argument), so an intersection over a source set A is
// U cap [max lo, min hi] and it suffices to scan realized (lo, hi)
// threshold pairs.
bool pair_feasible(const SideStats& s, const UnionSide& u, std::int64_t exit_lo,
                   std::int64_t exit_hi, std::int64_t n_a, std::int64_t n_b) {
    if (n_a <= 0 || n_b <= 0) return true;
    const std::int64_t n = static_cast<std::int64_t>(s.pos.size());
    if (n < n_a) return false;
    std::vector<std::size_t> by_lo(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < by_lo.size(); ++i) by_lo[i] = i;
    std::sort(by_lo.begin(), by_lo.end(),
              [&](std::size_t a, std::size_t b) { return s.lo[a] < s.lo[b]; });
    std::vector<std::int64_t> his_sorted;  // hi values of candidates with lo <= current lambda
    his_sorted.reserve(by_lo.size());
    for (std::size_t idx = 0; idx < by_lo.size(); ++idx) {
        const std::int64_t lambda = s.lo[by_lo[idx]];
        his_sorted.insert(std::lower_bound(his_sorted.begin(), his_sorted.end(),
                                           s.hi[by_lo[idx]]),
                          s.hi[by_lo[idx]]);
        if (idx + 1 < by_lo.size() && s.lo[by_lo[idx + 1]] == lambda) continue;
        if (static_cast<std::int64_t>(his_sorted.size()) < n_a) continue;
        // eta candidates: any realized hi with at least n_a candidates
        // having lo <= lambda and hi >= eta.
        for (std::size_t k = 0; k < his_sorted.size(); ++k) {
            const std::int64_t eta = his_sorted[k];
            const std::int64_t avail =
                static_cast<std::int64_t>(his_sorted.size()) -
                (std::lower_bound(his_sorted.begin(), his_sorted.end(), eta) -
                 his_sorted.begin());
            if (avail < n_a) continue;
            if (lambda > eta) continue;
            if (u.count(std::max(lambda, exit_lo), std::min(eta, exit_hi)) >= n_b) return true;
        }
    }
    return false;
}

double density_threshold(int j) { return 0.75 + std::exp2(-(j + 5)); }

}  // namespace

bool cs_connected(const Sequence& x, const Sequence& y, const Block& xb, const Block& yb,
                  const Params& p) {
    const auto ee = entry_exit_pairs(xb, yb, p);
    const int j = xb.level - 1;
    const Rect rect{xb.lo0, xb.hi0, yb.lo0, yb.hi0};
    check_rect(x, y, rect);
    if (ee.exits.empty()) return true;
    const auto cx = chunks(xb, p);
    const auto cy = chunks(yb, p);
    Frontier top(rect.width()), right(rect.height());
    source_boundary(x, y, rect, SideTag::bottom, rect.a1, top, right);
    const double tau = density_threshold(j);
    for (const auto& e : ee.exits) {
        if (e.side == SideTag::top) {
            const Chunk& c = cx[static_cast<std::size_t>(e.chunk_index - 1)];
            const std::int64_t got = top.count_range(c.first0 - rect.a1, c.last0 - rect.a1);
            if (got < required_count(tau, c.size0())) return false;
        } else {
            const Chunk& c = cy[static_cast<std::size_t>(e.chunk_index - 1)];
            const std::int64_t got = right.count_range(c.first0 - rect.b1, c.last0 - rect.b1);
            if (got < required_count(tau, c.size0())) return false;
        }
    }
    return true;
}

bool sc_connected(const Sequence& x, const Sequence& y, const Block& xb, const Block& yb,
                  const Params& p) {
    const auto ee = entry_exit_pairs(xb, yb, p);
    const int j = xb.level - 1;
    const Rect rect{xb.lo0, xb.hi0, yb.lo0, yb.hi0};
    check_rect(x, y, rect);
    if (ee.entries.empty()) return true;
    const auto cx = chunks(xb, p);
    const auto cy = chunks(yb, p);
    const BackwardBoundary back = backward_reach(x, y, rect);
    const double tau = density_threshold(j);
    for (const auto& e : ee.entries) {
        if (e.side == SideTag::bottom) {
            const Chunk& c = cx[static_cast<std::size_t>(e.chunk_index - 1)];
            const std::int64_t got =
                back.bottom_row.count_range(c.first0 - rect.a1, c.last0 - rect.a1);
            if (got < required_count(tau, c.size0())) return false;
        } else {
            const Chunk& c = cy[static_cast<std::size_t>(e.chunk_index - 1)];
            const std::int64_t got =
                back.left_col.count_range(c.first0 - rect.b1, c.last0 - rect.b1);
            if (got < required_count(tau, c.size0())) return false;
        }
    }
    return true;
}

bool ss_connected(const Sequence& x, const Sequence& y, const Block& xb, const Block& yb,
                  const Params& p) {
    const auto ee = entry_exit_pairs(xb, yb, p);
    if (ee.pairs.empty()) return true;
    const int j = xb.level - 1;
    const Rect rect{xb.lo0, xb.hi0, yb.lo0, yb.hi0};
    check_rect(x, y, rect);
    const auto cx = chunks(xb, p);
    const auto cy = chunks(yb, p);
    const double tau = density_threshold(j);

    std::vector<std::pair<std::int64_t, std::int64_t>> bottom_ranges, left_ranges;
    for (const auto& [e1, e2] : ee.pairs) {
        if (e1.side == SideTag::bottom) {
            const Chunk& c = cx[static_cast<std::size_t>(e1.chunk_index - 1)];
            bottom_ranges.push_back({c.first0, c.last0});
        } else {
            const Chunk& c = cy[static_cast<std::size_t>(e1.chunk_index - 1)];
            left_ranges.push_back({c.first0, c.last0});
        }
    }
    const SourceData bottom = compute_sources(x, y, rect, SideTag::bottom, bottom_ranges);
    const SourceData left = compute_sources(x, y, rect, SideTag::left, left_ranges);
    const UnionSide u_bt = union_side(bottom, true, rect.width(), rect.a1);
    const UnionSide u_br = union_side(bottom, false, rect.height(), rect.b1);
    const UnionSide u_lt = union_side(left, true, rect.width(), rect.a1);
    const UnionSide u_lr = union_side(left, false, rect.height(), rect.b1);

    for (const auto& [e1, e2] : ee.pairs) {
        const bool from_bottom = e1.side == SideTag::bottom;
        const bool to_top = e2.side == SideTag::top;
        const Chunk& ec = from_bottom ? cx[static_cast<std::size_t>(e1.chunk_index - 1)]
                                      : cy[static_cast<std::size_t>(e1.chunk_index - 1)];
        const Chunk& xc = to_top ? cx[static_cast<std::size_t>(e2.chunk_index - 1)]
                                 : cy[static_cast<std::size_t>(e2.chunk_index - 1)];
        const SourceData& src = from_bottom ? bottom : left;
        const UnionSide& u = from_bottom ? (to_top ? u_bt : u_br) : (to_top ? u_lt : u_lr);
        const std::int64_t base = to_top ? rect.a1 : rect.b1;
        const SideStats stats = side_stats(src, to_top, ec.first0, ec.last0, base);
        if (!pair_feasible(stats, u, xc.first0, xc.last0, required_count(tau, ec.size0()),
                           required_count(tau, xc.size0()))) {
            return false;
        }
    }
    return true;
}

AxisSegment make_segment(const Block& b, std::int64_t sub_lo, std::int64_t sub_hi) {
    if (sub_lo < 1 || sub_hi > b.sub_count() || sub_lo > sub_hi) {
        throw BoundsError("make_segment: sub-block range out of block");
    }
    AxisSegment s;
    s.level = b.level - 1;
    s.lo = b.sub_lo0(sub_lo);
    s.hi = b.sub_hi0(sub_hi);
    s.head_lo = b.sub_lo0(sub_lo);
    s.head_hi = b.sub_hi0(sub_lo);
    s.tail_lo = b.sub_lo0(sub_hi);
    s.tail_hi = b.sub_hi0(sub_hi);
    return s;
}

namespace {

// Candidate statistics for the four-set ss* selection, bottom sources.
struct StarSideStats {
    std::vector<std::int64_t> pos;
    std::vector<std::int64_t> lo_stair, hi_stair;  // staircase relation (crossing-forced)
    std::vector<std::int64_t> lo_anti, hi_anti;    // anti-staircase relation
};

// For bottom sources: staircase = right side, anti = top side.
// For left sources: staircase = top side, anti = right side.
StarSideStats star_stats(const SourceData& src, bool sources_on_bottom, std::int64_t span_lo,
                         std::int64_t span_hi, std::int64_t top_base, std::int64_t right_base,
                         bool need_stair, bool need_anti) {
    StarSideStats s;
    for (std::size_t i = 0; i < src.pos.size(); ++i) {
        if (src.pos[i] < span_lo || src.pos[i] > span_hi) continue;
        const Frontier& stair_f = sources_on_bottom ? src.right[i] : src.top[i];
        const Frontier& anti_f = sources_on_bottom ? src.top[i] : src.right[i];
        const std::int64_t stair_base = sources_on_bottom ? right_base : top_base;
        const std::int64_t anti_base = sources_on_bottom ? top_base : right_base;
        std::int64_t lo_s = -1, hi_s = -1, lo_a = -1, hi_a = -1;
        for (std::int64_t b = 0; b < stair_f.height(); ++b) {
            if (stair_f.test(b)) {
                if (lo_s < 0) lo_s = b;
                hi_s = b;
            }
        }
        for (std::int64_t b = 0; b < anti_f.height(); ++b) {
            if (anti_f.test(b)) {
                if (lo_a < 0) lo_a = b;
                hi_a = b;
            }
        }
        if (need_stair && lo_s < 0) continue;
        if (need_anti && lo_a < 0) continue;
        s.pos.push_back(src.pos[i]);
        s.lo_stair.push_back(lo_s < 0 ? 0 : lo_s + stair_base);
        s.hi_stair.push_back(hi_s < 0 ? -1 : hi_s + stair_base);
        s.lo_anti.push_back(lo_a < 0 ? 0 : lo_a + anti_base);
        s.hi_anti.push_back(hi_a < 0 ? -1 : hi_a + anti_base);
    }
    return s;
}

struct WindowOption {
    // Intersection windows this source-set choice imposes on the two exit sides.
    std::int64_t stair_lo, stair_hi;  // window on the staircase side
    std::int64_t anti_lo, anti_hi;    // window on the anti side
};

// Enumerate source-set options of size n_src: extremes fix three of the four
// interval bounds by monotonicity; the interior picks the n-2 smallest
// staircase lows.
std::vector<WindowOption> enumerate_options(const StarSideStats& s, std::int64_t n_src,
                                            bool need_stair, bool need_anti) {
    std::vector<WindowOption> opts;
    const std::int64_t n = static_cast<std::int64_t>(s.pos.size());
    if (n_src <= 0) {
        opts.push_back({std::numeric_limits<std::int64_t>::min() / 4,
                        std::numeric_limits<std::int64_t>::max() / 4,
                        std::numeric_limits<std::int64_t>::min() / 4,
                        std::numeric_limits<std::int64_t>::max() / 4});
        return opts;
    }
    if (n < n_src) return opts;
    for (std::int64_t i_min = 0; i_min < n; ++i_min) {
        for (std::int64_t i_max = i_min + (n_src > 1 ? 1 : 0); i_max < n; ++i_max) {
            if (n_src == 1 && i_max != i_min) break;
            const std::int64_t interior = std::max<std::int64_t>(0, i_max - i_min - 1);
            const std::int64_t need_interior = n_src - (i_max == i_min ? 1 : 2);
            if (interior < need_interior) continue;
            std::int64_t lambda_stair =
                std::max(s.lo_stair[static_cast<std::size_t>(i_min)],
                         s.lo_stair[static_cast<std::size_t>(i_max)]);
            if (need_interior > 0) {
                std::vector<std::int64_t> lows;
                lows.reserve(static_cast<std::size_t>(interior));
                for (std::int64_t t = i_min + 1; t < i_max; ++t) {
                    lows.push_back(s.lo_stair[static_cast<std::size_t>(t)]);
                }
                std::nth_element(lows.begin(), lows.begin() + (need_interior - 1), lows.end());
                lambda_stair = std::max(lambda_stair, lows[static_cast<std::size_t>(need_interior - 1)]);
            }
            WindowOption w;
            w.stair_lo = need_stair ? lambda_stair : std::numeric_limits<std::int64_t>::min() / 4;
            w.stair_hi = need_stair ? s.hi_stair[static_cast<std::size_t>(i_max)]
                                    : std::numeric_limits<std::int64_t>::max() / 4;
            w.anti_lo = need_anti ? s.lo_anti[static_cast<std::size_t>(i_max)]
                                  : std::numeric_limits<std::int64_t>::min() / 4;
            w.anti_hi = need_anti ? s.hi_anti[static_cast<std::size_t>(i_min)]
                                  : std::numeric_limits<std::int64_t>::max() / 4;
            opts.push_back(w);
        }
    }
    return opts;
}

struct JointSide {
    std::vector<std::uint8_t> member;  // union membership AND of both entry sides
    std::vector<std::int64_t> prefix;
    std::int64_t base = 0;
    std::int64_t count(std::int64_t lo, std::int64_t hi) const {
        lo = std::max(lo - base, static_cast<std::int64_t>(0));
        hi = std::min(hi - base, static_cast<std::int64_t>(member.size()) - 1);
        if (lo > hi) return 0;
        return prefix[static_cast<std::size_t>(hi + 1)] - prefix[static_cast<std::size_t>(lo)];
    }
};

JointSide joint_side(const UnionSide& a, const UnionSide& b, bool use_a, bool use_b) {
    JointSide j;
    const std::size_t n = use_a ? a.member.size() : b.member.size();
    j.base = use_a ? a.base : b.base;
    j.member.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (use_a && !a.member[i]) j.member[i] = 0;
        if (use_b && !b.member[i]) j.member[i] = 0;
    }
    j.prefix.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) j.prefix[i + 1] = j.prefix[i] + j.member[i];
    return j;
}

}  // namespace

StarVerdicts starred_events(const Sequence& x, const Sequence& y, const AxisSegment& xs,
                            const AxisSegment& ys, const Params& p) {
    (void)p;  // thresholds depend only on the level
    if (xs.level != ys.level) throw DomainError("starred_events: segment levels differ");
    const int j = xs.level;
    const Rect rect{xs.lo, xs.hi, ys.lo, ys.hi};
    check_rect(x, y, rect);
    const double tau = 0.75 + std::exp2(-(j + 3.5));
    StarVerdicts out;

    // cs*: forward densities on the far boundary portions of the last
    // sub-blocks.
    {
        Frontier top(rect.width()), right(rect.height());
        source_boundary(x, y, rect, SideTag::bottom, rect.a1, top, right);
        const std::int64_t need_right = required_count(tau, ys.tail_hi - ys.tail_lo);
        const std::int64_t need_top = required_count(tau, xs.tail_hi - xs.tail_lo);
        out.cs_star = right.count_range(ys.tail_lo - rect.b1, ys.tail_hi - rect.b1) >= need_right &&
                      top.count_range(xs.tail_lo - rect.a1, xs.tail_hi - rect.a1) >= need_top;
    }
    // sc*: backward densities on the near boundary portions of the first
    // sub-blocks.
    {
        const BackwardBoundary back = backward_reach(x, y, rect);
        const std::int64_t need_bottom = required_count(tau, xs.head_hi - xs.head_lo);
        const std::int64_t need_left = required_count(tau, ys.head_hi - ys.head_lo);
        out.sc_star =
            back.bottom_row.count_range(xs.head_lo - rect.a1, xs.head_hi - rect.a1) >= need_bottom &&
            back.left_col.count_range(ys.head_lo - rect.b1, ys.head_hi - rect.b1) >= need_left;
    }
    // ss*: witness sets A (bottom of first X sub-block), B (left of first Y
    // sub-block), A' (top of last X sub-block), B' (right of last Y
    // sub-block), all-pairs connected entry -> exit.
    {
        const std::int64_t n_a = required_count(tau, xs.head_hi - xs.head_lo);
        const std::int64_t n_b = required_count(tau, ys.head_hi - ys.head_lo);
        const std::int64_t n_ap = required_count(tau, xs.tail_hi - xs.tail_lo);
        const std::int64_t n_bp = required_count(tau, ys.tail_hi - ys.tail_lo);
        const SourceData bottom =
            compute_sources(x, y, rect, SideTag::bottom, {{xs.head_lo, xs.head_hi}});
        const SourceData left =
            compute_sources(x, y, rect, SideTag::left, {{ys.head_lo, ys.head_hi}});
        const UnionSide u_bt = union_side(bottom, true, rect.width(), rect.a1);
        const UnionSide u_br = union_side(bottom, false, rect.height(), rect.b1);
        const UnionSide u_lt = union_side(left, true, rect.width(), rect.a1);
        const UnionSide u_lr = union_side(left, false, rect.height(), rect.b1);
        const bool need_right_side = n_bp > 0;
        const bool need_top_side = n_ap > 0;

        const StarSideStats sb = star_stats(bottom, true, xs.head_lo, xs.head_hi, rect.a1,
                                            rect.b1, need_right_side, need_top_side);
        const StarSideStats sl = star_stats(left, false, ys.head_lo, ys.head_hi, rect.a1,
                                            rect.b1, need_top_side, need_right_side);
        const auto opt_b = enumerate_options(sb, n_a, need_right_side, need_top_side);
        const auto opt_l = enumerate_options(sl, n_b, need_top_side, need_right_side);
        const JointSide top_join = joint_side(u_bt, u_lt, n_a > 0, n_b > 0);
        const JointSide right_join = joint_side(u_br, u_lr, n_a > 0, n_b > 0);

        bool ok = false;
        for (const auto& wb : opt_b) {
            if (ok) break;
            for (const auto& wl : opt_l) {
                // bottom: stair = right, anti = top; left: stair = top, anti = right
                const std::int64_t r_lo = std::max({wb.stair_lo, wl.anti_lo, ys.tail_lo});
                const std::int64_t r_hi = std::min({wb.stair_hi, wl.anti_hi, ys.tail_hi});
                const std::int64_t t_lo = std::max({wb.anti_lo, wl.stair_lo, xs.tail_lo});
                const std::int64_t t_hi = std::min({wb.anti_hi, wl.stair_hi, xs.tail_hi});
                if (need_right_side && right_join.count(r_lo, r_hi) < n_bp) continue;
                if (need_top_side && top_join.count(t_lo, t_hi) < n_ap) continue;
                ok = true;
                break;
            }
        }
        out.ss_star = ok;
    }
    return out;
}

namespace testing {

bool condition_s_oracle(const Sequence& x, const Sequence& y, const Rect& rect,
                        SideTag entry_side, std::int64_t e_lo, std::int64_t e_hi,
                        SideTag exit_side, std::int64_t x_lo, std::int64_t x_hi,
                        std::int64_t n_a, std::int64_t n_b) {
    if (n_a <= 0 || n_b <= 0) return true;
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges{{e_lo, e_hi}};
    const SourceData src = compute_sources(x, y, rect, entry_side, ranges);
    const bool to_top = exit_side == SideTag::top;
    const std::int64_t base = to_top ? rect.a1 : rect.b1;
    // Per-source membership over the exit chunk.
    std::vector<std::vector<std::uint8_t>> sets;
    for (std::size_t i = 0; i < src.pos.size(); ++i) {
        const Frontier& f = to_top ? src.top[i] : src.right[i];
        std::vector<std::uint8_t> row;
        bool nonempty = false;
        for (std::int64_t v = x_lo; v <= x_hi; ++v) {
            const bool m = f.test(v - base);
            row.push_back(m ? 1 : 0);
            nonempty = nonempty || m;
        }
        if (nonempty) sets.push_back(std::move(row));
    }
    const std::int64_t n_cand = static_cast<std::int64_t>(sets.size());
    if (n_cand < n_a) return false;
    // All subsets of size n_a.
    std::vector<std::int64_t> pick(static_cast<std::size_t>(n_a));
    for (std::int64_t i = 0; i < n_a; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
        std::vector<std::uint8_t> inter(sets[0].size(), 1);
        for (std::int64_t i : pick) {
            for (std::size_t v = 0; v < inter.size(); ++v) {
                inter[v] = inter[v] && sets[static_cast<std::size_t>(i)][v];
            }
        }
        std::int64_t cnt = 0;
        for (auto b : inter) cnt += b;
        if (cnt >= n_b) return true;
        // next combination
        std::int64_t k = n_a - 1;
        while (k >= 0 && pick[static_cast<std::size_t>(k)] == n_cand - n_a + k) --k;
        if (k < 0) break;
        ++pick[static_cast<std::size_t>(k)];
        for (std::int64_t i = k + 1; i < n_a; ++i) {
            pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return false;
}

}  // namespace testing

}  // namespace cperc
