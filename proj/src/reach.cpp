#include "cperc/reach.hpp"

#include <algorithm>
#include <bit>

namespace cperc {

void check_rect(const Sequence& x, const Sequence& y, const Rect& r) {
    if (r.a1 > r.a2 || r.b1 > r.b2) throw BoundsError("rect: empty window");
    if (r.a1 < 1 || r.a2 > x.size()) throw BoundsError("rect: column range outside x sequence");
    if (r.b1 < 1 || r.b2 > y.size()) throw BoundsError("rect: row range outside y sequence");
}

std::int64_t Frontier::highest() const {
    for (std::int64_t w = static_cast<std::int64_t>(words_.size()) - 1; w >= 0; --w) {
        const std::uint64_t v = words_[static_cast<std::size_t>(w)];
        if (v) return w * 64 + (63 - std::countl_zero(v));
    }
    return -1;
}

std::int64_t Frontier::count_range(std::int64_t lo, std::int64_t hi) const {
    if (lo < 0) lo = 0;
    if (hi >= height_) hi = height_ - 1;
    if (lo > hi) return 0;
    std::int64_t total = 0;
    const std::int64_t w_lo = lo >> 6, w_hi = hi >> 6;
    for (std::int64_t w = w_lo; w <= w_hi; ++w) {
        std::uint64_t v = words_[static_cast<std::size_t>(w)];
        if (w == w_lo) v &= ~0ull << (lo & 63);
        if (w == w_hi) {
            const int top = hi & 63;
            if (top < 63) v &= (1ull << (top + 1)) - 1;
        }
        total += std::popcount(v);
    }
    return total;
}

namespace {

// Per-run upward fill: R = (((O + S) ^ O) & O) | S for seeds S subset of O,
// with the addition carry chained across words.
void fill_up(const std::vector<std::uint64_t>& open, std::vector<std::uint64_t>& seeds,
             std::int64_t height) {
    const std::size_t nwords = open.size();
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < nwords; ++w) {
        const std::uint64_t o = open[w];
        const std::uint64_t s = seeds[w] & o;
        const std::uint64_t t1 = o + s;
        const std::uint64_t c1 = t1 < o ? 1u : 0u;
        const std::uint64_t t2 = t1 + carry;
        const std::uint64_t c2 = t2 < t1 ? 1u : 0u;
        carry = c1 | c2;
        seeds[w] = (((t2 ^ o) & o) | s);
    }
    const int tail = static_cast<int>(height & 63);
    if (tail != 0) seeds.back() &= (1ull << tail) - 1;
}

}  // namespace

ColumnMasks::ColumnMasks(const Sequence& y, const Rect& r)
    : height_(r.height()), nwords_(static_cast<std::size_t>((height_ + 63) / 64)) {
    rows_.resize(static_cast<std::size_t>(height_));
    for (std::int64_t i = 0; i < height_; ++i) {
        rows_[static_cast<std::size_t>(i)] = y.at(r.b1 + i);
    }
}

void ColumnMasks::build(std::uint32_t x_symbol, std::vector<std::uint64_t>& mask) const {
    mask.assign(nwords_, 0);
    for (std::int64_t i = 0; i < height_; ++i) {
        if (rows_[static_cast<std::size_t>(i)] != x_symbol) {
            mask[static_cast<std::size_t>(i >> 6)] |= 1ull << (i & 63);
        }
    }
}

void frontier_step(const std::vector<std::uint64_t>& open_mask,
                   const std::vector<std::uint64_t>& seeds_from_left,
                   std::vector<std::uint64_t>& out, std::int64_t height) {
    out = seeds_from_left;
    fill_up(open_mask, out, height);
}

ReachSet::ReachSet(Rect rect, std::vector<std::vector<std::uint64_t>> cols)
    : rect_(rect), cols_(std::move(cols)) {}

bool ReachSet::marked(Site s) const {
    if (s.col < rect_.a1 || s.col > rect_.a2 || s.row < rect_.b1 || s.row > rect_.b2) {
        throw BoundsError("ReachSet::marked: site outside rectangle");
    }
    const std::int64_t c = s.col - rect_.a1;
    const std::int64_t r = s.row - rect_.b1;
    return (cols_[static_cast<std::size_t>(c)][static_cast<std::size_t>(r >> 6)] >> (r & 63)) & 1u;
}

bool ReachSet::top_row_marked(std::int64_t col) const {
    return marked({col, rect_.b2});
}

bool ReachSet::right_col_marked(std::int64_t row) const {
    return marked({rect_.a2, row});
}

std::int64_t ReachSet::count_top_row(std::int64_t c_lo, std::int64_t c_hi) const {
    std::int64_t total = 0;
    for (std::int64_t c = std::max(c_lo, rect_.a1); c <= std::min(c_hi, rect_.a2); ++c) {
        total += top_row_marked(c) ? 1 : 0;
    }
    return total;
}

std::int64_t ReachSet::count_right_col(std::int64_t r_lo, std::int64_t r_hi) const {
    const auto& words = cols_.back();
    std::int64_t total = 0;
    const std::int64_t lo = std::max(r_lo, rect_.b1) - rect_.b1;
    const std::int64_t hi = std::min(r_hi, rect_.b2) - rect_.b1;
    for (std::int64_t r = lo; r <= hi; ++r) {
        total += (words[static_cast<std::size_t>(r >> 6)] >> (r & 63)) & 1u;
    }
    return total;
}

const std::vector<std::uint64_t>& ReachSet::column_words(std::int64_t col) const {
    if (col < rect_.a1 || col > rect_.a2) throw BoundsError("ReachSet::column_words: bad column");
    return cols_[static_cast<std::size_t>(col - rect_.a1)];
}

ReachSet reach(const Sequence& x, const Sequence& y, const Rect& rect) {
    check_rect(x, y, rect);
    const std::int64_t w = rect.width();
    ColumnMasks masks(y, rect);
    std::vector<std::vector<std::uint64_t>> cols(static_cast<std::size_t>(w));
    std::vector<std::uint64_t> open(masks.words()), cur(masks.words(), 0);
    for (std::int64_t c = 0; c < w; ++c) {
        masks.build(x.at(rect.a1 + c), open);
        if (c == 0) {
            cur.assign(masks.words(), 0);
            cur[0] = 1;  // origin seed; fill_up masks it against openness
        }
        fill_up(open, cur, masks.height());
        cols[static_cast<std::size_t>(c)] = cur;
    }
    return ReachSet(rect, std::move(cols));
}

bool cc_connected(const Sequence& x, const Sequence& y, const Rect& rect) {
    check_rect(x, y, rect);
    const std::int64_t w = rect.width();
    ColumnMasks masks(y, rect);
    std::vector<std::uint64_t> open(masks.words()), cur(masks.words(), 0);
    bool alive = true;
    for (std::int64_t c = 0; c < w && alive; ++c) {
        masks.build(x.at(rect.a1 + c), open);
        if (c == 0) {
            cur.assign(masks.words(), 0);
            cur[0] = 1;
        }
        fill_up(open, cur, masks.height());
        alive = false;
        for (auto v : cur) {
            if (v) {
                alive = true;
                break;
            }
        }
    }
    if (!alive) return false;
    const std::int64_t top = masks.height() - 1;
    return (cur[static_cast<std::size_t>(top >> 6)] >> (top & 63)) & 1u;
}

BackwardBoundary backward_reach(const Sequence& x, const Sequence& y, const Rect& rect) {
    check_rect(x, y, rect);
    // Reverse both axes; forward reachability in primed coordinates equals
    // can-reach-corner in the original ones.
    const std::int64_t w = rect.width(), h = rect.height();
    const std::size_t nwords = static_cast<std::size_t>((h + 63) / 64);
    std::vector<std::uint32_t> rows_rev(static_cast<std::size_t>(h));
    for (std::int64_t i = 0; i < h; ++i) {
        rows_rev[static_cast<std::size_t>(i)] = y.at(rect.b2 - i);
    }
    std::vector<std::uint64_t> open(nwords), cur(nwords, 0);
    BackwardBoundary out{rect, Frontier(w), Frontier(h)};
    for (std::int64_t c = 0; c < w; ++c) {
        const std::uint32_t v = x.at(rect.a2 - c);
        open.assign(nwords, 0);
        for (std::int64_t i = 0; i < h; ++i) {
            if (rows_rev[static_cast<std::size_t>(i)] != v) {
                open[static_cast<std::size_t>(i >> 6)] |= 1ull << (i & 63);
            }
        }
        if (c == 0) {
            cur.assign(nwords, 0);
            cur[0] = 1;
        }
        fill_up(open, cur, h);
        // Left column of the original rect is the last primed column.
        if (c == w - 1) {
            for (std::int64_t i = 0; i < h; ++i) {
                if ((cur[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u) {
                    out.left_col.set(h - 1 - i);
                }
            }
        }
        // Bottom row of the original rect is the top primed row.
        const std::int64_t top = h - 1;
        if ((cur[static_cast<std::size_t>(top >> 6)] >> (top & 63)) & 1u) {
            out.bottom_row.set(w - 1 - c);
        }
    }
    return out;
}

std::int64_t survival_depth(const Sequence& x, const Sequence& y, std::int64_t n_max) {
    if (n_max < 1) return 0;
    if (n_max == 1) {
        // Depth capped below the first diagonal: 1 iff the origin is open.
        return x.at(1) != y.at(1) ? 1 : 0;
    }
    const std::int64_t span = n_max - 1;
    if (x.size() < span || y.size() < span) {
        throw BoundsError("survival_depth: sequences shorter than n_max-1");
    }
    const Rect rect{1, span, 1, span};
    ColumnMasks masks(y, rect);
    std::vector<std::uint64_t> open(masks.words()), cur(masks.words(), 0);
    std::int64_t best = 0;
    for (std::int64_t c = 0; c < span; ++c) {
        masks.build(x.at(1 + c), open);
        if (c == 0) {
            cur.assign(masks.words(), 0);
            cur[0] = 1;
        }
        fill_up(open, cur, masks.height());
        std::int64_t hi = -1;
        for (std::int64_t w2 = static_cast<std::int64_t>(masks.words()) - 1; w2 >= 0; --w2) {
            const std::uint64_t v = cur[static_cast<std::size_t>(w2)];
            if (v) {
                hi = w2 * 64 + (63 - std::countl_zero(v));
                break;
            }
        }
        if (hi < 0) break;  // cluster died
        best = std::max(best, (c + 1) + (hi + 1));
        if (best >= n_max) return n_max;
    }
    return std::min(best, n_max);
}

bool non_oriented_reaches(const Sequence& x, const Sequence& y, std::int64_t n) {
    if (n < 1) throw DomainError("non_oriented_reaches: n must be >= 1");
    if (x.size() < n || y.size() < n) {
        throw BoundsError("non_oriented_reaches: sequences shorter than n");
    }
    if (x.at(1) == y.at(1)) return false;
    if (n == 1) return true;
    std::vector<std::uint64_t> visited(static_cast<std::size_t>((n * n + 63) / 64), 0);
    auto idx = [n](std::int64_t c, std::int64_t r) { return (c - 1) * n + (r - 1); };
    auto seen = [&](std::int64_t c, std::int64_t r) {
        const std::int64_t i = idx(c, r);
        return (visited[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u;
    };
    auto mark = [&](std::int64_t c, std::int64_t r) {
        const std::int64_t i = idx(c, r);
        visited[static_cast<std::size_t>(i >> 6)] |= 1ull << (i & 63);
    };
    std::vector<std::pair<std::int64_t, std::int64_t>> stack;
    stack.reserve(1024);
    stack.emplace_back(1, 1);
    mark(1, 1);
    while (!stack.empty()) {
        const auto [c, r] = stack.back();
        stack.pop_back();
        if (c == n || r == n) return true;
        // Far-side neighbours pushed last so the search dives outward.
        const std::int64_t cand[4][2] = {{c - 1, r}, {c, r - 1}, {c, r + 1}, {c + 1, r}};
        for (const auto& cr : cand) {
            const std::int64_t cc = cr[0], rr = cr[1];
            if (cc < 1 || rr < 1 || cc > n || rr > n) continue;
            if (seen(cc, rr)) continue;
            if (x.at(cc) == y.at(rr)) continue;
            mark(cc, rr);
            stack.emplace_back(cc, rr);
        }
    }
    return false;
}

std::vector<Site> extract_path(const ReachSet& reached, Site target) {
    if (!reached.marked(target)) {
        throw DomainError("extract_path: target not reachable");
    }
    const Rect& rect = reached.rect();
    std::vector<Site> path;
    Site s = target;
    while (!(s.col == rect.a1 && s.row == rect.b1)) {
        path.push_back(s);
        if (s.col > rect.a1 && reached.marked({s.col - 1, s.row})) {
            s.col -= 1;
        } else if (s.row > rect.b1 && reached.marked({s.col, s.row - 1})) {
            s.row -= 1;
        } else {
            throw DomainError("extract_path: marked site without marked predecessor");
        }
    }
    path.push_back(s);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace cperc
