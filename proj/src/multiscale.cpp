#include "cperc/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cperc/checked.hpp"
#include "cperc/events.hpp"
#include "cperc/montecarlo.hpp"
#include "cperc/reach.hpp"
#include "cperc/rng.hpp"

namespace cperc {

namespace {

// Residues of the level-1 stopping pattern: the block ends at a symbol with
// residue r_end whose successor has residue r_next.
void stopping_residues(Role role, std::uint32_t& r_end, std::uint32_t& r_next) {
    if (role == Role::x_walk) {
        r_end = 1;
        r_next = 0;
    } else {
        r_end = 3;
        r_next = 2;
    }
}

}  // namespace

BlockPartition build_level1(const Sequence& seq, const Params& p) {
    if (seq.alphabet % 4 != 0) {
        throw DomainError("build_level1: alphabet must be a multiple of 4");
    }
    const std::int64_t l1 = scale(p, 1);
    std::uint32_t r_end, r_next;
    stopping_residues(seq.role, r_end, r_next);

    BlockPartition part;
    part.level = 1;
    part.role = seq.role;
    std::int64_t start = 1;
    while (start <= seq.size()) {
        std::int64_t len = -1;
        for (std::int64_t t = l1; start + t <= seq.size(); ++t) {
            if (seq.at(start + t - 1) % 4 == r_end && seq.at(start + t) % 4 == r_next) {
                len = t;
                break;
            }
        }
        if (len < 0) {
            part.incomplete = true;
            break;
        }
        Block b;
        b.level = 1;
        b.role = seq.role;
        b.lo0 = start;
        b.hi0 = start + len - 1;
        b.sub_ends.resize(static_cast<std::size_t>(len));
        for (std::int64_t i = 0; i < len; ++i) b.sub_ends[static_cast<std::size_t>(i)] = start + i;
        b.excess = len - l1;
        b.law = part.blocks.empty() ? Block::Law::first_block : Block::Law::mu;
        part.blocks.push_back(std::move(b));
        start += len;
        part.consumed0 = start - 1;
    }
    return part;
}

BlockPartition build_next_level(const BlockPartition& sub, const std::vector<std::uint8_t>& good,
                                const Params& p, std::uint64_t seed) {
    if (good.size() < sub.blocks.size()) {
        throw DomainError("build_next_level: goodness verdicts missing for some sub-blocks");
    }
    const int j = sub.level;
    const std::int64_t l_j = scale(p, j);
    const std::int64_t run = checked_pow(l_j, p.run_exponent(), "good-run length");
    const std::int64_t len = checked_pow(l_j, p.len_exponent(), "block length");
    const std::int64_t geom_denom = checked_pow(l_j, p.geom_exponent(), "geometric rate");
    const std::int64_t n_subs = static_cast<std::int64_t>(sub.blocks.size());

    BlockPartition part;
    part.level = j + 1;
    part.role = sub.role;
    std::int64_t base = 0;  // consumed sub-blocks
    for (std::int64_t ordinal = 1;; ++ordinal) {
        Xoshiro256ss rng(derive_seed(seed, static_cast<std::uint64_t>(ordinal)));
        const std::int64_t pad = rng.geometric_inv(static_cast<std::uint64_t>(geom_denom));
        const std::int64_t s_min = run + len + pad;
        std::int64_t block_len = -1;  // l
        std::int64_t streak = 0;
        for (std::int64_t q = 1; base + q <= n_subs; ++q) {
            streak = good[static_cast<std::size_t>(base + q - 1)] ? streak + 1 : 0;
            if (q >= s_min + 2 * run && streak >= 2 * run) {
                block_len = q - 2 * run;
                break;
            }
        }
        if (block_len < 0) {
            part.incomplete = true;
            break;
        }
        const std::int64_t total = block_len + run;  // sub-blocks taken
        Block b;
        b.level = j + 1;
        b.role = sub.role;
        b.lo0 = sub.blocks[static_cast<std::size_t>(base)].lo0;
        b.hi0 = sub.blocks[static_cast<std::size_t>(base + total - 1)].hi0;
        b.sub_ends.reserve(static_cast<std::size_t>(total));
        for (std::int64_t i = 0; i < total; ++i) {
            b.sub_ends.push_back(sub.blocks[static_cast<std::size_t>(base + i)].hi0);
            if (!good[static_cast<std::size_t>(base + i)]) b.bad_subs.push_back(i + 1);
        }
        b.excess = block_len - run - len;
        b.padding = pad;
        b.law = part.blocks.empty() ? Block::Law::first_block : Block::Law::mu;
        part.blocks.push_back(std::move(b));
        base += total;
        part.consumed0 = sub.blocks[static_cast<std::size_t>(base - 1)].hi0;
    }
    return part;
}

namespace {

// Rebases a block onto a standalone copy of its own symbols.
SampledBlock rebase(const Sequence& seq, const Block& b) {
    SampledBlock out;
    out.seq.alphabet = seq.alphabet;
    out.seq.role = seq.role;
    out.seq.items.assign(seq.items.begin() + static_cast<std::ptrdiff_t>(b.lo0 - 1),
                         seq.items.begin() + static_cast<std::ptrdiff_t>(b.hi0));
    out.block = b;
    const std::int64_t shift = b.lo0 - 1;
    out.block.lo0 -= shift;
    out.block.hi0 -= shift;
    for (auto& e : out.block.sub_ends) e -= shift;
    return out;
}

SampledBlock sample_level1(BlockLaw law, const Params& p, std::uint64_t seed, Role role,
                           const SamplerOptions& opt) {
    if (opt.alphabet < 4 || opt.alphabet % 4 != 0) {
        throw DomainError("sample_block: alphabet must be a positive multiple of 4");
    }
    const std::int64_t l1 = scale(p, 1);
    std::int64_t accepted = 0, attempts = 0;
    const std::int64_t budget = law == BlockLaw::mu ? 1 : opt.rejection_budget;
    for (std::int64_t attempt = 0; attempt < budget; ++attempt) {
        ++attempts;
        const std::uint64_t stream_seed = derive_seed(seed, static_cast<std::uint64_t>(attempt));
        std::int64_t n = 6 * l1 + 64;
        for (;;) {
            const Sequence stream = generate(opt.alphabet, n, stream_seed, role);
            const BlockPartition part = build_level1(stream, p);
            if (part.blocks.size() >= 2) {
                SampledBlock cand = rebase(stream, part.blocks[1]);
                cand.block.law = Block::Law::mu;
                if (law == BlockLaw::mu) return cand;
                if (!opt.oracle) throw DomainError("sample_block: mu_good needs a goodness oracle");
                if (opt.oracle(cand)) {
                    ++accepted;
                    cand.block.law = Block::Law::mu_good;
                    return cand;
                }
                break;
            }
            if (n > (l1 + 4) * 1024) {
                throw BudgetError("sample_block: stopping pattern not found in a long stream");
            }
            n *= 2;
        }
    }
    throw BudgetError("sample_block: rejection budget exhausted, accepted " +
                      std::to_string(accepted) + "/" + std::to_string(attempts));
}

SampledBlock sample_recursive(int level, BlockLaw law, const Params& p, std::uint64_t seed,
                              Role role, const SamplerOptions& opt);

SampledBlock sample_mu(int level, const Params& p, std::uint64_t seed, Role role,
                       const SamplerOptions& opt) {
    const int j = level - 1;
    const std::int64_t l_j = scale(p, j);
    const std::int64_t run = checked_pow(l_j, p.run_exponent(), "good-run length");
    const std::int64_t len = checked_pow(l_j, p.len_exponent(), "block length");
    const std::int64_t geom_denom = checked_pow(l_j, p.geom_exponent(), "geometric rate");
    if (!opt.oracle) throw DomainError("sample_block: levels >= 2 need a goodness oracle");

    Xoshiro256ss rng(derive_seed(seed, 0));
    const std::int64_t pad = rng.geometric_inv(static_cast<std::uint64_t>(geom_denom));
    const std::int64_t s_min = run + len + pad;
    const std::int64_t draw_cap = std::max<std::int64_t>(1000, 20 * (s_min + 2 * run));

    std::vector<SampledBlock> subs;
    std::vector<std::uint8_t> sub_good;
    std::int64_t streak = 0, block_len = -1;
    for (std::int64_t q = 1; q <= draw_cap; ++q) {
        const BlockLaw sub_law = q <= run ? BlockLaw::mu_good : BlockLaw::mu;
        SampledBlock sb = sample_recursive(level - 1, sub_law, p, derive_seed(seed, static_cast<std::uint64_t>(q)),
                                           role, opt);
        const bool is_good = sub_law == BlockLaw::mu_good ? true : opt.oracle(sb);
        subs.push_back(std::move(sb));
        sub_good.push_back(is_good ? 1 : 0);
        streak = is_good ? streak + 1 : 0;
        if (q >= s_min + 2 * run && streak >= 2 * run) {
            block_len = q - 2 * run;
            break;
        }
    }
    if (block_len < 0) {
        throw BudgetError("sample_block: good run not found within the draw cap");
    }
    const std::int64_t total = block_len + run;
    SampledBlock out;
    out.seq.alphabet = subs[0].seq.alphabet;
    out.seq.role = role;
    out.block.level = level;
    out.block.role = role;
    out.block.lo0 = 1;
    out.block.excess = block_len - run - len;
    out.block.padding = pad;
    out.block.law = Block::Law::mu;
    for (std::int64_t i = 0; i < total; ++i) {
        const auto& sb = subs[static_cast<std::size_t>(i)];
        out.seq.items.insert(out.seq.items.end(), sb.seq.items.begin(), sb.seq.items.end());
        out.block.sub_ends.push_back(static_cast<std::int64_t>(out.seq.items.size()));
        if (!sub_good[static_cast<std::size_t>(i)]) out.block.bad_subs.push_back(i + 1);
    }
    out.block.hi0 = static_cast<std::int64_t>(out.seq.items.size());
    return out;
}

SampledBlock sample_recursive(int level, BlockLaw law, const Params& p, std::uint64_t seed,
                              Role role, const SamplerOptions& opt) {
    if (level <= 0) throw DomainError("sample_block: level must be >= 1");
    if (level == 1) return sample_level1(law, p, seed, role, opt);
    if (law == BlockLaw::mu) return sample_mu(level, p, seed, role, opt);
    std::int64_t accepted = 0;
    for (std::int64_t attempt = 0; attempt < opt.rejection_budget; ++attempt) {
        SampledBlock cand = sample_mu(level, p, derive_seed(seed, static_cast<std::uint64_t>(attempt) + 0x5eedull),
                                      role, opt);
        if (opt.oracle(cand)) {
            ++accepted;
            cand.block.law = Block::Law::mu_good;
            return cand;
        }
    }
    throw BudgetError("sample_block: rejection budget exhausted, accepted " +
                      std::to_string(accepted) + "/" + std::to_string(opt.rejection_budget));
}

}  // namespace

SampledBlock sample_block(int level, BlockLaw law, const Params& p, std::uint64_t seed, Role role,
                          const SamplerOptions& opt) {
    return sample_recursive(level, law, p, seed, role, opt);
}

namespace {

// Orients an (X-block, Y-block) pair as (columns, rows) for the event
// functions regardless of which one is being classified.
struct OrientedPair {
    const Sequence* colseq;
    const Sequence* rowseq;
    const Block* colblock;
    const Block* rowblock;
};

OrientedPair orient(const Sequence& xseq, const Block& xb, const SampledBlock& partner) {
    if (xb.role == Role::x_walk) {
        return {&xseq, &partner.seq, &xb, &partner.block};
    }
    return {&partner.seq, &xseq, &partner.block, &xb};
}

}  // namespace

double estimate_cc_probability(const Sequence& xseq, const Block& xb, std::int64_t trials,
                               std::uint64_t seed, const PartnerSampler& partner) {
    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        const SampledBlock pb = partner(derive_seed(seed, static_cast<std::uint64_t>(t)));
        const OrientedPair o = orient(xseq, xb, pb);
        const Rect rect{o.colblock->lo0, o.colblock->hi0, o.rowblock->lo0, o.rowblock->hi0};
        if (cc_connected(*o.colseq, *o.rowseq, rect)) ++hits;
    }
    return trials > 0 ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
}

std::int64_t goodness_required_trials(const Params& p, int level) {
    const double l_level = static_cast<double>(scale(p, level));
    const double gap = std::pow(l_level, -2.0 * static_cast<double>(p.beta));
    if (!(gap > 0.0)) return std::numeric_limits<std::int64_t>::max();
    const double need = 3.0 / gap;
    if (need > 9e18) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(std::ceil(need));
}

GoodnessVerdict classify_good(const Sequence& xseq, const Block& xb, const Params& p,
                              const McSettings& mc, const PartnerSampler& partner) {
    GoodnessVerdict v;
    v.seed = mc.seed;
    v.trials = mc.trials;
    const int level = xb.level;
    const int j = level - 1;
    const std::int64_t l_j = scale(p, j);
    const std::int64_t run = checked_pow(l_j, p.run_exponent(), "good-run length");

    // (i) starts with a good run; structural, levels >= 2 only.
    {
        ConditionVerdict c;
        c.name = "i_good_prefix";
        c.structural = true;
        if (level == 1) {
            c.state = 1;  // no level-0 goodness; skipped by definition
        } else {
            bool ok = xb.sub_count() >= run;
            for (auto bpos : xb.bad_subs) {
                if (bpos <= run) ok = false;
            }
            c.state = ok ? 1 : 0;
        }
        v.conditions.push_back(c);
    }
    // (v) length bound in sub-blocks.
    {
        ConditionVerdict c;
        c.name = "v_length";
        c.structural = true;
        const std::int64_t bound =
            checked_add(checked_pow(l_j, p.len_exponent(), "length bound"),
                        checked_pow(l_j, p.run_exponent() + 2, "length bound"), "length bound");
        c.threshold = static_cast<double>(bound);
        c.estimate = static_cast<double>(xb.sub_count());
        c.state = xb.sub_count() <= bound ? 1 : 0;
        v.conditions.push_back(c);
    }
    const bool structural_ok =
        v.conditions[0].state == 1 && v.conditions[1].state == 1;
    // Monte Carlo conditions, evaluated on shared partner draws.
    const double thr_ss = 1.0 - std::pow(static_cast<double>(scale(p, level)),
                                         -2.0 * static_cast<double>(p.beta));
    const double thr_cs = 0.9 + std::exp2(-(j + 4));
    const double thr_cc = 0.75 + std::exp2(-(j + 4));
    ConditionVerdict css{.name = "ii_side_to_side", .threshold = thr_ss};
    ConditionVerdict ccs{.name = "iii_corner_to_side", .threshold = thr_cs};
    ConditionVerdict csc{.name = "iii_side_to_corner", .threshold = thr_cs};
    ConditionVerdict ccc{.name = "iv_corner_to_corner", .threshold = thr_cc};
    if (structural_ok) {
        std::int64_t n_ss = 0, n_cs = 0, n_sc = 0, n_cc = 0;
        for (std::int64_t t = 0; t < mc.trials; ++t) {
            const SampledBlock pb = partner(derive_seed(mc.seed, static_cast<std::uint64_t>(t)));
            const OrientedPair o = orient(xseq, xb, pb);
            const Rect rect{o.colblock->lo0, o.colblock->hi0, o.rowblock->lo0, o.rowblock->hi0};
            if (ss_connected(*o.colseq, *o.rowseq, *o.colblock, *o.rowblock, p)) ++n_ss;
            if (cs_connected(*o.colseq, *o.rowseq, *o.colblock, *o.rowblock, p)) ++n_cs;
            if (sc_connected(*o.colseq, *o.rowseq, *o.colblock, *o.rowblock, p)) ++n_sc;
            if (cc_connected(*o.colseq, *o.rowseq, rect)) ++n_cc;
        }
        auto finish = [&](ConditionVerdict& c, std::int64_t hits) {
            c.trials = mc.trials;
            c.estimate = mc.trials > 0 ? static_cast<double>(hits) / static_cast<double>(mc.trials) : 0.0;
            const auto [lo, hi] = wilson_bounds(hits, mc.trials);
            c.ci_low = lo;
            c.ci_high = hi;
            if (lo >= c.threshold) {
                c.state = 1;
            } else if (hi < c.threshold) {
                c.state = 0;
            } else {
                c.state = mc.force_point_estimate ? (c.estimate >= c.threshold ? 1 : 0) : -1;
            }
        };
        finish(css, n_ss);
        finish(ccs, n_cs);
        finish(csc, n_sc);
        finish(ccc, n_cc);
    }
    v.conditions.push_back(css);
    v.conditions.push_back(ccs);
    v.conditions.push_back(csc);
    v.conditions.push_back(ccc);

    v.overall = 1;
    for (const auto& c : v.conditions) {
        if (c.state == 0) {
            v.overall = 0;
            break;
        }
        if (c.state == -1) v.overall = -1;
    }
    if (!structural_ok) v.overall = 0;
    return v;
}

int classify_case(const Block& b, const Params& p, const std::vector<double>& bad_s_estimates,
                  std::int64_t r_plus) {
    const int j = b.level - 1;
    if (j < 0) throw DomainError("classify_case: block level must be >= 1");
    if (bad_s_estimates.size() != b.bad_subs.size()) {
        throw DomainError("classify_case: need one S estimate per bad sub-block");
    }
    if (r_plus < 1) throw DomainError("classify_case: r_plus must be >= 1");
    const std::int64_t l_j = scale(p, j);
    const std::int64_t len = checked_pow(l_j, p.len_exponent(), "case length");
    const std::int64_t t_x = b.excess;
    const std::int64_t k_x = static_cast<std::int64_t>(b.bad_subs.size());
    double prod = 1.0;
    for (double s : bad_s_estimates) prod *= s;
    const bool t_small = 2 * t_x <= checked_mul(p.slope_r, len, "case threshold");
    const bool k_within_density =
        checked_mul(10 * r_plus, k_x, "case density") <= checked_add(len, t_x, "case density");
    const double prod_thr = std::pow(static_cast<double>(l_j), -1.0 / 3.0);
    if (t_small && k_x <= p.k0 && prod > prod_thr) return 1;
    if (t_small && k_x <= p.k0) return 2;
    if (t_small && k_x >= p.k0 && k_within_density) return 3;
    if (!t_small && k_within_density) return 4;
    return 5;
}

RecursiveEstimatesReport check_recursive_estimates(int level, const Params& p,
                                                   const EstimateSettings& settings) {
    if (level < 1) throw DomainError("check_recursive_estimates: level must be >= 1");
    if (settings.alphabet < 4 || settings.alphabet % 4 != 0) {
        throw DomainError("check_recursive_estimates: alphabet must be a positive multiple of 4");
    }
    RecursiveEstimatesReport rep;
    rep.level = level;
    rep.ensemble = settings.ensemble;
    const bool undecided = settings.ensemble < 30;

    SamplerOptions opt;
    opt.alphabet = settings.alphabet;
    if (level >= 2) {
        opt.oracle = [=](const SampledBlock& sb) {
            McSettings mc;
            mc.trials = settings.partner_trials;
            mc.seed = derive_seed(settings.seed, 0xacceull + static_cast<std::uint64_t>(sb.block.level));
            mc.force_point_estimate = true;
            const PartnerSampler partner = stream_partner_sampler(
                sb.block.level, p, settings.alphabet,
                sb.block.role == Role::x_walk ? Role::y_walk : Role::x_walk,
                settings.partner_trials);
            return classify_good(sb.seq, sb.block, p, mc, partner).overall == 1;
        };
    }
    std::vector<SampledBlock> ensemble;
    ensemble.reserve(static_cast<std::size_t>(settings.ensemble));
    for (std::int64_t i = 0; i < settings.ensemble; ++i) {
        ensemble.push_back(
            sample_block(level, BlockLaw::mu, p, derive_seed(settings.seed, static_cast<std::uint64_t>(i)),
                         Role::x_walk, opt));
    }

    // II: length moment generating function.
    {
        const double inv6 = std::pow(static_cast<double>(scale(p, level - 1)), -6.0);
        const double target = (2.0 - std::exp2(-level)) * static_cast<double>(scale(p, level));
        double sum = 0.0;
        for (const auto& sb : ensemble) {
            sum += std::exp(inv6 * (static_cast<double>(sb.block.length0()) - target));
        }
        rep.mgf_check.name = "II_length_mgf";
        rep.mgf_check.observed = ensemble.empty() ? 0.0 : sum / static_cast<double>(ensemble.size());
        rep.mgf_check.bound = 1.0 + settings.mgf_tolerance;
        rep.mgf_check.state = undecided ? -1 : (rep.mgf_check.observed <= rep.mgf_check.bound ? 1 : 0);
    }
    // III: good fraction.
    {
        const PartnerSampler partner = stream_partner_sampler(level, p, settings.alphabet,
                                                              Role::y_walk, settings.partner_trials);
        std::int64_t good = 0;
        std::int64_t idx = 0;
        for (const auto& sb : ensemble) {
            McSettings mc;
            mc.trials = settings.partner_trials;
            mc.seed = derive_seed(settings.seed, 0x900dull + static_cast<std::uint64_t>(idx++));
            mc.force_point_estimate = true;
            if (classify_good(sb.seq, sb.block, p, mc, partner).overall == 1) ++good;
        }
        rep.good_fraction_check.name = "III_good_fraction";
        rep.good_fraction_check.observed =
            ensemble.empty() ? 0.0 : static_cast<double>(good) / static_cast<double>(ensemble.size());
        rep.good_fraction_check.bound =
            1.0 - std::pow(static_cast<double>(scale(p, level)), -static_cast<double>(p.delta));
        rep.good_fraction_check.state =
            undecided ? -1 : (rep.good_fraction_check.observed >= rep.good_fraction_check.bound ? 1 : 0);
    }
    // I: tail of the corner-to-corner connection probability.
    {
        const PartnerSampler partner = stream_partner_sampler(level, p, settings.alphabet,
                                                              Role::y_walk, settings.partner_trials);
        std::vector<double> s_hat;
        s_hat.reserve(ensemble.size());
        std::int64_t idx = 0;
        for (const auto& sb : ensemble) {
            s_hat.push_back(estimate_cc_probability(
                sb.seq, sb.block, settings.partner_trials,
                derive_seed(settings.seed, 0x7a11ull + static_cast<std::uint64_t>(idx++)), partner));
        }
        std::vector<double> grid = settings.tail_grid;
        const double p_cap = 0.75 + std::exp2(-(level + 3));
        if (grid.empty()) {
            for (double q = 0.05; q < p_cap; q += 0.10) grid.push_back(q);
            grid.push_back(p_cap);
        }
        const double m_j = tail_exponent(p, level);
        const double l_pow = std::pow(static_cast<double>(scale(p, level)),
                                      -static_cast<double>(p.beta));
        for (double q : grid) {
            EstimateCheck c;
            c.name = "I_tail_p=" + std::to_string(q);
            std::int64_t below = 0;
            for (double s : s_hat) {
                if (s <= q) ++below;
            }
            const double frac =
                s_hat.empty() ? 0.0 : static_cast<double>(below) / static_cast<double>(s_hat.size());
            c.observed = frac;
            const double bound = std::pow(q, m_j) * l_pow;
            const double sigma = std::sqrt(std::max(bound * (1.0 - bound), 0.0) /
                                           std::max<double>(1.0, static_cast<double>(s_hat.size())));
            c.bound = bound + 3.0 * sigma + 1e-12;
            c.state = undecided ? -1 : (frac <= c.bound ? 1 : 0);
            rep.tail_checks.push_back(c);
        }
    }
    rep.overall = 1;
    for (const auto& c : rep.tail_checks) {
        if (c.state == 0) rep.overall = 0;
        if (c.state == -1 && rep.overall == 1) rep.overall = -1;
    }
    for (const auto* c : {&rep.mgf_check, &rep.good_fraction_check}) {
        if (c->state == 0) rep.overall = 0;
        if (c->state == -1 && rep.overall == 1) rep.overall = -1;
    }
    return rep;
}

PartnerSampler stream_partner_sampler(int level, const Params& p, std::int64_t alphabet,
                                      Role role, std::int64_t oracle_trials) {
    if (level == 1) {
        return [=](std::uint64_t seed) {
            SamplerOptions opt;
            opt.alphabet = alphabet;
            return sample_block(1, BlockLaw::mu, p, seed, role, opt);
        };
    }
    return [=](std::uint64_t seed) {
        SamplerOptions opt;
        opt.alphabet = alphabet;
        opt.oracle = [=](const SampledBlock& sb) {
            McSettings mc;
            mc.trials = oracle_trials;
            mc.seed = derive_seed(seed, 0x0facull);
            mc.force_point_estimate = true;
            const PartnerSampler sub_partner = stream_partner_sampler(
                sb.block.level, p, alphabet,
                sb.block.role == Role::x_walk ? Role::y_walk : Role::x_walk, oracle_trials);
            return classify_good(sb.seq, sb.block, p, mc, sub_partner).overall == 1;
        };
        return sample_block(level, BlockLaw::mu, p, seed, role, opt);
    };
}

}  // namespace cperc
