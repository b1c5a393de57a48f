#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cperc/block.hpp"
#include "cperc/params.hpp"
#include "cperc/sequence.hpp"

namespace cperc {

// Level-1 partition: greedy left-to-right cuts at the role-specific stopping
// pattern with block length >= L_1. X-blocks stop at a symbol = 1 (mod 4)
// followed by one = 0 (mod 4); Y-blocks at 3 (mod 4) followed by 2 (mod 4).
// Requires M = 0 (mod 4).
BlockPartition build_level1(const Sequence& seq, const Params& p);

// Level-(j+1) blocks over a level-j partition: from the previous boundary,
// take L^p_run sub-blocks, then L^p_len, then Geom(L^-p_geom) many, then cut
// at the midpoint of the first run of 2 L^p_run consecutive good sub-blocks.
// good[i] is the verdict for sub.blocks[i]. Reproducible from (sub, good,
// seed).
BlockPartition build_next_level(const BlockPartition& sub, const std::vector<std::uint8_t>& good,
                                const Params& p, std::uint64_t seed);

// A sampled block together with its backing symbols (block indices are
// 1-based into seq).
struct SampledBlock {
    Sequence seq;
    Block block;
};

enum class BlockLaw { mu, mu_good };

using GoodnessOracle = std::function<bool(const SampledBlock&)>;

struct SamplerOptions {
    std::int64_t alphabet = 0;       // M for the level-0 stream
    std::int64_t rejection_budget = 1000;
    GoodnessOracle oracle;           // needed for levels >= 2 and for mu_good
};

// Draws one block of the requested law. Level 1 samples a fresh symbol
// stream and takes a non-first block; level j >= 2 follows the recursive
// recipe (L^p_run good sub-blocks, then plain ones, geometric padding,
// stop at a good run). mu_good rejects on the oracle verdict; an exhausted
// budget raises BudgetError with the acceptance rate.
SampledBlock sample_block(int level, BlockLaw law, const Params& p, std::uint64_t seed, Role role,
                          const SamplerOptions& opt);

// Monte Carlo expectations for one classification condition.
struct ConditionVerdict {
    std::string name;
    int state = -1;  // 1 pass, 0 fail, -1 undecided
    bool structural = false;
    double estimate = 0.0, ci_low = 0.0, ci_high = 0.0, threshold = 0.0;
    std::int64_t trials = 0;
};

struct GoodnessVerdict {
    std::vector<ConditionVerdict> conditions;
    int overall = -1;  // 1 good, 0 bad, -1 undecided
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
};

struct McSettings {
    std::int64_t trials = 200;
    std::uint64_t seed = 1;
    bool force_point_estimate = false;
};

using PartnerSampler = std::function<SampledBlock(std::uint64_t seed)>;

// Definition-of-good classification for a block at any level >= 1:
// (i) first L^p_run sub-blocks good (levels >= 2; skipped at level 1),
// (v) sub-block count <= L^p_len + L^(p_run+2), both structural and checked
// first; (ii) side-to-side, (iii) corner-to-side / side-to-corner,
// (iv) corner-to-corner probabilities estimated over sampled partners.
// Monte Carlo conditions whose Wilson interval straddles the threshold come
// back undecided unless force_point_estimate is set.
GoodnessVerdict classify_good(const Sequence& xseq, const Block& xb, const Params& p,
                              const McSettings& mc, const PartnerSampler& partner);

// Number of partner samples needed before a Wilson interval can in
// principle separate from the threshold; used to refuse meaningless runs.
std::int64_t goodness_required_trials(const Params& p, int level);

// First matching block class of the five-case decomposition, in order:
// 1 typical, 2 bad-but-few, 3 many-bad, 4 long, 5 dense-bad. r_plus stands
// in for the undefined R_j^+.
int classify_case(const Block& b, const Params& p, const std::vector<double>& bad_s_estimates,
                  std::int64_t r_plus);

struct EstimateCheck {
    std::string name;
    int state = -1;  // 1 pass, 0 fail, -1 undecided
    double observed = 0.0, bound = 0.0;
};

struct RecursiveEstimatesReport {
    int level = 1;
    std::int64_t ensemble = 0;
    std::vector<EstimateCheck> tail_checks;    // I: empirical tail vs p^m_j L^-beta
    EstimateCheck mgf_check;                   // II: mean exp(L_{j-1}^-6 (|X| - (2-2^-j) L_j))
    EstimateCheck good_fraction_check;         // III: good fraction vs 1 - L^-delta
    int overall = -1;
};

struct EstimateSettings {
    std::int64_t ensemble = 200;
    std::int64_t partner_trials = 50;   // per-block S_j estimation
    std::uint64_t seed = 1;
    std::int64_t alphabet = 0;
    double mgf_tolerance = 0.05;
    std::vector<double> tail_grid;      // defaults to an 8-point grid when empty
};

RecursiveEstimatesReport check_recursive_estimates(int level, const Params& p,
                                                   const EstimateSettings& settings);

// Corner-to-corner connection probability of a fixed block against sampled
// partners (the S_j(X) estimator used by classification and the estimate
// checks).
double estimate_cc_probability(const Sequence& xseq, const Block& xb, std::int64_t trials,
                               std::uint64_t seed, const PartnerSampler& partner);

// Default partner sampler: level-1 blocks from fresh streams at the given
// alphabet; levels >= 2 recurse with a point-estimate goodness oracle of
// oracle_trials partners per verdict.
PartnerSampler stream_partner_sampler(int level, const Params& p, std::int64_t alphabet,
                                      Role role, std::int64_t oracle_trials);

}  // namespace cperc
