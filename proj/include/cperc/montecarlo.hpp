#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace cperc {

// Binomial estimate with Wilson 95% bounds; reproducible from
// (sampler, trials, master_seed) regardless of worker count.
struct Estimate {
    std::int64_t successes = 0;
    std::int64_t trials = 0;
    double point = 0.0, ci_low = 0.0, ci_high = 0.0;
    std::uint64_t master_seed = 0;
};

// Wilson score interval at 95%.
std::pair<double, double> wilson_bounds(std::int64_t successes, std::int64_t trials);

Estimate make_estimate(std::int64_t successes, std::int64_t trials, std::uint64_t master_seed);

// Runs `event` on per-trial seeds derive_seed(master_seed, trial). Workers
// split the trial range; merging is a sum, so the result is identical for
// any worker count.
Estimate estimate(const std::function<bool(std::uint64_t)>& event, std::int64_t trials,
                  std::uint64_t master_seed, int workers = 1);

struct SurvivalRow {
    std::int64_t depth = 0;
    Estimate est;
};

// P(survival_depth >= n) for each requested depth, one instance pair per
// trial reused across depths (one DP records the max depth), so the point
// estimates are monotone non-increasing by construction.
std::vector<SurvivalRow> survival_curve(std::int64_t alphabet, const std::vector<std::int64_t>& depths,
                                        std::int64_t trials, std::uint64_t seed, int workers = 1);

}  // namespace cperc
