#include "cperc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "cperc/errors.hpp"
#include "cperc/reach.hpp"
#include "cperc/rng.hpp"
#include "cperc/sequence.hpp"

namespace cperc {

std::pair<double, double> wilson_bounds(std::int64_t successes, std::int64_t trials) {
    if (trials <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    // The interval contains phat mathematically; the min/max squash rounding
    // residue at the endpoints.
    const double lo = std::min(std::max(0.0, center - half), phat);
    const double hi = std::max(std::min(1.0, center + half), phat);
    return {lo, hi};
}

Estimate make_estimate(std::int64_t successes, std::int64_t trials, std::uint64_t master_seed) {
    Estimate e;
    e.successes = successes;
    e.trials = trials;
    e.master_seed = master_seed;
    e.point = trials > 0 ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
    const auto [lo, hi] = wilson_bounds(successes, trials);
    e.ci_low = lo;
    e.ci_high = hi;
    return e;
}

Estimate estimate(const std::function<bool(std::uint64_t)>& event, std::int64_t trials,
                  std::uint64_t master_seed, int workers) {
    if (trials < 1) throw DomainError("estimate: trials must be >= 1");
    workers = std::max(1, workers);
    if (workers == 1) {
        std::int64_t hits = 0;
        for (std::int64_t i = 0; i < trials; ++i) {
            if (event(derive_seed(master_seed, static_cast<std::uint64_t>(i)))) ++hits;
        }
        return make_estimate(hits, trials, master_seed);
    }
    std::vector<std::int64_t> partial(static_cast<std::size_t>(workers), 0);
    std::vector<std::thread> pool;
    const std::int64_t chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::int64_t lo = w * chunk;
            const std::int64_t hi = std::min(trials, lo + chunk);
            std::int64_t hits = 0;
            for (std::int64_t i = lo; i < hi; ++i) {
                if (event(derive_seed(master_seed, static_cast<std::uint64_t>(i)))) ++hits;
            }
            partial[static_cast<std::size_t>(w)] = hits;
        });
    }
    for (auto& t : pool) t.join();
    std::int64_t hits = 0;
    for (auto h : partial) hits += h;
    return make_estimate(hits, trials, master_seed);
}

std::vector<SurvivalRow> survival_curve(std::int64_t alphabet,
                                        const std::vector<std::int64_t>& depths,
                                        std::int64_t trials, std::uint64_t seed, int workers) {
    if (depths.empty()) throw DomainError("survival_curve: no depths");
    if (!std::is_sorted(depths.begin(), depths.end())) {
        throw DomainError("survival_curve: depths must be ascending");
    }
    if (trials < 1) throw DomainError("survival_curve: trials must be >= 1");
    const std::int64_t n_max = depths.back();
    workers = std::max(1, workers);

    const std::size_t nd = depths.size();
    std::vector<std::vector<std::int64_t>> partial(
        static_cast<std::size_t>(workers), std::vector<std::int64_t>(nd, 0));
    auto run_range = [&](int w, std::int64_t lo, std::int64_t hi) {
        auto& counts = partial[static_cast<std::size_t>(w)];
        for (std::int64_t i = lo; i < hi; ++i) {
            const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
            const Sequence x = generate(alphabet, std::max<std::int64_t>(n_max, 2), s, Role::x_walk);
            const Sequence y = generate(alphabet, std::max<std::int64_t>(n_max, 2), s, Role::y_walk);
            const std::int64_t d = survival_depth(x, y, n_max);
            for (std::size_t k = 0; k < nd; ++k) {
                if (d >= depths[k]) ++counts[k];
            }
        }
    };
    if (workers == 1) {
        run_range(0, 0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t chunk = (trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(run_range, w, w * chunk, std::min(trials, (w + 1) * chunk));
        }
        for (auto& t : pool) t.join();
    }
    std::vector<SurvivalRow> rows;
    rows.reserve(nd);
    for (std::size_t k = 0; k < nd; ++k) {
        std::int64_t hits = 0;
        for (int w = 0; w < workers; ++w) hits += partial[static_cast<std::size_t>(w)][k];
        rows.push_back({depths[k], make_estimate(hits, trials, seed)});
    }
    return rows;
}

}  // namespace cperc
