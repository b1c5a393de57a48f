#include <doctest.h>

#include <cmath>

#include "cperc/montecarlo.hpp"
#include "cperc/reach.hpp"
#include "cperc/rng.hpp"
#include "cperc/sequence.hpp"

using namespace cperc;

TEST_CASE("an always-true event estimates one") {
    const Estimate e = estimate([](std::uint64_t) { return true; }, 100, 42);
    CHECK(e.point == 1.0);
    CHECK(e.ci_high == 1.0);
    CHECK(e.ci_low < 1.0);
    CHECK(e.successes == 100);
}

TEST_CASE("a fair-coin event lands near one half") {
    auto coin = [](std::uint64_t seed) {
        Xoshiro256ss rng(seed);
        return (rng.next() & 1) == 1;
    };
    for (std::uint64_t seed : {1ull, 7ull, 99ull, 1234ull}) {
        const Estimate e = estimate(coin, 10000, seed);
        CHECK(e.point >= 0.47);
        CHECK(e.point <= 0.53);
        CHECK(e.ci_low <= 0.5);
        CHECK(e.ci_high >= 0.5);
    }
}

TEST_CASE("estimates are identical under any worker count") {
    auto coin = [](std::uint64_t seed) {
        Xoshiro256ss rng(seed);
        return rng.bounded(3) == 0;
    };
    const Estimate a = estimate(coin, 5000, 77, 1);
    const Estimate b = estimate(coin, 5000, 77, 8);
    const Estimate c = estimate(coin, 5000, 77, 3);
    CHECK(a.successes == b.successes);
    CHECK(a.successes == c.successes);
    CHECK(a.point == b.point);
}

TEST_CASE("wilson intervals are ordered and cover a known probability") {
    const auto [lo, hi] = wilson_bounds(30, 100);
    CHECK(lo <= 0.30);
    CHECK(hi >= 0.30);
    CHECK(lo >= 0.0);
    CHECK(hi <= 1.0);

    // Coverage: 95% interval should contain p=0.3 in at least 93% of
    // repetitions.
    auto biased = [](std::uint64_t seed) {
        Xoshiro256ss rng(seed);
        return rng.bounded(10) < 3;
    };
    int covered = 0;
    const int reps = 1000;
    for (int i = 0; i < reps; ++i) {
        const Estimate e = estimate(biased, 200, derive_seed(9, static_cast<std::uint64_t>(i)));
        if (e.ci_low <= 0.3 && 0.3 <= e.ci_high) ++covered;
    }
    CHECK(covered >= 930);
}

TEST_CASE("estimate bounds are ordered for any count") {
    for (std::int64_t n : {1, 7, 50, 400}) {
        for (std::int64_t s = 0; s <= n; ++s) {
            const Estimate e = make_estimate(s, n, 0);
            CHECK(0.0 <= e.ci_low);
            CHECK(e.ci_low <= e.point);
            CHECK(e.point <= e.ci_high);
            CHECK(e.ci_high <= 1.0);
        }
    }
}

TEST_CASE("estimate demands at least one trial") {
    CHECK_THROWS_AS(estimate([](std::uint64_t) { return true; }, 0, 1), DomainError);
}

TEST_CASE("survival curves are monotone and reuse instances across depths") {
    const auto rows = survival_curve(3, {8, 16, 32}, 500, 11);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].est.point >= rows[1].est.point);
    CHECK(rows[1].est.point >= rows[2].est.point);
    const auto again = survival_curve(3, {8, 16, 32}, 500, 11, 4);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].est.successes == again[i].est.successes);
    }
}

TEST_CASE("depth-one survival estimates the open-origin probability") {
    const std::int64_t m = 4;
    const auto rows = survival_curve(m, {1}, 4000, 5);
    REQUIRE(rows.size() == 1);
    const double expect = 1.0 - 1.0 / static_cast<double>(m);
    CHECK(rows[0].est.ci_low <= expect);
    CHECK(rows[0].est.ci_high >= expect);
}

TEST_CASE("disjoint alphabets survive to any depth") {
    // Forced-distinct streams make every site open; the depth always hits
    // its cap.
    Sequence x, y;
    x.alphabet = y.alphabet = 8;
    x.role = Role::x_walk;
    y.role = Role::y_walk;
    for (int i = 0; i < 64; ++i) {
        x.items.push_back(static_cast<std::uint32_t>(1 + (i % 4)));
        y.items.push_back(static_cast<std::uint32_t>(5 + (i % 4)));
    }
    CHECK(survival_depth(x, y, 64) == 64);
}
