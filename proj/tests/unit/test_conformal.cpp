#include "markovpi/bandwidth.hpp"
#include "markovpi/conformal.hpp"
#include "markovpi/simulation.hpp"

#include "convert.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace markovpi;
using testutil::code_of;

namespace {

struct Fixture {
    TimeSeriesSample series;
    EmbeddedPairs pairs;
    Bandwidths bw;
    std::vector<double> x_n;
};

Fixture model_one(std::size_t n, std::uint64_t seed) {
    DgpSpec spec;
    spec.n = n;
    spec.seed = seed;
    TimeSeriesSample s = simulate(spec);
    EmbeddedPairs pairs = embed(s, 1);
    const Bandwidths bw = rule_of_thumb(n, 1, s.sample_sd());
    auto x_n = last_predictor(s, 1);
    return {std::move(s), std::move(pairs), bw, std::move(x_n)};
}

}  // namespace

TEST(TrialGrid, Examples) {
    const TrialGrid g = build_trial_grid(TimeSeriesSample({1, -3, 2}), 5);
    ASSERT_EQ(g.size(), 5u);
    const std::vector<double> expect{-3, -1.5, 0, 1.5, 3};
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(g.points()[i], expect[i], 1e-15);

    const TrialGrid zero = build_trial_grid(TimeSeriesSample({0, 0}), 3);
    ASSERT_EQ(zero.size(), 2u);
    EXPECT_EQ(zero.points()[0], -kDegenerateGridHalfWidth);
    EXPECT_EQ(zero.points()[1], kDegenerateGridHalfWidth);

    const TrialGrid two = build_trial_grid(TimeSeriesSample({0.5, -2.5}), 2);
    EXPECT_EQ(two.points(), std::vector<double>({-2.5, 2.5}));
}

TEST(TrialGrid, Validation) {
    EXPECT_EQ(code_of([] { TrialGrid({1.0}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { TrialGrid({1.0, 1.0}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { (void)build_trial_grid(TimeSeriesSample({1, 2}), 1); }), ErrorCode::InvalidArgument);
}

TEST(MdcpPvalue, TotalTiesGiveOne) {
    const EmbeddedPairs pairs(1, {0.1, 0.4, -0.3, 0.9}, {2.0, 2.0, 2.0, 2.0});
    const double x = 0.2;
    for (bool predictive : {false, true}) {
        EXPECT_EQ(mdcp_pvalue(pairs, Bandwidths(0.5, 0.3), {&x, 1}, 2.0, predictive), 1.0);
    }
}

TEST(MdcpPvalue, ExtremeCandidateGetsOneOverN) {
    std::mt19937_64 rng(21);
    const auto data = oracle::random_pairs(rng, 9, 1);
    const double x = 0.0;
    // Far beyond every response: its rank is 1, score 1/2, strictly the largest.
    EXPECT_DOUBLE_EQ(mdcp_pvalue(testutil::to_pairs(data), Bandwidths(0.5, 0.3), {&x, 1}, 50.0, false), 0.1);
}

TEST(MdcpPvalue, MatchesBruteForceOracle) {
    std::mt19937_64 rng(22);
    std::normal_distribution<double> z;
    std::uniform_real_distribution<double> bw(0.2, 1.2);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t p = 1 + static_cast<std::size_t>(rep % 2);
        const auto data = oracle::random_pairs(rng, 4 + static_cast<std::size_t>(rep % 8), p);
        const double h = bw(rng);
        const double h0 = bw(rng);
        std::vector<double> x(p);
        for (double& v : x) v = z(rng);
        const double y = z(rng);
        for (bool predictive : {false, true}) {
            EXPECT_NEAR(mdcp_pvalue(testutil::to_pairs(data), Bandwidths(h, h0), x, y, predictive),
                        oracle::pvalue(data, h, h0, x, y, predictive), 1e-12);
        }
    }
}

TEST(MdcpPvalue, LatticeValued) {
    const Fixture f = model_one(60, 23);
    const ConformalScorer scorer(f.pairs, f.bw, f.x_n, false);
    const double n = static_cast<double>(scorer.augmented_count());
    for (double y = -4.0; y <= 4.0; y += 0.1) {
        const double pv = scorer.pvalue(y);
        EXPECT_GE(pv, 1.0 / n);
        EXPECT_LE(pv, 1.0);
        EXPECT_NEAR(pv * n, std::round(pv * n), 1e-9);
    }
}

TEST(ConformalInterval, TinyAlphaAcceptsWholeGrid) {
    const Fixture f = model_one(99, 24);
    const TrialGrid grid = build_trial_grid(f.series, 50);
    const auto res = conformal_interval(f.pairs, f.bw, f.x_n, grid, NominalLevel(0.001), false);
    EXPECT_EQ(res.interval.lower, grid.points().front());
    EXPECT_EQ(res.interval.upper, grid.points().back());
    for (const auto& row : res.trace.rows) EXPECT_TRUE(row.accepted);
}

TEST(ConformalInterval, HugeAlphaIsEmptyExactlyWhenOracleSaysSo) {
    // With N = 10, alpha = 0.999 accepts only candidates whose p-value is 1.
    int empty = 0;
    for (std::uint64_t seed = 25; seed < 45; ++seed) {
        const Fixture f = model_one(10, seed);
        const auto data = testutil::from_pairs(f.pairs);
        const TrialGrid grid = build_trial_grid(f.series, 20);
        double max_p = 0.0;
        for (double y : grid.points()) {
            max_p = std::max(max_p, oracle::pvalue(data, f.bw.h(), f.bw.h0(), f.x_n, y, false));
        }
        if (max_p <= 0.999) {
            ++empty;
            EXPECT_EQ(code_of([&] { (void)conformal_interval(f.pairs, f.bw, f.x_n, grid, NominalLevel(0.999), false); }),
                      ErrorCode::EmptyAcceptedSet);
        } else {
            const auto res = conformal_interval(f.pairs, f.bw, f.x_n, grid, NominalLevel(0.999), false);
            for (const auto& row : res.trace.rows) EXPECT_EQ(row.accepted, row.pvalue == 1.0);
        }
    }
    EXPECT_GT(empty, 0);
}

TEST(ConformalInterval, ReplaysAgainstOracleTrace) {
    const Fixture f = model_one(100, 26);
    const auto data = testutil::from_pairs(f.pairs);
    const TrialGrid grid = build_trial_grid(f.series, 60);
    for (bool predictive : {false, true}) {
        const auto res = conformal_interval(f.pairs, f.bw, f.x_n, grid, NominalLevel(0.1), predictive);
        double lo = INFINITY;
        double hi = -INFINITY;
        ASSERT_EQ(res.trace.rows.size(), grid.size());
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const double y = grid.points()[g];
            const double pv = oracle::pvalue(data, f.bw.h(), f.bw.h0(), f.x_n, y, predictive);
            EXPECT_NEAR(res.trace.rows[g].pvalue, pv, 1e-12);
            if (pv > 0.1) {
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
        }
        EXPECT_EQ(res.interval.lower, lo);
        EXPECT_EQ(res.interval.upper, hi);
        EXPECT_EQ(res.interval.method, predictive ? Method::PMDCP : Method::MDCP);
    }
}

TEST(ConformalInterval, NestedInAlpha) {
    for (std::uint64_t seed = 30; seed < 40; ++seed) {
        const Fixture f = model_one(80, seed);
        const TrialGrid grid = build_trial_grid(f.series, 100);
        for (bool predictive : {false, true}) {
            const auto wide = conformal_interval(f.pairs, f.bw, f.x_n, grid, NominalLevel(0.05), predictive);
            const auto narrow = conformal_interval(f.pairs, f.bw, f.x_n, grid, NominalLevel(0.10), predictive);
            EXPECT_LE(wide.interval.lower, narrow.interval.lower);
            EXPECT_GE(wide.interval.upper, narrow.interval.upper);
        }
    }
}

TEST(ConformalInterval, GridRefinementMovesEndpointsAtMostOneStep) {
    for (std::uint64_t seed = 40; seed < 45; ++seed) {
        const Fixture f = model_one(100, seed);
        const TrialGrid coarse = build_trial_grid(f.series, 100);
        const TrialGrid fine = build_trial_grid(f.series, 200);
        const double step = coarse.points()[1] - coarse.points()[0];
        const auto a = conformal_interval(f.pairs, f.bw, f.x_n, coarse, NominalLevel(0.1), false);
        const auto b = conformal_interval(f.pairs, f.bw, f.x_n, fine, NominalLevel(0.1), false);
        EXPECT_LE(std::abs(a.interval.lower - b.interval.lower), step + 1e-12);
        EXPECT_LE(std::abs(a.interval.upper - b.interval.upper), step + 1e-12);
    }
}

TEST(ConformalInterval, ThreadCountDoesNotChangeResult) {
    const Fixture f = model_one(120, 46);
    const TrialGrid grid = build_trial_grid(f.series, 150);
    const auto one = conformal_interval(f.pairs, f.bw, f.x_n, grid, NominalLevel(0.1), true, 1);
    const auto four = conformal_interval(f.pairs, f.bw, f.x_n, grid, NominalLevel(0.1), true, 4);
    EXPECT_EQ(one.interval.lower, four.interval.lower);
    EXPECT_EQ(one.interval.upper, four.interval.upper);
    for (std::size_t g = 0; g < grid.size(); ++g) EXPECT_EQ(one.trace.rows[g].pvalue, four.trace.rows[g].pvalue);
}
