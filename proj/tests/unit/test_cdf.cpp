#include "markovpi/bandwidth.hpp"
#include "markovpi/cdf.hpp"
#include "markovpi/simulation.hpp"

#include "convert.hpp"
#include "expect_error.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace markovpi;
using testutil::code_of;

namespace {

EmbeddedPairs three_pairs() { return {1, {0, 1, 2}, {0, 1, 2}}; }

double truth_sine_normal(double x, double y) { return static_cast<double>(oracle::normal_cdf(y - std::sin(x))); }

}  // namespace

TEST(Estimate, ThreePairOracle) {
    const ConditionalCdfModel model(three_pairs(), Bandwidths(1.0, 0.5));
    const double x = 1.0;
    // Reference values computed offline at 40 digits.
    EXPECT_NEAR(estimate(model, {&x, 1}, 1.0), 0.5, 1e-15);
    EXPECT_NEAR(estimate_loo(three_pairs(), Bandwidths(1.0, 0.5), 2, {&x, 1}, 1.0), 0.68877033439907272, 1e-15);
}

TEST(Estimate, EqualResponsesCancelWeights) {
    const EmbeddedPairs pairs(1, {-1.0, 0.3, 2.5, 4.0}, {0, 0, 0, 0});
    const ConditionalCdfModel model(pairs, Bandwidths(0.7, 0.4));
    const double x = 0.9;
    for (double y = -1.0; y <= 1.0; y += 0.05) {
        EXPECT_NEAR(estimate(model, {&x, 1}, y), smooth_cdf_kernel(y / 0.4), 1e-15);
    }
}

TEST(Estimate, IdenticalPredictorsGiveSmoothedEcdf) {
    const EmbeddedPairs pairs(2, {1, 2, 1, 2, 1, 2, 1, 2}, {-0.5, 0.1, 0.2, 1.3});
    const ConditionalCdfModel model(pairs, Bandwidths(0.5, 0.3));
    const std::vector<double> x{1, 2};
    for (double y = -1.5; y <= 2.0; y += 0.1) {
        double expect = 0.0;
        for (double yi : pairs.responses()) expect += smooth_cdf_kernel((y - yi) / 0.3);
        EXPECT_NEAR(estimate(model, x, y), expect / 4.0, 1e-15);
    }
}

TEST(Estimate, MatchesDirectDoubleSum) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> bw(0.2, 1.5);
    std::normal_distribution<double> z;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t p = 1 + static_cast<std::size_t>(rep % 3);
        const auto data = oracle::random_pairs(rng, 5 + static_cast<std::size_t>(rep % 20), p);
        const double h = bw(rng);
        const double h0 = bw(rng);
        const ConditionalCdfModel model(testutil::to_pairs(data), Bandwidths(h, h0));
        std::vector<double> x(p);
        for (double& v : x) v = z(rng);
        const double y = z(rng);
        EXPECT_NEAR(estimate(model, x, y), oracle::cdf(data, h, h0, x, y), 1e-12);
    }
}

TEST(EstimateLoo, TwoPairsDropOne) {
    const EmbeddedPairs pairs(1, {0.0, 1.0}, {-0.3, 0.8});
    const double x = 0.4;
    for (double y = -1.0; y <= 2.0; y += 0.1) {
        EXPECT_NEAR(estimate_loo(pairs, Bandwidths(0.9, 0.6), 0, {&x, 1}, y), smooth_cdf_kernel((y - 0.8) / 0.6),
                    1e-15);
    }
}

TEST(EstimateLoo, EqualsEstimateOnDeletedData) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> bw(0.2, 1.5);
    std::normal_distribution<double> z;
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t p = 1 + static_cast<std::size_t>(rep % 3);
        const std::size_t n = 3 + static_cast<std::size_t>(rep % 15);
        const EmbeddedPairs pairs = testutil::to_pairs(oracle::random_pairs(rng, n, p));
        const Bandwidths b(bw(rng), bw(rng));
        const std::size_t t = static_cast<std::size_t>(rep) % n;
        std::vector<double> x(p);
        for (double& v : x) v = z(rng);
        const double y = z(rng);
        const ConditionalCdfModel deleted(pairs.without(t), b);
        EXPECT_NEAR(estimate_loo(pairs, b, t, x, y), estimate(deleted, x, y), 1e-12);
    }
}

TEST(EstimateLoo, Errors) {
    const double x = 0.0;
    EXPECT_EQ(code_of([&] { (void)estimate_loo(three_pairs(), Bandwidths(1, 1), 3, {&x, 1}, 0.0); }),
              ErrorCode::InvalidIndex);
}

TEST(Estimate, InputErrors) {
    const ConditionalCdfModel model(three_pairs(), Bandwidths(1.0, 0.5));
    const std::vector<double> x2{0.0, 1.0};
    const double x = 0.0;
    EXPECT_EQ(code_of([&] { (void)estimate(model, x2, 0.0); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code_of([&] { (void)estimate(model, {&x, 1}, std::nan("")); }), ErrorCode::NonFiniteInput);
    const double far = 1e200;
    const ConditionalCdfModel tight(three_pairs(), Bandwidths(1e-200, 0.5));
    EXPECT_EQ(code_of([&] { (void)estimate(tight, {&far, 1}, 0.0); }), ErrorCode::DegenerateWeights);
}

TEST(Estimate, FarQueryStaysFiniteInLogSpace) {
    const ConditionalCdfModel model(three_pairs(), Bandwidths(0.1, 0.5));
    const double x = 60.0;  // raw Gaussian weights underflow to zero here
    const double f = estimate(model, {&x, 1}, 1.0);
    // All weight concentrates on the nearest predictor (X = 2, Y = 2).
    EXPECT_NEAR(f, smooth_cdf_kernel((1.0 - 2.0) / 0.5), 1e-12);
}

TEST(Estimate, MonotoneRangeAndSupportEdges) {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> z;
    for (int rep = 0; rep < 50; ++rep) {
        const auto data = oracle::random_pairs(rng, 30, 2);
        const ConditionalCdfModel model(testutil::to_pairs(data), Bandwidths(0.6, 0.3));
        const std::vector<double> x{z(rng), z(rng)};
        EXPECT_EQ(estimate(model, x, model.support_lower()), 0.0);
        EXPECT_EQ(estimate(model, x, model.support_lower() - 1.0), 0.0);
        EXPECT_EQ(estimate(model, x, model.support_upper()), 1.0);
        EXPECT_EQ(estimate(model, x, model.support_upper() + 1.0), 1.0);
        double prev = 0.0;
        for (double y = model.support_lower(); y <= model.support_upper(); y += 0.013) {
            const double f = estimate(model, x, y);
            EXPECT_GE(f, prev);
            EXPECT_LE(f, 1.0);
            prev = f;
        }
    }
}

TEST(Estimate, PermutationInvariant) {
    std::mt19937_64 rng(14);
    std::normal_distribution<double> z;
    for (int rep = 0; rep < 50; ++rep) {
        auto data = oracle::random_pairs(rng, 25, 2);
        const ConditionalCdfModel a(testutil::to_pairs(data), Bandwidths(0.5, 0.4));
        std::shuffle(data.begin(), data.end(), rng);
        const ConditionalCdfModel b(testutil::to_pairs(data), Bandwidths(0.5, 0.4));
        const std::vector<double> x{z(rng), z(rng)};
        const double y = z(rng);
        EXPECT_NEAR(estimate(a, x, y), estimate(b, x, y), 1e-14);
    }
}

TEST(Estimate, AugmentationIdentityIsExact) {
    std::mt19937_64 rng(15);
    std::normal_distribution<double> z;
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t p = 1 + static_cast<std::size_t>(rep % 3);
        const EmbeddedPairs pairs = testutil::to_pairs(oracle::random_pairs(rng, 10, p));
        std::vector<double> xa(p);
        for (double& v : xa) v = z(rng);
        const double ya = z(rng);
        const Bandwidths bw(0.7, 0.5);
        const ConditionalCdfModel augmented(pairs, bw, xa, ya);
        const ConditionalCdfModel unioned(pairs.with_appended(xa, ya), bw);
        EXPECT_TRUE(augmented.augmented());
        std::vector<double> x(p);
        for (double& v : x) v = z(rng);
        const double y = z(rng);
        EXPECT_EQ(estimate(augmented, x, y), estimate(unioned, x, y));
    }
}

TEST(TransformRanks, RangeAndConstantSeries) {
    const TimeSeriesSample constant(std::vector<double>(20, 3.0));
    for (bool loo : {false, true}) {
        for (double r : transform_ranks(embed(constant, 1), Bandwidths(0.5, 0.5), loo)) EXPECT_EQ(r, 0.5);
    }
    DgpSpec spec;
    spec.n = 200;
    const TimeSeriesSample s = simulate(spec);
    for (bool loo : {false, true}) {
        for (double r : transform_ranks(embed(s, 2), Bandwidths(0.4, 0.3), loo)) {
            EXPECT_GE(r, 0.0);
            EXPECT_LE(r, 1.0);
        }
    }
}

TEST(TransformRanks, LooRanksMatchDeletionOracle) {
    std::mt19937_64 rng(16);
    const auto data = oracle::random_pairs(rng, 15, 1);
    const auto ranks = transform_ranks(testutil::to_pairs(data), Bandwidths(0.6, 0.4), true);
    for (std::size_t t = 0; t < data.size(); ++t) {
        EXPECT_NEAR(ranks[t], oracle::cdf(data, 0.6, 0.4, data[t].x, data[t].y, t), 1e-12);
    }
}

TEST(TransformRanks, ApproximatelyUniformOnModelOne) {
    DgpSpec spec;
    spec.n = 1000;
    spec.seed = 2024;
    const TimeSeriesSample s = simulate(spec);
    const EmbeddedPairs pairs = embed(s, 1);
    const auto ranks = transform_ranks(pairs, rule_of_thumb(s.size(), 1, s.sample_sd()), false);
    EXPECT_LT(oracle::ks_uniform(ranks), 0.05);
}

TEST(Invert, ZeroLevelIsLeftSupportEdge) {
    const ConditionalCdfModel model(three_pairs(), Bandwidths(1.0, 0.5));
    const double x = 0.5;
    EXPECT_EQ(invert(model, {&x, 1}, 0.0), model.support_lower());
    EXPECT_DOUBLE_EQ(model.support_lower(), -1.0);
}

TEST(Invert, SymmetricMedianAtZero) {
    const EmbeddedPairs pairs(1, {0.1, 0.5, 0.9}, {0, 0, 0});
    const ConditionalCdfModel model(pairs, Bandwidths(0.5, 0.3));
    const double x = 0.4;
    EXPECT_NEAR(invert(model, {&x, 1}, 0.5), 0.0, kInversionTolerance);
}

TEST(Invert, RejectsLevelsOutsideUnitInterval) {
    const ConditionalCdfModel model(three_pairs(), Bandwidths(1.0, 0.5));
    const double x = 0.5;
    EXPECT_EQ(code_of([&] { (void)invert(model, {&x, 1}, 1.5); }), ErrorCode::InvalidProbability);
    EXPECT_EQ(code_of([&] { (void)invert(model, {&x, 1}, -0.1); }), ErrorCode::InvalidProbability);
}

TEST(Invert, RoundTripAndSmallestRoot) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> z;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const auto data = oracle::random_pairs(rng, 40, 1);
        const ConditionalCdfModel model(testutil::to_pairs(data), Bandwidths(0.5, 0.3));
        const double x = z(rng);
        const auto slice = model.slice({&x, 1});
        // y strictly inside the support, where F is strictly increasing.
        const double y = model.support_lower() + (0.05 + 0.9 * u(rng)) * (model.support_upper() - model.support_lower());
        const double f = slice.cdf(y);
        if (f <= 1e-6 || f >= 1.0 - 1e-6) continue;
        EXPECT_NEAR(slice.quantile(f), y, 1e-6);
        const double v = u(rng);
        const double q = slice.quantile(v);
        EXPECT_GE(slice.cdf(q), v);
        if (q > model.support_lower()) EXPECT_LT(slice.cdf(q - 2.0 * kInversionTolerance), v);
    }
}

TEST(Invert, MonotoneInLevel) {
    std::mt19937_64 rng(18);
    const auto data = oracle::random_pairs(rng, 60, 2);
    const ConditionalCdfModel model(testutil::to_pairs(data), Bandwidths(0.6, 0.25));
    const std::vector<double> x{0.2, -0.4};
    const auto slice = model.slice(x);
    double prev = -1e300;
    for (double v = 0.0; v <= 1.0; v += 0.01) {
        const double q = slice.quantile(v);
        EXPECT_GE(q, prev - kInversionTolerance);
        prev = q;
    }
}

TEST(Estimate, SupErrorShrinksWithSampleSize) {
    const std::vector<std::size_t> sizes{100, 400, 1600};
    const std::vector<double> xs{-1.0, -0.5, 0.0, 0.5, 1.0};
    std::vector<double> medians;
    for (std::size_t n : sizes) {
        std::vector<double> sup(50);
        for (std::size_t r = 0; r < sup.size(); ++r) {
            DgpSpec spec;
            spec.n = n;
            spec.seed = 9000 + r;
            const TimeSeriesSample s = simulate(spec);
            const ConditionalCdfModel model(embed(s, 1), rule_of_thumb(n, 1, s.sample_sd()));
            double worst = 0.0;
            for (double x : xs) {
                const auto slice = model.slice({&x, 1});
                for (double y = -2.0; y <= 2.0; y += 0.25) {
                    worst = std::max(worst, std::abs(slice.cdf(y) - truth_sine_normal(x, y)));
                }
            }
            sup[r] = worst;
        }
        std::nth_element(sup.begin(), sup.begin() + 25, sup.end());
        medians.push_back(sup[25]);
    }
    EXPECT_GT(medians[0], medians[1]);
    EXPECT_GT(medians[1], medians[2]);
}
