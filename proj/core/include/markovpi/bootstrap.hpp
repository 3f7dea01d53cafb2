#pragma once

#include "markovpi/cdf.hpp"
#include "markovpi/kernels.hpp"
#include "markovpi/series.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace markovpi {

struct BootstrapConfig {
    std::size_t B = 250;       // bootstrap replicates
    std::size_t M = 100;       // warm-up (padded history) length
    std::uint64_t seed = 42;   // root seed; replicate b uses derive_seed(seed, b)
    std::size_t threads = 1;
};

struct BootstrapResult {
    double point_predictor;
    std::vector<double> roots;  // Y*_{n+1} - Yhat*_{n+1}, in replicate order
    PredictionInterval interval;
};

/// The ceil(B * a)-th order statistic (1-indexed) of `values`.
double empirical_quantile(std::span<const double> values, double a);

/// Mean of F^{-1}(V_t | x_n) over the supplied ranks.
double mf_point_predictor(const ConditionalCdfModel& model, std::span<const double> x_n, std::span<const double> ranks);
double mf_point_predictor(const EmbeddedPairs& pairs, const Bandwidths& bw, std::span<const double> x_n,
                          std::span<const double> ranks);

/**
 * @brief Model-free bootstrap prediction interval for Y_{n+1} given X_n.
 *
 * Ranks the data through the fitted transition CDF (leave-one-out ranks when
 * `predictive`), regenerates B bootstrap paths by pushing resampled ranks
 * through the inverse CDF after an M-step warm-up, refits the CDF on each
 * path, and returns the equal-tailed interval built from the quantiles of the
 * bootstrap roots. Deterministic in (inputs, cfg); thread count does not change
 * the result.
 *
 * The lag rows of `pairs` must come from one series (as produced by embed):
 * initial warm-up blocks are drawn from that series.
 */
BootstrapResult mf_interval(const EmbeddedPairs& pairs, const Bandwidths& bw, std::span<const double> x_n,
                            NominalLevel alpha, const BootstrapConfig& cfg, bool predictive);

}  // namespace markovpi
