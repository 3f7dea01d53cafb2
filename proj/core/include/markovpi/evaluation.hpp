#pragma once

#include "markovpi/kernels.hpp"
#include "markovpi/series.hpp"
#include "markovpi/simulation.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace markovpi {

enum class BandwidthMode { CrossValidation, RuleOfThumb, Fixed };

struct BandwidthPolicy {
    BandwidthMode mode = BandwidthMode::CrossValidation;
    std::optional<Bandwidths> fixed;  // required for Fixed
};

/// Bandwidths for one fitted sample according to the policy.
Bandwidths select_bandwidths(const TimeSeriesSample& series, const EmbeddedPairs& pairs,
                             const BandwidthPolicy& policy, std::size_t threads = 1);

/// Tuning knobs shared by every interval method.
struct MethodKnobs {
    std::size_t p = 1;
    std::size_t B = 250;
    std::size_t M = 100;
    std::size_t G = 200;
    std::size_t threads = 1;
    BandwidthPolicy bandwidth;
};

/// Everything an interval method sees for one fit.
struct PredictionTask {
    const TimeSeriesSample& series;
    const EmbeddedPairs& pairs;
    const Bandwidths& bw;
    std::span<const double> x_n;
    NominalLevel alpha;
    std::uint64_t seed;
};

using IntervalMethod = std::function<PredictionInterval(const PredictionTask&)>;

/// The library implementation of `method`, configured by `knobs` (bandwidth policy excluded).
IntervalMethod make_method(Method method, const MethodKnobs& knobs);

/// Fit on `series` and predict its next value: embed, select bandwidths, run the method at X_n.
PredictionInterval predict_next(const TimeSeriesSample& series, Method method, NominalLevel alpha,
                                const MethodKnobs& knobs, std::uint64_t seed);

struct CoverageScore {
    double cvr;
    double len;
};

/// Share of futures inside the closed interval, and the interval length.
CoverageScore cvr_len(const PredictionInterval& interval, std::span<const double> futures);

struct ReplicationRecord {
    std::size_t index;
    std::uint64_t seed;
    double x_n;
    double lower;
    double upper;
    double cvr;
    double len;
};

struct ReplicationFailure {
    std::size_t index;
    std::uint64_t seed;
    std::string error;
};

struct CoverageReport {
    double cvr_mean = 0.0;
    double len_mean = 0.0;
    double cvr_sd = 0.0;
    double len_sd = 0.0;
    std::vector<ReplicationRecord> replications;  // successful ones, by index
    std::vector<ReplicationFailure> failures;
};

/// Largest tolerated share of failed replications before a run aborts.
inline constexpr double kMaxFailureShare = 0.01;

/**
 * @brief Monte Carlo coverage experiment.
 *
 * R replications of: simulate -> select bandwidths -> interval at X_n -> score
 * against S oracle futures. Replication i derives all of its randomness from
 * derive_seed(spec.seed, i), so results do not depend on knobs.threads.
 * Failed replications are recorded; more than 1% of them aborts the run with
 * ReplicationFailures.
 */
CoverageReport monte_carlo(const DgpSpec& spec, const IntervalMethod& method, NominalLevel alpha, std::size_t R,
                           std::size_t S, const MethodKnobs& knobs);
CoverageReport monte_carlo(const DgpSpec& spec, Method method, NominalLevel alpha, std::size_t R, std::size_t S,
                           const MethodKnobs& knobs);

struct RollingStep {
    std::size_t t;  // 1-based index of the predicted observation
    double actual;
    bool ok;
    double lower;
    double upper;
    bool hit;
    std::string error;
};

struct RollingReport {
    double cvr = 0.0;
    double len = 0.0;
    double len_sd = 0.0;
    std::size_t evaluated = 0;
    std::size_t failed = 0;
    std::vector<RollingStep> steps;
};

/**
 * @brief Rolling-window out-of-sample evaluation.
 *
 * For t = w+1..n, fits on Y_{t-w}..Y_{t-1} and predicts Y_t. Failed windows are
 * recorded and excluded from the averages. Requires n > w >= p + 10.
 */
RollingReport rolling_eval(const TimeSeriesSample& series, std::size_t w, const IntervalMethod& method,
                           NominalLevel alpha, const MethodKnobs& knobs, std::uint64_t seed);
RollingReport rolling_eval(const TimeSeriesSample& series, std::size_t w, Method method, NominalLevel alpha,
                           const MethodKnobs& knobs, std::uint64_t seed);

/// Sample mean and standard deviation (n - 1 denominator; 0 when fewer than two values).
struct MeanSd {
    double mean;
    double sd;
};
MeanSd mean_sd(std::span<const double> values);

}  // namespace markovpi
