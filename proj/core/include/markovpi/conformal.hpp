#pragma once

#include "markovpi/kernels.hpp"
#include "markovpi/series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace markovpi {

/// Candidate future values scanned by the conformal engine; strictly increasing, at least two points.
class TrialGrid {
public:
    explicit TrialGrid(std::vector<double> points);
    [[nodiscard]] const std::vector<double>& points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }

private:
    std::vector<double> points_;
};

/// Half-width of the grid returned for an all-zero series.
inline constexpr double kDegenerateGridHalfWidth = 1e-8;

/// G equally spaced points on [-max|Y|, max|Y|]; {-1e-8, 1e-8} when the series is identically zero.
TrialGrid build_trial_grid(const TimeSeriesSample& series, std::size_t G);

struct ConformalTraceRow {
    double y;
    double pvalue;
    bool accepted;
};

struct ConformalTrace {
    /// N = pairs + 1; every p-value is a multiple of 1/N.
    std::size_t augmented_count = 0;
    std::vector<ConformalTraceRow> rows;
};

/**
 * @brief Conformal p-values for one-step-ahead candidates at a fixed X_n.
 *
 * For a candidate y the data are augmented with (X_n, y); every pair of the
 * augmented set is ranked through the kernel CDF fitted on it (leave-one-out
 * when `predictive`), scored by |rank - 1/2|, and the p-value is the share of
 * scores at least as large as the candidate's.
 *
 * All predictor weights and the original-vs-original kernel sums are computed
 * once, so each candidate costs O(N). Immutable after construction.
 */
class ConformalScorer {
public:
    ConformalScorer(const EmbeddedPairs& pairs, Bandwidths bw, std::span<const double> x_n, bool predictive);

    [[nodiscard]] double pvalue(double y) const;
    [[nodiscard]] std::size_t augmented_count() const noexcept { return responses_.size() + 1; }
    [[nodiscard]] bool predictive() const noexcept { return predictive_; }

private:
    double h0_;
    bool predictive_;
    std::vector<double> responses_;
    // Original pair t: rank(y) = (fixed_num_[t] + aug_weight_[t] * K((Y_t - y)/h0)) / (fixed_den_[t] + aug_weight_[t]).
    std::vector<double> fixed_num_;
    std::vector<double> fixed_den_;
    std::vector<double> aug_weight_;
    // Candidate pair: weights of the original pairs at X_n, plus its own weight.
    std::vector<double> cand_weight_;
    double cand_self_weight_;
    double cand_den_;
};

double mdcp_pvalue(const EmbeddedPairs& pairs, const Bandwidths& bw, std::span<const double> x_n, double y_cand,
                   bool predictive);

struct ConformalResult {
    PredictionInterval interval;
    ConformalTrace trace;
};

/**
 * Scans the grid, accepts candidates with p-value > alpha, and reports the hull
 * [min accepted, max accepted]. Throws EmptyAcceptedSet when nothing is accepted.
 */
ConformalResult conformal_interval(const EmbeddedPairs& pairs, const Bandwidths& bw, std::span<const double> x_n,
                                   const TrialGrid& grid, NominalLevel alpha, bool predictive,
                                   std::size_t threads = 1);

}  // namespace markovpi
