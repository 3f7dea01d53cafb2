#pragma once

#include "markovpi/kernels.hpp"
#include "markovpi/series.hpp"

#include <cstddef>
#include <vector>

namespace markovpi {

/// Candidate values for each bandwidth; both lists nonempty, positive and strictly increasing.
class BandwidthGrid {
public:
    BandwidthGrid(std::vector<double> h_candidates, std::vector<double> h0_candidates);

    [[nodiscard]] const std::vector<double>& h_candidates() const noexcept { return h_; }
    [[nodiscard]] const std::vector<double>& h0_candidates() const noexcept { return h0_; }
    [[nodiscard]] std::size_t size() const noexcept { return h_.size() * h0_.size(); }

private:
    std::vector<double> h_;
    std::vector<double> h0_;
};

/// h = sigma * n^{-1/(4+p)}, h0 = sigma * n^{-2/(4+p)}.
Bandwidths rule_of_thumb(std::size_t n, std::size_t p, double sigma_hat);

/// Multipliers {1/4, 1/2, 1/sqrt 2, 1, sqrt 2, 2, 4} applied to the rule-of-thumb pair.
BandwidthGrid default_grid(std::size_t n, std::size_t p, double sigma_hat);

/// Evaluation points above this count are subsampled (fixed seed) in the CV criterion.
inline constexpr std::size_t kMaxCvEvaluationPoints = 2000;

/**
 * @brief Leave-one-out least-squares CV criterion for conditional CDF bandwidths.
 *
 * CV(h, h0) = sum_t sum_s [ 1{Y_t <= Y_s} - F_{-t}(Y_s | X_t) ]^2,
 * where F_{-t} omits pair t. Straight evaluation, one candidate.
 */
double cv_criterion(const EmbeddedPairs& pairs, const Bandwidths& bw);

struct CvSelection {
    Bandwidths selected;
    /// Criterion per grid point, row-major over (h index, h0 index).
    std::vector<double> criterion;
};

/**
 * Evaluates the CV criterion on every grid point and returns the argmin, ties
 * going to the smaller h, then the smaller h0. Throws DegenerateData when every
 * response is identical.
 */
CvSelection cv_evaluate(const EmbeddedPairs& pairs, const BandwidthGrid& grid, std::size_t threads = 1);

Bandwidths cv_select(const EmbeddedPairs& pairs, const BandwidthGrid& grid, std::size_t threads = 1);

}  // namespace markovpi
