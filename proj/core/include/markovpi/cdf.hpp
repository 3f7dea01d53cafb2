#pragma once

#include "markovpi/kernels.hpp"
#include "markovpi/series.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace markovpi {

class ConditionalCdfModel;

/**
 * @brief The smoothed conditional CDF y -> F(y | x) frozen at one predictor x.
 *
 * Holds the normalized predictor weights of every stored pair, ordered by
 * response, plus their running sums. Since K is exactly 0 below -2 and exactly
 * 1 above 2, an evaluation only calls K for responses within 2 * h0 of y.
 *
 * A slice borrows the model it was built from and must not outlive it.
 */
class ConditionalSlice {
public:
    /// F(y | x), in [0, 1] and nondecreasing in y.
    [[nodiscard]] double cdf(double y) const noexcept;

    /**
     * Smallest y with cdf(y) >= v, located to absolute tolerance 1e-8 inside
     * [min Y - 2 h0, max Y + 2 h0] by a bracketed Newton search (at most 200
     * steps). Throws InvalidProbability if v is outside [0, 1].
     */
    [[nodiscard]] double quantile(double v) const;

private:
    friend class ConditionalCdfModel;
    ConditionalSlice(const ConditionalCdfModel& model, std::span<const double> x,
                     std::optional<std::size_t> excluded);

    std::pair<std::size_t, std::size_t> window(double y) const noexcept;
    std::pair<double, double> cdf_and_density(double y) const noexcept;

    const ConditionalCdfModel* model_;
    std::vector<double> weights_;  // in response order
    std::vector<double> prefix_;   // prefix_[k] = sum of weights_[0..k)
};

/// Tolerance and step cap used by every inversion of the estimated CDF.
inline constexpr double kInversionTolerance = 1e-8;
inline constexpr int kInversionMaxIterations = 200;

/**
 * @brief Kernel-smoothed conditional CDF estimator of a Markov(p) transition law.
 *
 * F(y | x) = sum_i W_h(X_i, x) K((y - Y_i) / h0) / sum_i W_h(X_i, x), summed over
 * the stored pairs and the optional augmenting pair (which is appended after
 * the stored pairs). Immutable; safe to query from many threads.
 */
class ConditionalCdfModel {
public:
    ConditionalCdfModel(EmbeddedPairs pairs, Bandwidths bw);
    ConditionalCdfModel(const EmbeddedPairs& pairs, Bandwidths bw, std::span<const double> augment_predictor,
                        double augment_response);

    /// Every pair the estimator sums over, including the augmenting pair if any.
    [[nodiscard]] const EmbeddedPairs& data() const noexcept { return data_; }
    [[nodiscard]] const Bandwidths& bandwidths() const noexcept { return bw_; }
    [[nodiscard]] bool augmented() const noexcept { return augmented_; }

    [[nodiscard]] double min_response() const noexcept { return sorted_responses_.front(); }
    [[nodiscard]] double max_response() const noexcept { return sorted_responses_.back(); }

    /// Left and right edges of the region where F moves strictly between 0 and 1.
    [[nodiscard]] double support_lower() const noexcept { return min_response() - kKernelSupport * bw_.h0(); }
    [[nodiscard]] double support_upper() const noexcept { return max_response() + kKernelSupport * bw_.h0(); }

    /// Slice at x; if `excluded` names a pair, that pair's weight is zero (leave-one-out).
    [[nodiscard]] ConditionalSlice slice(std::span<const double> x,
                                         std::optional<std::size_t> excluded = std::nullopt) const;

    [[nodiscard]] double estimate(std::span<const double> x, double y) const;
    [[nodiscard]] double invert(std::span<const double> x, double v) const;

private:
    friend class ConditionalSlice;
    void index_responses();

    EmbeddedPairs data_;
    Bandwidths bw_;
    bool augmented_ = false;
    std::vector<std::size_t> order_;          // pair indices sorted by response
    std::vector<double> sorted_responses_;
};

/// Plain estimate F(y | x) over `pairs`.
double estimate(const ConditionalCdfModel& model, std::span<const double> x, double y);

/// Leave-one-out estimate: pair t removed from numerator and denominator.
double estimate_loo(const EmbeddedPairs& pairs, const Bandwidths& bw, std::size_t t, std::span<const double> x,
                    double y);

/**
 * @brief Probability integral transform of each pair through the fitted CDF.
 *
 * Returns F(Y_t | X_{t-1}) for every pair t, using the leave-one-out estimate
 * when `loo` is set.
 */
std::vector<double> transform_ranks(const EmbeddedPairs& pairs, const Bandwidths& bw, bool loo);

/// Same as transform_ranks, reusing an already built model of `pairs`.
std::vector<double> transform_ranks(const ConditionalCdfModel& model, bool loo);

double invert(const ConditionalCdfModel& model, std::span<const double> x, double v);

}  // namespace markovpi
