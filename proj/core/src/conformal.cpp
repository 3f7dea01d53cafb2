#include "markovpi/conformal.hpp"

#include "markovpi/error.hpp"
#include "markovpi/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace markovpi {

TrialGrid::TrialGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw Error(ErrorCode::InvalidArgument, "trial grid needs at least two points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i])) throw Error(ErrorCode::NonFiniteInput, "trial grid point is not finite");
        if (i > 0 && !(points_[i] > points_[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "trial grid must be strictly increasing");
        }
    }
}

TrialGrid build_trial_grid(const TimeSeriesSample& series, std::size_t G) {
    if (G < 2) throw Error(ErrorCode::InvalidArgument, "trial grid needs at least two points");
    const double m = series.max_abs();
    if (m == 0.0) return TrialGrid({-kDegenerateGridHalfWidth, kDegenerateGridHalfWidth});
    std::vector<double> pts(G);
    const double step = 2.0 * m / static_cast<double>(G - 1);
    for (std::size_t i = 0; i < G; ++i) pts[i] = -m + step * static_cast<double>(i);
    pts.front() = -m;
    pts.back() = m;
    return TrialGrid(std::move(pts));
}

ConformalScorer::ConformalScorer(const EmbeddedPairs& pairs, Bandwidths bw, std::span<const double> x_n,
                                 bool predictive)
    : h0_(bw.h0()), predictive_(predictive) {
    const std::size_t n = pairs.size();
    if (x_n.size() != pairs.order()) {
        throw Error(ErrorCode::DimensionMismatch, "X_n dimension does not match the Markov order");
    }
    for (double v : x_n) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "X_n must be finite");
    }
    const double h = bw.h();
    responses_.assign(pairs.responses().begin(), pairs.responses().end());
    fixed_num_.resize(n);
    fixed_den_.resize(n);
    aug_weight_.resize(n);
    cand_weight_.resize(n);

    std::vector<double> logs(n);
    for (std::size_t t = 0; t < n; ++t) {
        const auto xt = pairs.predictor(t);
        double max_log = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (predictive && i == t) continue;
            logs[i] = -0.5 * scaled_sq_distance(pairs.predictor(i), xt, h);
            max_log = std::max(max_log, logs[i]);
        }
        const double log_aug = -0.5 * scaled_sq_distance(x_n, xt, h);
        max_log = std::max(max_log, log_aug);
        if (!std::isfinite(max_log)) {
            throw Error(ErrorCode::DegenerateWeights, "augmented weights vanish at pair " + std::to_string(t));
        }
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (predictive && i == t) continue;
            const double w = std::exp(logs[i] - max_log);
            num += w * smooth_cdf_kernel((responses_[t] - responses_[i]) / h0_);
            den += w;
        }
        fixed_num_[t] = num;
        fixed_den_[t] = den;
        aug_weight_[t] = std::exp(log_aug - max_log);
    }

    // The candidate's own weight has log 0 (zero distance to itself).
    double max_log = predictive ? -std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        logs[i] = -0.5 * scaled_sq_distance(pairs.predictor(i), x_n, h);
        max_log = std::max(max_log, logs[i]);
    }
    if (!std::isfinite(max_log)) {
        throw Error(ErrorCode::DegenerateWeights, "candidate weights vanish at X_n");
    }
    cand_den_ = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cand_weight_[i] = std::exp(logs[i] - max_log);
        cand_den_ += cand_weight_[i];
    }
    cand_self_weight_ = predictive ? 0.0 : std::exp(-max_log);
    cand_den_ += cand_self_weight_;
}

double ConformalScorer::pvalue(double y) const {
    if (!std::isfinite(y)) throw Error(ErrorCode::NonFiniteInput, "candidate value must be finite");
    const std::size_t n = responses_.size();

    double cand_num = 0.0;
    for (std::size_t i = 0; i < n; ++i) cand_num += cand_weight_[i] * smooth_cdf_kernel((y - responses_[i]) / h0_);
    cand_num += cand_self_weight_ * smooth_cdf_kernel(0.0);
    const double cand_score = std::abs(cand_num / cand_den_ - 0.5);

    std::size_t at_least = 1;  // the candidate compared with itself
    for (std::size_t t = 0; t < n; ++t) {
        const double num = fixed_num_[t] + aug_weight_[t] * smooth_cdf_kernel((responses_[t] - y) / h0_);
        const double rank = num / (fixed_den_[t] + aug_weight_[t]);
        if (std::abs(rank - 0.5) >= cand_score) ++at_least;
    }
    return static_cast<double>(at_least) / static_cast<double>(n + 1);
}

double mdcp_pvalue(const EmbeddedPairs& pairs, const Bandwidths& bw, std::span<const double> x_n, double y_cand,
                   bool predictive) {
    return ConformalScorer(pairs, bw, x_n, predictive).pvalue(y_cand);
}

ConformalResult conformal_interval(const EmbeddedPairs& pairs, const Bandwidths& bw, std::span<const double> x_n,
                                   const TrialGrid& grid, NominalLevel alpha, bool predictive, std::size_t threads) {
    const ConformalScorer scorer(pairs, bw, x_n, predictive);
    const auto& pts = grid.points();

    ConformalTrace trace;
    trace.augmented_count = scorer.augmented_count();
    trace.rows.resize(pts.size());
    parallel_for(pts.size(), threads, [&](std::size_t g) {
        const double p = scorer.pvalue(pts[g]);
        trace.rows[g] = {pts[g], p, p > alpha.alpha()};
    });

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& row : trace.rows) {
        if (!row.accepted) continue;
        lo = std::min(lo, row.y);
        hi = std::max(hi, row.y);
    }
    if (!(lo <= hi)) {
        throw Error(ErrorCode::EmptyAcceptedSet,
                    "no trial value has p-value above alpha=" + std::to_string(alpha.alpha()) + " (N=" +
                        std::to_string(scorer.augmented_count()) + ")");
    }
    const Method method = predictive ? Method::PMDCP : Method::MDCP;
    return {PredictionInterval(lo, hi, alpha, method), std::move(trace)};
}

}  // namespace markovpi
