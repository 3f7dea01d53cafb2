#include "markovpi/cdf.hpp"

#include "markovpi/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace markovpi {

ConditionalCdfModel::ConditionalCdfModel(EmbeddedPairs pairs, Bandwidths bw)
    : data_(std::move(pairs)), bw_(bw) {
    index_responses();
}

ConditionalCdfModel::ConditionalCdfModel(const EmbeddedPairs& pairs, Bandwidths bw,
                                         std::span<const double> augment_predictor, double augment_response)
    : data_(pairs.with_appended(augment_predictor, augment_response)), bw_(bw), augmented_(true) {
    index_responses();
}

void ConditionalCdfModel::index_responses() {
    order_.resize(data_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return data_.response(a) < data_.response(b); });
    sorted_responses_.resize(order_.size());
    for (std::size_t k = 0; k < order_.size(); ++k) sorted_responses_[k] = data_.response(order_[k]);
}

ConditionalSlice ConditionalCdfModel::slice(std::span<const double> x, std::optional<std::size_t> excluded) const {
    return {*this, x, excluded};
}

double ConditionalCdfModel::estimate(std::span<const double> x, double y) const {
    if (!std::isfinite(y)) throw Error(ErrorCode::NonFiniteInput, "query response must be finite");
    return slice(x).cdf(y);
}

double ConditionalCdfModel::invert(std::span<const double> x, double v) const { return slice(x).quantile(v); }

ConditionalSlice::ConditionalSlice(const ConditionalCdfModel& model, std::span<const double> x,
                                   std::optional<std::size_t> excluded)
    : model_(&model) {
    const EmbeddedPairs& data = model.data_;
    if (x.size() != data.order()) {
        throw Error(ErrorCode::DimensionMismatch, "query predictor has dimension " + std::to_string(x.size()) +
                                                      ", expected " + std::to_string(data.order()));
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, "query predictor must be finite");
    }
    if (excluded && *excluded >= data.size()) {
        throw Error(ErrorCode::InvalidIndex, "left-out pair index out of range");
    }

    const std::size_t n = data.size();
    const double h = model.bw_.h();
    // Log weights up to the constant (2 pi)^{-p/2} h^{-p}, which cancels in the ratio.
    weights_.assign(n, -std::numeric_limits<double>::infinity());
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = model.order_[k];
        if (excluded && *excluded == i) continue;
        const double lw = -0.5 * scaled_sq_distance(data.predictor(i), x, h);
        weights_[k] = lw;
        max_log = std::max(max_log, lw);
    }
    if (!std::isfinite(max_log)) {
        throw Error(ErrorCode::DegenerateWeights, "all predictor weights vanish at the query point");
    }
    prefix_.resize(n + 1);
    prefix_[0] = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        weights_[k] = std::exp(weights_[k] - max_log);
        prefix_[k + 1] = prefix_[k] + weights_[k];
    }
}

std::pair<std::size_t, std::size_t> ConditionalSlice::window(double y) const noexcept {
    const auto& ys = model_->sorted_responses_;
    const double reach = kKernelSupport * model_->bw_.h0();
    // Responses with Y + 2 h0 <= y contribute their full weight, those with
    // Y - 2 h0 >= y nothing. Testing the same expressions that define the
    // support edges makes F exactly 0 and 1 there.
    const auto first_partial = std::partition_point(ys.begin(), ys.end(), [&](double v) { return v + reach <= y; });
    const auto first_zero = std::partition_point(first_partial, ys.end(), [&](double v) { return v - reach < y; });
    return {static_cast<std::size_t>(first_partial - ys.begin()), static_cast<std::size_t>(first_zero - ys.begin())};
}

double ConditionalSlice::cdf(double y) const noexcept {
    const auto& ys = model_->sorted_responses_;
    const double h0 = model_->bw_.h0();
    const auto [first_partial, first_zero] = window(y);
    double num = prefix_[first_partial];
    for (std::size_t k = first_partial; k < first_zero; ++k) {
        num += weights_[k] * smooth_cdf_kernel((y - ys[k]) / h0);
    }
    return std::min(1.0, num / prefix_.back());
}

std::pair<double, double> ConditionalSlice::cdf_and_density(double y) const noexcept {
    const auto& ys = model_->sorted_responses_;
    const double h0 = model_->bw_.h0();
    const auto [first_partial, first_zero] = window(y);
    double num = prefix_[first_partial];
    double slope = 0.0;
    for (std::size_t k = first_partial; k < first_zero; ++k) {
        const double z = (y - ys[k]) / h0;
        num += weights_[k] * smooth_cdf_kernel(z);
        slope += weights_[k] * smooth_cdf_kernel_density(z);
    }
    const double den = prefix_.back();
    return {std::min(1.0, num / den), slope / (h0 * den)};
}

double ConditionalSlice::quantile(double v) const {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::InvalidProbability, "probability level must lie in [0, 1]");
    }
    const double lower = model_->support_lower();
    if (cdf(lower) >= v) return lower;

    // The unsmoothed weight CDF first reaches v at sorted response k, and the
    // kernel moves mass by at most 2 h0, so the answer lies within 2 h0 of Y_(k).
    const auto& ys = model_->sorted_responses_;
    const double reach = kKernelSupport * model_->bw_.h0();
    const double target = v * prefix_.back();
    const auto k = std::min<std::size_t>(
        static_cast<std::size_t>(std::lower_bound(prefix_.begin() + 1, prefix_.end(), target) - prefix_.begin() - 1),
        ys.size() - 1);
    double lo = std::max(lower, ys[k] - reach);
    double hi = std::min(model_->support_upper(), ys[k] + reach);
    // Guard the invariant cdf(lo) < v <= cdf(hi) against rounding.
    if (cdf(lo) >= v) lo = lower;
    if (cdf(hi) < v) hi = model_->support_upper();

    // Newton steps from the bracket, falling back to bisection when a step
    // leaves it; once a step is below tolerance, probes on both sides of the
    // estimate close the bracket.
    const double half_tol = 0.5 * kInversionTolerance;
    double y = 0.5 * (lo + hi);
    for (int it = 0; it < kInversionMaxIterations && hi - lo > kInversionTolerance; ++it) {
        const auto [f, d] = cdf_and_density(y);
        if (f >= v) {
            hi = y;
        } else {
            lo = y;
        }
        if (hi - lo <= kInversionTolerance) break;
        double next = d > 0.0 ? y - (f - v) / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - y) < half_tol) {
            const double a = next - half_tol;
            const double b = next + half_tol;
            if (a > lo && a < hi) (cdf(a) >= v ? hi : lo) = a;
            if (b > lo && b < hi) (cdf(b) >= v ? hi : lo) = b;
            next = 0.5 * (lo + hi);
        }
        y = next;
    }
    return hi;
}

double estimate(const ConditionalCdfModel& model, std::span<const double> x, double y) {
    return model.estimate(x, y);
}

double estimate_loo(const EmbeddedPairs& pairs, const Bandwidths& bw, std::size_t t, std::span<const double> x,
                    double y) {
    if (t >= pairs.size()) throw Error(ErrorCode::InvalidIndex, "left-out pair index out of range");
    if (!std::isfinite(y)) throw Error(ErrorCode::NonFiniteInput, "query response must be finite");
    const ConditionalCdfModel model(pairs, bw);
    return model.slice(x, t).cdf(y);
}

std::vector<double> transform_ranks(const ConditionalCdfModel& model, bool loo) {
    const EmbeddedPairs& pairs = model.data();
    std::vector<double> ranks(pairs.size());
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        const auto excluded = loo ? std::optional<std::size_t>(t) : std::nullopt;
        ranks[t] = model.slice(pairs.predictor(t), excluded).cdf(pairs.response(t));
    }
    return ranks;
}

std::vector<double> transform_ranks(const EmbeddedPairs& pairs, const Bandwidths& bw, bool loo) {
    return transform_ranks(ConditionalCdfModel(pairs, bw), loo);
}

double invert(const ConditionalCdfModel& model, std::span<const double> x, double v) { return model.invert(x, v); }

}  // namespace markovpi
