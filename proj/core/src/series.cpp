#include "markovpi/series.hpp"

#include "markovpi/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

namespace markovpi {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(ErrorCode::NonFiniteInput,
                        std::string(what) + " value at index " + std::to_string(i) + " is not finite");
        }
    }
}

}  // namespace

TimeSeriesSample::TimeSeriesSample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "time series must contain at least one observation");
    }
    require_finite(values_, "series");
}

double TimeSeriesSample::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double TimeSeriesSample::sample_sd() const noexcept {
    if (values_.size() < 2) return 0.0;
    const double n = static_cast<double>(values_.size());
    const double mean = std::accumulate(values_.begin(), values_.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values_) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (n - 1.0));
}

EmbeddedPairs::EmbeddedPairs(std::size_t order, std::vector<double> predictors, std::vector<double> responses)
    : order_(order), predictors_(std::move(predictors)), responses_(std::move(responses)) {
    if (order_ == 0) throw Error(ErrorCode::InvalidArgument, "Markov order must be at least 1");
    if (predictors_.size() != order_ * responses_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "predictor block does not match order x pair count");
    }
    if (responses_.size() < 2) {
        throw Error(ErrorCode::OrderTooLarge, "at least two embedded pairs are required");
    }
    require_finite(predictors_, "predictor");
    require_finite(responses_, "response");
}

EmbeddedPairs EmbeddedPairs::without(std::size_t k) const {
    if (k >= size()) throw Error(ErrorCode::InvalidIndex, "pair index out of range");
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(predictors_.size() - order_);
    y.reserve(responses_.size() - 1);
    for (std::size_t i = 0; i < size(); ++i) {
        if (i == k) continue;
        auto row = predictor(i);
        x.insert(x.end(), row.begin(), row.end());
        y.push_back(responses_[i]);
    }
    return {order_, std::move(x), std::move(y)};
}

EmbeddedPairs EmbeddedPairs::with_appended(std::span<const double> predictor_row, double response) const {
    if (predictor_row.size() != order_) {
        throw Error(ErrorCode::DimensionMismatch, "appended predictor has wrong dimension");
    }
    std::vector<double> x(predictors_);
    std::vector<double> y(responses_);
    x.insert(x.end(), predictor_row.begin(), predictor_row.end());
    y.push_back(response);
    return {order_, std::move(x), std::move(y)};
}

NominalLevel::NominalLevel(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "alpha must lie strictly between 0 and 1");
    }
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::MF: return "MF";
        case Method::PMF: return "PMF";
        case Method::MDCP: return "MDCP";
        case Method::PMDCP: return "PMDCP";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (Method m : {Method::MF, Method::PMF, Method::MDCP, Method::PMDCP}) {
        if (upper == to_string(m)) return m;
    }
    return std::nullopt;
}

PredictionInterval::PredictionInterval(double lo, double hi, NominalLevel lvl, Method m)
    : lower(lo), upper(hi), level(lvl), method(m) {
    if (!std::isfinite(lower) || !std::isfinite(upper)) {
        throw Error(ErrorCode::NonFiniteInput, "prediction interval endpoints must be finite");
    }
    if (lower > upper) {
        throw Error(ErrorCode::InvalidArgument, "prediction interval lower bound exceeds upper bound");
    }
}

EmbeddedPairs embed(const TimeSeriesSample& series, std::size_t p) {
    if (p == 0) throw Error(ErrorCode::InvalidArgument, "Markov order must be at least 1");
    const std::size_t n = series.size();
    if (n < p + 2) {
        throw Error(ErrorCode::OrderTooLarge, "series of length " + std::to_string(n) +
                                                  " is too short for order " + std::to_string(p));
    }
    const std::size_t count = n - p;
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(count * p);
    y.reserve(count);
    // 0-based: response index r = p..n-1, lag s takes series[r - s].
    for (std::size_t r = p; r < n; ++r) {
        for (std::size_t s = 1; s <= p; ++s) x.push_back(series[r - s]);
        y.push_back(series[r]);
    }
    return {p, std::move(x), std::move(y)};
}

std::vector<double> last_predictor(const TimeSeriesSample& series, std::size_t p) {
    if (p == 0) throw Error(ErrorCode::InvalidArgument, "Markov order must be at least 1");
    const std::size_t n = series.size();
    if (n < p) {
        throw Error(ErrorCode::OrderTooLarge, "series of length " + std::to_string(n) +
                                                  " has no lag vector of order " + std::to_string(p));
    }
    std::vector<double> x(p);
    for (std::size_t s = 0; s < p; ++s) x[s] = series[n - 1 - s];
    return x;
}

}  // namespace markovpi
