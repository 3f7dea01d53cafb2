#include "markovpi/bandwidth.hpp"

#include "markovpi/error.hpp"
#include "markovpi/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

namespace markovpi {

namespace {

void require_increasing_positive(const std::vector<double>& v, const char* what) {
    if (v.empty()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " candidate list is empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(std::isfinite(v[i]) && v[i] > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, std::string(what) + " candidates must be finite and positive");
        }
        if (i > 0 && !(v[i] > v[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, std::string(what) + " candidates must be strictly increasing");
        }
    }
}

// Leave-one-out predictor weights: row t holds W_h(X_i, X_t) for i != t scaled
// by the row maximum, with a zero diagonal.
struct LooWeights {
    Eigen::MatrixXd w;
    Eigen::VectorXd row_sum;
};

LooWeights loo_weights(const EmbeddedPairs& pairs, double h) {
    const auto n = static_cast<Eigen::Index>(pairs.size());
    LooWeights out{Eigen::MatrixXd::Zero(n, n), Eigen::VectorXd::Zero(n)};
    std::vector<double> logs(pairs.size());
    for (Eigen::Index t = 0; t < n; ++t) {
        double max_log = -std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == t) continue;
            const double lw = -0.5 * scaled_sq_distance(pairs.predictor(static_cast<std::size_t>(i)),
                                                        pairs.predictor(static_cast<std::size_t>(t)), h);
            logs[static_cast<std::size_t>(i)] = lw;
            max_log = std::max(max_log, lw);
        }
        if (!std::isfinite(max_log)) {
            throw Error(ErrorCode::DegenerateWeights, "leave-one-out weights vanish during bandwidth selection");
        }
        double sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == t) continue;
            const double w = std::exp(logs[static_cast<std::size_t>(i)] - max_log);
            out.w(t, i) = w;
            sum += w;
        }
        out.row_sum(t) = sum;
    }
    return out;
}

// Rows: evaluation points Y_s; columns: stored responses Y_i.
Eigen::MatrixXd response_kernel(const std::vector<double>& eval_y, std::span<const double> responses, double h0) {
    const auto ns = static_cast<Eigen::Index>(eval_y.size());
    const auto n = static_cast<Eigen::Index>(responses.size());
    Eigen::MatrixXd k(ns, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index s = 0; s < ns; ++s) {
            k(s, i) = smooth_cdf_kernel((eval_y[static_cast<std::size_t>(s)] - responses[static_cast<std::size_t>(i)]) / h0);
        }
    }
    return k;
}

std::vector<double> evaluation_points(const EmbeddedPairs& pairs) {
    const auto ys = pairs.responses();
    std::vector<double> out(ys.begin(), ys.end());
    if (out.size() <= kMaxCvEvaluationPoints) return out;
    std::vector<std::size_t> idx(out.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(0x5eed0fcbULL);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(kMaxCvEvaluationPoints);
    std::sort(idx.begin(), idx.end());
    std::vector<double> sub;
    sub.reserve(idx.size());
    for (std::size_t i : idx) sub.push_back(ys[i]);
    return sub;
}

double criterion_from(const LooWeights& lw, const Eigen::MatrixXd& kernel, const std::vector<double>& eval_y,
                      std::span<const double> responses) {
    const Eigen::MatrixXd num = lw.w * kernel.transpose();
    double total = 0.0;
    for (Eigen::Index s = 0; s < num.cols(); ++s) {
        const double ys = eval_y[static_cast<std::size_t>(s)];
        for (Eigen::Index t = 0; t < num.rows(); ++t) {
            const double indicator = responses[static_cast<std::size_t>(t)] <= ys ? 1.0 : 0.0;
            const double diff = indicator - num(t, s) / lw.row_sum(t);
            total += diff * diff;
        }
    }
    return total;
}

void require_cv_data(const EmbeddedPairs& pairs) {
    if (pairs.size() < 3) {
        throw Error(ErrorCode::InvalidArgument, "bandwidth cross-validation needs at least three pairs");
    }
    const auto ys = pairs.responses();
    const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
    if (*lo == *hi) {
        throw Error(ErrorCode::DegenerateData, "all responses are identical; the CV criterion is constant");
    }
}

}  // namespace

BandwidthGrid::BandwidthGrid(std::vector<double> h_candidates, std::vector<double> h0_candidates)
    : h_(std::move(h_candidates)), h0_(std::move(h0_candidates)) {
    require_increasing_positive(h_, "h");
    require_increasing_positive(h0_, "h0");
}

Bandwidths rule_of_thumb(std::size_t n, std::size_t p, double sigma_hat) {
    if (p == 0) throw Error(ErrorCode::InvalidArgument, "Markov order must be at least 1");
    if (n < p + 2) throw Error(ErrorCode::OrderTooLarge, "sample too short for the requested order");
    if (!(std::isfinite(sigma_hat) && sigma_hat > 0.0)) {
        throw Error(ErrorCode::DegenerateData, "scale estimate must be positive for rule-of-thumb bandwidths");
    }
    const double nd = static_cast<double>(n);
    const double denom = 4.0 + static_cast<double>(p);
    return {sigma_hat * std::pow(nd, -1.0 / denom), sigma_hat * std::pow(nd, -2.0 / denom)};
}

BandwidthGrid default_grid(std::size_t n, std::size_t p, double sigma_hat) {
    const Bandwidths base = rule_of_thumb(n, p, sigma_hat);
    const double r2 = std::sqrt(2.0);
    const std::vector<double> mult{0.25, 0.5, 1.0 / r2, 1.0, r2, 2.0, 4.0};
    std::vector<double> hs;
    std::vector<double> h0s;
    for (double m : mult) {
        hs.push_back(m * base.h());
        h0s.push_back(m * base.h0());
    }
    return {std::move(hs), std::move(h0s)};
}

double cv_criterion(const EmbeddedPairs& pairs, const Bandwidths& bw) {
    require_cv_data(pairs);
    const auto eval_y = evaluation_points(pairs);
    return criterion_from(loo_weights(pairs, bw.h()), response_kernel(eval_y, pairs.responses(), bw.h0()), eval_y,
                          pairs.responses());
}

CvSelection cv_evaluate(const EmbeddedPairs& pairs, const BandwidthGrid& grid, std::size_t threads) {
    require_cv_data(pairs);
    const auto& hs = grid.h_candidates();
    const auto& h0s = grid.h0_candidates();
    const auto eval_y = evaluation_points(pairs);

    std::vector<std::optional<LooWeights>> weights(hs.size());
    std::vector<Eigen::MatrixXd> kernels(h0s.size());
    parallel_for(hs.size() + h0s.size(), threads, [&](std::size_t j) {
        if (j < hs.size()) {
            weights[j] = loo_weights(pairs, hs[j]);
        } else {
            const std::size_t k = j - hs.size();
            kernels[k] = response_kernel(eval_y, pairs.responses(), h0s[k]);
        }
    });

    std::vector<double> crit(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t j) {
        const std::size_t a = j / h0s.size();
        const std::size_t b = j % h0s.size();
        crit[j] = criterion_from(*weights[a], kernels[b], eval_y, pairs.responses());
    });

    // Row-major scan with strict < keeps the smallest h, then h0, among ties.
    std::size_t best = 0;
    for (std::size_t j = 1; j < crit.size(); ++j) {
        if (crit[j] < crit[best]) best = j;
    }
    return {Bandwidths(hs[best / h0s.size()], h0s[best % h0s.size()]), std::move(crit)};
}

Bandwidths cv_select(const EmbeddedPairs& pairs, const BandwidthGrid& grid, std::size_t threads) {
    return cv_evaluate(pairs, grid, threads).selected;
}

}  // namespace markovpi
