#include "markovpi/bootstrap.hpp"

#include "markovpi/error.hpp"
#include "markovpi/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace markovpi {

namespace {

// Y_1..Y_n recovered from embedded pairs: the first lag row reversed, then every response.
std::vector<double> underlying_series(const EmbeddedPairs& pairs) {
    const std::size_t p = pairs.order();
    std::vector<double> y;
    y.reserve(pairs.size() + p);
    const auto first = pairs.predictor(0);
    for (std::size_t s = p; s-- > 0;) y.push_back(first[s]);
    const auto resp = pairs.responses();
    y.insert(y.end(), resp.begin(), resp.end());
    return y;
}

double mean_inverse(const ConditionalSlice& slice, std::span<const double> levels) {
    double sum = 0.0;
    for (double v : levels) sum += slice.quantile(v);
    return sum / static_cast<double>(levels.size());
}

struct ReplicateContext {
    const ConditionalCdfModel& model;
    const ConditionalSlice& future_slice;  // original fit at X_n
    std::span<const double> ranks;
    std::span<const double> observed;
    std::span<const double> x_n;
    std::size_t warmup;
    bool predictive;
};

double bootstrap_root(const ReplicateContext& ctx, std::uint64_t seed) {
    const std::size_t p = ctx.x_n.size();
    const std::size_t n = ctx.observed.size();
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick_rank(0, ctx.ranks.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_block(0, n - p);

    // Path slots 0..M+n+1 stand for times t = -M..n+1.
    const std::size_t len = ctx.warmup + n + 2;
    std::vector<double> v(len);
    for (double& x : v) x = ctx.ranks[pick_rank(rng)];
    const std::size_t start = pick_block(rng);

    std::vector<double> path(len - 1);  // times -M..n
    for (std::size_t j = 0; j < p; ++j) path[j] = ctx.observed[start + j];
    std::vector<double> lag(p);
    for (std::size_t k = p; k < path.size(); ++k) {
        for (std::size_t s = 0; s < p; ++s) lag[s] = path[k - 1 - s];
        path[k] = ctx.model.slice(lag).quantile(v[k]);
    }
    const double future = ctx.future_slice.quantile(v.back());

    // Refit on Y*_1..Y*_n, the last n slots of the path.
    const std::vector<double> tail(path.end() - static_cast<std::ptrdiff_t>(n), path.end());
    const ConditionalCdfModel refit(embed(TimeSeriesSample(tail), p), ctx.model.bandwidths());
    const ConditionalSlice refit_slice = refit.slice(ctx.x_n);

    double centre = 0.0;
    if (ctx.predictive) {
        const std::vector<double> loo_ranks = transform_ranks(refit, true);
        centre = mean_inverse(refit_slice, loo_ranks);
    } else {
        // Resampled ranks attached to times p+1..n.
        const std::span<const double> levels(v.data() + ctx.warmup + 1 + p, n - p);
        centre = mean_inverse(refit_slice, levels);
    }
    return future - centre;
}

}  // namespace

double empirical_quantile(std::span<const double> values, double a) {
    if (values.empty()) throw Error(ErrorCode::InvalidArgument, "quantile of an empty sample");
    if (!(a > 0.0 && a < 1.0)) throw Error(ErrorCode::InvalidProbability, "quantile level must lie in (0, 1)");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    // The small slack keeps products like 100 * 0.07 from rounding up past an integer.
    const double pos = std::ceil(static_cast<double>(sorted.size()) * a - 1e-9);
    const auto k = static_cast<std::size_t>(std::clamp(pos, 1.0, static_cast<double>(sorted.size())));
    return sorted[k - 1];
}

double mf_point_predictor(const ConditionalCdfModel& model, std::span<const double> x_n,
                          std::span<const double> ranks) {
    if (ranks.empty()) throw Error(ErrorCode::InvalidArgument, "point predictor needs at least one rank");
    return mean_inverse(model.slice(x_n), ranks);
}

double mf_point_predictor(const EmbeddedPairs& pairs, const Bandwidths& bw, std::span<const double> x_n,
                          std::span<const double> ranks) {
    return mf_point_predictor(ConditionalCdfModel(pairs, bw), x_n, ranks);
}

BootstrapResult mf_interval(const EmbeddedPairs& pairs, const Bandwidths& bw, std::span<const double> x_n,
                            NominalLevel alpha, const BootstrapConfig& cfg, bool predictive) {
    const std::size_t p = pairs.order();
    if (cfg.B == 0) throw Error(ErrorCode::InvalidArgument, "bootstrap size B must be positive");
    if (cfg.M < p) throw Error(ErrorCode::WarmupTooShort, "warm-up length M must be at least the Markov order");
    if (x_n.size() != p) throw Error(ErrorCode::DimensionMismatch, "X_n dimension does not match the Markov order");

    const ConditionalCdfModel model(pairs, bw);
    const std::vector<double> ranks = transform_ranks(model, predictive);
    const ConditionalSlice future_slice = model.slice(x_n);
    const double point = mean_inverse(future_slice, ranks);
    const std::vector<double> observed = underlying_series(pairs);

    const ReplicateContext ctx{model, future_slice, ranks, observed, x_n, cfg.M, predictive};
    std::vector<double> roots(cfg.B);
    parallel_for(cfg.B, cfg.threads,
                 [&](std::size_t b) { roots[b] = bootstrap_root(ctx, derive_seed(cfg.seed, b)); });

    const double a = alpha.alpha();
    const double lo = point + empirical_quantile(roots, a / 2.0);
    const double hi = point + empirical_quantile(roots, 1.0 - a / 2.0);
    return {point, std::move(roots), PredictionInterval(lo, hi, alpha, predictive ? Method::PMF : Method::MF)};
}

}  // namespace markovpi
