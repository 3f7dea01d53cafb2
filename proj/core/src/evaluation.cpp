#include "markovpi/evaluation.hpp"

#include "markovpi/bandwidth.hpp"
#include "markovpi/bootstrap.hpp"
#include "markovpi/conformal.hpp"
#include "markovpi/error.hpp"
#include "markovpi/parallel.hpp"

#include <cmath>
#include <numeric>
#include <optional>

namespace markovpi {

Bandwidths select_bandwidths(const TimeSeriesSample& series, const EmbeddedPairs& pairs,
                             const BandwidthPolicy& policy, std::size_t threads) {
    switch (policy.mode) {
        case BandwidthMode::Fixed:
            if (!policy.fixed) throw Error(ErrorCode::InvalidArgument, "fixed bandwidth mode without (h, h0)");
            return *policy.fixed;
        case BandwidthMode::RuleOfThumb:
            return rule_of_thumb(series.size(), pairs.order(), series.sample_sd());
        case BandwidthMode::CrossValidation:
            return cv_select(pairs, default_grid(series.size(), pairs.order(), series.sample_sd()), threads);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown bandwidth mode");
}

IntervalMethod make_method(Method method, const MethodKnobs& knobs) {
    switch (method) {
        case Method::MF:
        case Method::PMF: {
            const bool predictive = method == Method::PMF;
            return [knobs, predictive](const PredictionTask& task) {
                const BootstrapConfig cfg{knobs.B, knobs.M, task.seed, knobs.threads};
                return mf_interval(task.pairs, task.bw, task.x_n, task.alpha, cfg, predictive).interval;
            };
        }
        case Method::MDCP:
        case Method::PMDCP: {
            const bool predictive = method == Method::PMDCP;
            return [knobs, predictive](const PredictionTask& task) {
                const TrialGrid grid = build_trial_grid(task.series, knobs.G);
                return conformal_interval(task.pairs, task.bw, task.x_n, grid, task.alpha, predictive, knobs.threads)
                    .interval;
            };
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown method");
}

namespace {

PredictionInterval fit_and_predict(const TimeSeriesSample& series, const IntervalMethod& method,
                                   NominalLevel alpha, const MethodKnobs& knobs, std::uint64_t seed) {
    const EmbeddedPairs pairs = embed(series, knobs.p);
    const Bandwidths bw = select_bandwidths(series, pairs, knobs.bandwidth, knobs.threads);
    const std::vector<double> x_n = last_predictor(series, knobs.p);
    return method(PredictionTask{series, pairs, bw, x_n, alpha, seed});
}

}  // namespace

PredictionInterval predict_next(const TimeSeriesSample& series, Method method, NominalLevel alpha,
                                const MethodKnobs& knobs, std::uint64_t seed) {
    return fit_and_predict(series, make_method(method, knobs), alpha, knobs, seed);
}

CoverageScore cvr_len(const PredictionInterval& interval, std::span<const double> futures) {
    if (futures.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one future value");
    std::size_t inside = 0;
    for (double y : futures) inside += interval.contains(y) ? 1 : 0;
    return {static_cast<double>(inside) / static_cast<double>(futures.size()), interval.length()};
}

MeanSd mean_sd(std::span<const double> values) {
    if (values.empty()) return {0.0, 0.0};
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

CoverageReport monte_carlo(const DgpSpec& spec, const IntervalMethod& method, NominalLevel alpha, std::size_t R,
                           std::size_t S, const MethodKnobs& knobs) {
    if (R < 2) throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least two replications");
    if (S == 0) throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least one pseudo-future");

    MethodKnobs inner = knobs;
    inner.threads = 1;

    std::vector<std::optional<ReplicationRecord>> records(R);
    std::vector<std::optional<ReplicationFailure>> failures(R);
    parallel_for(R, knobs.threads, [&](std::size_t i) {
        const std::uint64_t rep_seed = derive_seed(spec.seed, i);
        try {
            DgpSpec data_spec = spec;
            data_spec.seed = derive_seed(rep_seed, 0);
            const TimeSeriesSample series = simulate(data_spec);
            const PredictionInterval pi = fit_and_predict(series, method, alpha, inner, derive_seed(rep_seed, 1));
            const double x_n = series[series.size() - 1];
            const auto futures = oracle_futures(spec, x_n, S, derive_seed(rep_seed, 2));
            const CoverageScore score = cvr_len(pi, futures);
            records[i] = ReplicationRecord{i, rep_seed, x_n, pi.lower, pi.upper, score.cvr, score.len};
        } catch (const Error& e) {
            failures[i] = ReplicationFailure{i, rep_seed, std::string(to_string(e.code())) + ": " + e.what()};
        }
    });

    CoverageReport report;
    for (std::size_t i = 0; i < R; ++i) {
        if (records[i]) report.replications.push_back(*records[i]);
        if (failures[i]) report.failures.push_back(*failures[i]);
    }
    if (static_cast<double>(report.failures.size()) > kMaxFailureShare * static_cast<double>(R)) {
        const auto& first = report.failures.front();
        throw Error(ErrorCode::ReplicationFailures,
                    std::to_string(report.failures.size()) + " of " + std::to_string(R) +
                        " replications failed; first at index " + std::to_string(first.index) + " (seed " +
                        std::to_string(first.seed) + "): " + first.error);
    }

    std::vector<double> cvr;
    std::vector<double> len;
    for (const auto& r : report.replications) {
        cvr.push_back(r.cvr);
        len.push_back(r.len);
    }
    const MeanSd c = mean_sd(cvr);
    const MeanSd l = mean_sd(len);
    report.cvr_mean = c.mean;
    report.cvr_sd = c.sd;
    report.len_mean = l.mean;
    report.len_sd = l.sd;
    return report;
}

CoverageReport monte_carlo(const DgpSpec& spec, Method method, NominalLevel alpha, std::size_t R, std::size_t S,
                           const MethodKnobs& knobs) {
    MethodKnobs inner = knobs;
    inner.threads = 1;
    return monte_carlo(spec, make_method(method, inner), alpha, R, S, knobs);
}

RollingReport rolling_eval(const TimeSeriesSample& series, std::size_t w, const IntervalMethod& method,
                           NominalLevel alpha, const MethodKnobs& knobs, std::uint64_t seed) {
    const std::size_t n = series.size();
    if (w < knobs.p + 10) throw Error(ErrorCode::InvalidArgument, "rolling window must be at least p + 10");
    if (n <= w) throw Error(ErrorCode::OrderTooLarge, "series must be longer than the rolling window");

    MethodKnobs inner = knobs;
    inner.threads = 1;

    const std::size_t count = n - w;
    std::vector<RollingStep> steps(count);
    const auto values = series.values();
    parallel_for(count, knobs.threads, [&](std::size_t k) {
        const std::size_t t = w + 1 + k;  // 1-based target index
        RollingStep step{t, values[t - 1], false, 0.0, 0.0, false, {}};
        try {
            // Window Y_{t-w}..Y_{t-1} sits at 0-based offsets t-1-w..t-2.
            const TimeSeriesSample window(
                std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(t - 1 - w),
                                    values.begin() + static_cast<std::ptrdiff_t>(t - 1)));
            const PredictionInterval pi = fit_and_predict(window, method, alpha, inner, derive_seed(seed, t));
            step.ok = true;
            step.lower = pi.lower;
            step.upper = pi.upper;
            step.hit = pi.contains(step.actual);
        } catch (const Error& e) {
            step.error = std::string(to_string(e.code())) + ": " + e.what();
        }
        steps[k] = std::move(step);
    });

    RollingReport report;
    std::vector<double> lengths;
    std::size_t hits = 0;
    for (const auto& s : steps) {
        if (!s.ok) {
            ++report.failed;
            continue;
        }
        ++report.evaluated;
        hits += s.hit ? 1 : 0;
        lengths.push_back(s.upper - s.lower);
    }
    if (report.evaluated > 0) {
        const MeanSd l = mean_sd(lengths);
        report.cvr = static_cast<double>(hits) / static_cast<double>(report.evaluated);
        report.len = l.mean;
        report.len_sd = l.sd;
    }
    report.steps = std::move(steps);
    return report;
}

RollingReport rolling_eval(const TimeSeriesSample& series, std::size_t w, Method method, NominalLevel alpha,
                           const MethodKnobs& knobs, std::uint64_t seed) {
    MethodKnobs inner = knobs;
    inner.threads = 1;
    return rolling_eval(series, w, make_method(method, inner), alpha, knobs, seed);
}

}  // namespace markovpi
