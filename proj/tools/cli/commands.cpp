#include "cli/commands.hpp"

#include "cli/csv_io.hpp"
#include "markovpi/conformal.hpp"
#include "markovpi/error.hpp"
#include "markovpi/evaluation.hpp"
#include "markovpi/simulation.hpp"

#include <array>
#include <fstream>
#include <memory>

namespace markovpi::cli {

namespace {

constexpr std::array kAllMethods{Method::MF, Method::PMF, Method::MDCP, Method::PMDCP};

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream_ = &fallback;
            return;
        }
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*file_) throw Error(ErrorCode::InvalidArgument, path + ": cannot open for writing");
        stream_ = file_.get();
    }

    std::ostream& operator*() { return *stream_; }

    void finish(const std::string& path) {
        stream_->flush();
        if (!*stream_) throw Error(ErrorCode::InvalidArgument, (path.empty() ? "stdout" : path) + ": write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

void write_header(std::ostream& os, const RunConfig& cfg) {
    for (const auto& [key, value] : describe(cfg)) os << "# " << key << '=' << value << '\n';
}

DgpSpec dgp_from(const RunConfig& cfg) {
    DgpSpec spec;
    spec.model = cfg.model;
    spec.innovation = cfg.innovation;
    spec.n = cfg.n;
    spec.warmup = cfg.warmup;
    spec.seed = cfg.seed;
    return spec;
}

void run_simulate(const RunConfig& cfg, std::ostream& out) {
    const TimeSeriesSample series = simulate(dgp_from(cfg));
    Sink sink(cfg.output_path, out);
    write_header(*sink, cfg);
    *sink << "y\n";
    for (double y : series.values()) *sink << format_double(y) << '\n';
    sink.finish(cfg.output_path);
}

void run_predict(const RunConfig& cfg, std::ostream& out) {
    const TimeSeriesSample series = read_series(cfg.input_path);
    const MethodKnobs knobs = knobs_from(cfg);
    const NominalLevel alpha(cfg.alpha);
    const Method method = *cfg.method;

    const EmbeddedPairs pairs = embed(series, knobs.p);
    const Bandwidths bw = select_bandwidths(series, pairs, knobs.bandwidth, knobs.threads);
    const std::vector<double> x_n = last_predictor(series, knobs.p);

    std::optional<PredictionInterval> interval;
    std::optional<ConformalTrace> trace;
    if (method == Method::MDCP || method == Method::PMDCP) {
        const TrialGrid grid = build_trial_grid(series, knobs.G);
        ConformalResult res =
            conformal_interval(pairs, bw, x_n, grid, alpha, method == Method::PMDCP, knobs.threads);
        interval = res.interval;
        trace = std::move(res.trace);
    } else {
        interval = make_method(method, knobs)(PredictionTask{series, pairs, bw, x_n, alpha, cfg.seed});
    }

    Sink sink(cfg.output_path, out);
    write_header(*sink, cfg);
    *sink << "# selected_h=" << format_double(bw.h()) << '\n';
    *sink << "# selected_h0=" << format_double(bw.h0()) << '\n';
    *sink << "method,alpha,lower,upper\n";
    *sink << to_string(method) << ',' << format_double(cfg.alpha) << ',' << format_double(interval->lower) << ','
          << format_double(interval->upper) << '\n';
    sink.finish(cfg.output_path);

    if (!cfg.trace_path.empty() && trace) {
        Sink tsink(cfg.trace_path, out);
        write_header(*tsink, cfg);
        *tsink << "# augmented_count=" << trace->augmented_count << '\n';
        *tsink << "y,pvalue,accepted\n";
        for (const auto& row : trace->rows) {
            *tsink << format_double(row.y) << ',' << format_double(row.pvalue) << ',' << (row.accepted ? 1 : 0)
                   << '\n';
        }
        tsink.finish(cfg.trace_path);
    }
}

void run_evaluate(const RunConfig& cfg, std::ostream& out) {
    const CoverageReport report =
        monte_carlo(dgp_from(cfg), *cfg.method, NominalLevel(cfg.alpha), cfg.R, cfg.S, knobs_from(cfg));

    Sink sink(cfg.output_path, out);
    write_header(*sink, cfg);
    for (const auto& f : report.failures) {
        *sink << "# failure index=" << f.index << " seed=" << f.seed << " error=" << f.error << '\n';
    }
    *sink << "row,replication,seed,x_n,lower,upper,CVR,LEN,CVR Sd,LEN Sd\n";
    for (const auto& r : report.replications) {
        *sink << "replication," << r.index << ',' << r.seed << ',' << format_double(r.x_n) << ','
              << format_double(r.lower) << ',' << format_double(r.upper) << ',' << format_double(r.cvr) << ','
              << format_double(r.len) << ",,\n";
    }
    *sink << "summary,,,,,," << format_double(report.cvr_mean) << ',' << format_double(report.len_mean) << ','
          << format_double(report.cvr_sd) << ',' << format_double(report.len_sd) << '\n';
    sink.finish(cfg.output_path);
}

void run_bench(const RunConfig& cfg, std::ostream& out) {
    const TimeSeriesSample series = read_series(cfg.input_path);
    const MethodKnobs knobs = knobs_from(cfg);
    const NominalLevel alpha(cfg.alpha);

    std::vector<Method> methods;
    if (cfg.method) {
        methods.push_back(*cfg.method);
    } else {
        methods.assign(kAllMethods.begin(), kAllMethods.end());
    }

    std::vector<std::pair<Method, RollingReport>> reports;
    for (Method m : methods) reports.emplace_back(m, rolling_eval(series, cfg.w, m, alpha, knobs, cfg.seed));

    Sink sink(cfg.output_path, out);
    write_header(*sink, cfg);
    *sink << "method,t,actual,lower,upper,hit,length,status\n";
    for (const auto& [m, report] : reports) {
        for (const auto& s : report.steps) {
            *sink << to_string(m) << ',' << s.t << ',' << format_double(s.actual) << ',';
            if (s.ok) {
                *sink << format_double(s.lower) << ',' << format_double(s.upper) << ',' << (s.hit ? 1 : 0) << ','
                      << format_double(s.upper - s.lower) << ",ok\n";
            } else {
                // Errors may contain commas; keep the status field a bare code.
                *sink << ",,,," << s.error.substr(0, s.error.find(':')) << '\n';
            }
        }
    }

    const bool shared = cfg.summary_path.empty();
    Sink summary(cfg.summary_path, *sink);
    if (shared) {
        *summary << "# summary\n";
    } else {
        write_header(*summary, cfg);
    }
    *summary << "method,CVR,LEN,LEN Sd\n";
    for (const auto& [m, report] : reports) {
        *summary << to_string(m) << ',' << format_double(report.cvr) << ',' << format_double(report.len) << ','
                 << format_double(report.len_sd) << '\n';
    }
    summary.finish(cfg.summary_path);
    sink.finish(cfg.output_path);
}

}  // namespace

void run(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
        case Command::Simulate: run_simulate(cfg, out); return;
        case Command::Predict: run_predict(cfg, out); return;
        case Command::Evaluate: run_evaluate(cfg, out); return;
        case Command::Bench: run_bench(cfg, out); return;
    }
}

int exit_code(ErrorCategory category) noexcept {
    switch (category) {
        case ErrorCategory::Usage: return 2;
        case ErrorCategory::Data: return 3;
        case ErrorCategory::Numerical: return 4;
        case ErrorCategory::Internal: return 5;
    }
    return 5;
}

}  // namespace markovpi::cli
