#include "cli/run_config.hpp"

#include "cli/csv_io.hpp"
#include "markovpi/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>

namespace markovpi::cli {

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void usage(const std::string& key, const std::string& message) {
    throw Error(ErrorCode::Usage, key + ": " + message);
}

void require_positive(std::size_t value, const char* key) {
    if (value == 0) usage(key, "must be a positive integer");
}

}  // namespace

std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::Simulate: return "simulate";
        case Command::Predict: return "predict";
        case Command::Evaluate: return "evaluate";
        case Command::Bench: return "bench";
    }
    return "?";
}

RunConfig parse_config(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return parse_config(args);
}

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;
    std::string command;
    std::string method;
    std::string bandwidth = "cv";
    std::string model = "sine";
    std::string innovation = "normal";
    double h = 0.0;
    double h0 = 0.0;

    CLI::App app{"Prediction intervals for Markov time series (MF/PMF bootstrap, MDCP/PMDCP conformal)",
                 "markovpi"};
    app.set_help_flag("--help", "print this help and exit");
    app.add_option("command", command, "simulate | predict | evaluate | bench")->required();
    app.add_option("--method", method, "MF | PMF | MDCP | PMDCP (bench: all four when omitted)");
    app.add_option("--alpha", cfg.alpha, "miscoverage level in (0,1)")->capture_default_str();
    app.add_option("--p", cfg.p, "Markov order")->capture_default_str();
    app.add_option("--B", cfg.B, "bootstrap replicates")->capture_default_str();
    app.add_option("--M", cfg.M, "bootstrap warm-up length")->capture_default_str();
    app.add_option("--G", cfg.G, "conformal trial grid size")->capture_default_str();
    app.add_option("--R", cfg.R, "Monte Carlo replications")->capture_default_str();
    app.add_option("--S", cfg.S, "oracle futures per replication")->capture_default_str();
    app.add_option("--w", cfg.w, "rolling window size")->capture_default_str();
    app.add_option("--seed", cfg.seed, "root random seed")->capture_default_str();
    app.add_option("--input", cfg.input_path, "single-column series CSV");
    app.add_option("--output", cfg.output_path, "output CSV (default: stdout)");
    app.add_option("--trace", cfg.trace_path, "conformal trace CSV (predict, MDCP/PMDCP)");
    app.add_option("--summary", cfg.summary_path, "bench summary CSV (default: stdout)");
    app.add_option("--bandwidth", bandwidth, "cv | rot | fixed")->capture_default_str();
    app.add_option("--h", h, "predictor bandwidth (fixed mode)");
    app.add_option("--h0", h0, "response bandwidth (fixed mode)");
    app.add_option("--model", model, "sine | logquad")->capture_default_str();
    app.add_option("--innovation", innovation, "normal | laplace")->capture_default_str();
    app.add_option("--n", cfg.n, "simulated series length")->capture_default_str();
    app.add_option("--warmup", cfg.warmup, "simulation burn-in")->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();
    app.set_config("--config", "", "key = value file; flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::vector<const char*> argv{"markovpi"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw Error(ErrorCode::Usage, e.what());
    }

    const std::string cmd = lowercase(command);
    if (cmd == "simulate") {
        cfg.command = Command::Simulate;
    } else if (cmd == "predict") {
        cfg.command = Command::Predict;
    } else if (cmd == "evaluate") {
        cfg.command = Command::Evaluate;
    } else if (cmd == "bench") {
        cfg.command = Command::Bench;
    } else {
        usage("command", "unknown command '" + command + "'");
    }

    if (!method.empty()) {
        cfg.method = parse_method(method);
        if (!cfg.method) usage("method", "unknown method '" + method + "'");
    }
    if ((cfg.command == Command::Predict || cfg.command == Command::Evaluate) && !cfg.method) {
        usage("method", "required for " + std::string(to_string(cfg.command)));
    }

    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) usage("alpha", "must lie strictly between 0 and 1");
    require_positive(cfg.p, "p");
    require_positive(cfg.B, "B");
    require_positive(cfg.M, "M");
    require_positive(cfg.R, "R");
    require_positive(cfg.S, "S");
    require_positive(cfg.w, "w");
    require_positive(cfg.n, "n");
    if (cfg.G < 2) usage("G", "must be at least 2");

    const std::string bw = lowercase(bandwidth);
    if (bw == "cv") {
        cfg.bandwidth_mode = BandwidthMode::CrossValidation;
    } else if (bw == "rot") {
        cfg.bandwidth_mode = BandwidthMode::RuleOfThumb;
    } else if (bw == "fixed") {
        cfg.bandwidth_mode = BandwidthMode::Fixed;
        if (app.count("--h") == 0 || app.count("--h0") == 0) usage("bandwidth", "fixed mode needs --h and --h0");
        if (!(h > 0.0)) usage("h", "must be positive");
        if (!(h0 > 0.0)) usage("h0", "must be positive");
        cfg.h = h;
        cfg.h0 = h0;
    } else {
        usage("bandwidth", "unknown mode '" + bandwidth + "'");
    }

    const auto m = parse_model(model);
    if (!m) usage("model", "unknown model '" + model + "'");
    cfg.model = *m;
    const auto e = parse_innovation(innovation);
    if (!e) usage("innovation", "unknown innovation law '" + innovation + "'");
    cfg.innovation = *e;

    if ((cfg.command == Command::Predict || cfg.command == Command::Bench) && cfg.input_path.empty()) {
        usage("input", "required for " + std::string(to_string(cfg.command)));
    }
    if (!cfg.trace_path.empty() && cfg.command != Command::Predict) {
        usage("trace", "only used by predict");
    }
    if (!cfg.trace_path.empty() && cfg.method && (*cfg.method == Method::MF || *cfg.method == Method::PMF)) {
        usage("trace", "only available for MDCP and PMDCP");
    }
    return cfg;
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("command", std::string(to_string(cfg.command)));
    kv.emplace_back("method", cfg.method ? std::string(to_string(*cfg.method)) : std::string("all"));
    kv.emplace_back("p", std::to_string(cfg.p));
    kv.emplace_back("alpha", format_double(cfg.alpha));
    kv.emplace_back("B", std::to_string(cfg.B));
    kv.emplace_back("M", std::to_string(cfg.M));
    kv.emplace_back("G", std::to_string(cfg.G));
    kv.emplace_back("R", std::to_string(cfg.R));
    kv.emplace_back("S", std::to_string(cfg.S));
    kv.emplace_back("w", std::to_string(cfg.w));
    kv.emplace_back("seed", std::to_string(cfg.seed));
    kv.emplace_back("input", cfg.input_path);
    switch (cfg.bandwidth_mode) {
        case BandwidthMode::CrossValidation: kv.emplace_back("bandwidth", "cv"); break;
        case BandwidthMode::RuleOfThumb: kv.emplace_back("bandwidth", "rot"); break;
        case BandwidthMode::Fixed:
            kv.emplace_back("bandwidth", "fixed");
            kv.emplace_back("h", format_double(*cfg.h));
            kv.emplace_back("h0", format_double(*cfg.h0));
            break;
    }
    kv.emplace_back("model", std::string(to_string(cfg.model)));
    kv.emplace_back("innovation", std::string(to_string(cfg.innovation)));
    kv.emplace_back("n", std::to_string(cfg.n));
    kv.emplace_back("warmup", std::to_string(cfg.warmup));
    return kv;
}

MethodKnobs knobs_from(const RunConfig& cfg) {
    MethodKnobs k;
    k.p = cfg.p;
    k.B = cfg.B;
    k.M = cfg.M;
    k.G = cfg.G;
    k.threads = cfg.threads;
    k.bandwidth.mode = cfg.bandwidth_mode;
    if (cfg.bandwidth_mode == BandwidthMode::Fixed) k.bandwidth.fixed = Bandwidths(*cfg.h, *cfg.h0);
    return k;
}

}  // namespace markovpi::cli
