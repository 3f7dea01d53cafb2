#pragma once

#include "markovpi/evaluation.hpp"
#include "markovpi/series.hpp"
#include "markovpi/simulation.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace markovpi::cli {

enum class Command { Simulate, Predict, Evaluate, Bench };

std::string_view to_string(Command c) noexcept;

/// Fully resolved settings for one CLI invocation.
struct RunConfig {
    Command command = Command::Predict;
    std::optional<Method> method;  // bench runs all four when unset
    std::size_t p = 1;
    double alpha = 0.05;
    std::size_t B = 250;
    std::size_t M = 100;
    std::size_t G = 200;
    std::size_t R = 200;
    std::size_t S = 1000;
    std::size_t w = 100;
    std::uint64_t seed = 42;
    std::string input_path;
    std::string output_path;
    std::string trace_path;
    std::string summary_path;
    BandwidthMode bandwidth_mode = BandwidthMode::CrossValidation;
    std::optional<double> h;
    std::optional<double> h0;
    DgpModel model = DgpModel::Sine;
    Innovation innovation = Innovation::Normal;
    std::size_t n = 100;
    std::size_t warmup = 500;
    std::size_t threads = 1;
};

/// Thrown for --help; carries the formatted usage text.
struct HelpRequested {
    std::string text;
};

/**
 * Parses `args` (program name excluded). A `--config FILE` of `key = value`
 * lines supplies defaults that command-line flags override; unknown keys and
 * out-of-domain values raise Error(Usage) naming the offending key.
 */
RunConfig parse_config(const std::vector<std::string>& args);
RunConfig parse_config(int argc, const char* const* argv);

/// Settings that determine output content, as (key, value) pairs in a fixed order.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg);

MethodKnobs knobs_from(const RunConfig& cfg);

}  // namespace markovpi::cli
