#include "markovpi/simulation.hpp"

#include "markovpi/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace markovpi {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(DgpModel m) noexcept { return m == DgpModel::Sine ? "sine" : "logquad"; }

std::string_view to_string(Innovation e) noexcept { return e == Innovation::Normal ? "normal" : "laplace"; }

std::optional<DgpModel> parse_model(std::string_view name) noexcept {
    const std::string s = lower(name);
    if (s == "sine" || s == "1" || s == "model1") return DgpModel::Sine;
    if (s == "logquad" || s == "2" || s == "model2") return DgpModel::LogQuad;
    return std::nullopt;
}

std::optional<Innovation> parse_innovation(std::string_view name) noexcept {
    const std::string s = lower(name);
    if (s == "normal") return Innovation::Normal;
    if (s == "laplace") return Innovation::LaplaceUnitVar;
    return std::nullopt;
}

double transition_mean(DgpModel model, double y) noexcept {
    switch (model) {
        case DgpModel::Sine: return std::sin(y);
        case DgpModel::LogQuad: return 0.8 * std::log(3.0 * y * y + 1.0);
    }
    return 0.0;
}

double draw_innovation(Innovation law, Rng& rng) {
    if (law == Innovation::Normal) {
        std::normal_distribution<double> normal(0.0, 1.0);
        return normal(rng);
    }
    // Difference of two unit exponentials is standard Laplace (variance 2).
    std::exponential_distribution<double> expo(1.0);
    const double a = expo(rng);
    const double b = expo(rng);
    return (a - b) / std::numbers::sqrt2;
}

TimeSeriesSample simulate(const DgpSpec& spec, const InnovationSource& source) {
    if (spec.n < 3) throw Error(ErrorCode::InvalidArgument, "simulated series needs n >= 3");
    std::vector<double> out;
    out.reserve(spec.n);
    double y = 0.0;
    const std::size_t total = spec.warmup + spec.n;
    for (std::size_t step = 0; step < total; ++step) {
        y = transition_mean(spec.model, y) + source();
        if (step >= spec.warmup) out.push_back(y);
    }
    return TimeSeriesSample(std::move(out));
}

TimeSeriesSample simulate(const DgpSpec& spec) {
    Rng rng(spec.seed);
    return simulate(spec, [&] { return draw_innovation(spec.innovation, rng); });
}

std::vector<double> oracle_futures(const DgpSpec& spec, double x_n, std::size_t S, const InnovationSource& source) {
    if (S == 0) throw Error(ErrorCode::InvalidArgument, "need at least one pseudo-future");
    const double mean = transition_mean(spec.model, x_n);
    std::vector<double> out(S);
    for (double& y : out) y = mean + source();
    return out;
}

std::vector<double> oracle_futures(const DgpSpec& spec, double x_n, std::size_t S, std::uint64_t seed) {
    Rng rng(seed);
    return oracle_futures(spec, x_n, S, [&] { return draw_innovation(spec.innovation, rng); });
}

}  // namespace markovpi
