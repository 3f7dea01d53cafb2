#pragma once

#include "markovpi/parallel.hpp"
#include "markovpi/series.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace markovpi {

/// Y_{t+1} = sin(Y_t) + e (Sine) or Y_{t+1} = 0.8 log(3 Y_t^2 + 1) + e (LogQuad).
enum class DgpModel { Sine, LogQuad };
/// N(0, 1), or Laplace with scale 1/sqrt(2) so the variance is 1.
enum class Innovation { Normal, LaplaceUnitVar };

std::string_view to_string(DgpModel m) noexcept;
std::string_view to_string(Innovation e) noexcept;
std::optional<DgpModel> parse_model(std::string_view name) noexcept;
std::optional<Innovation> parse_innovation(std::string_view name) noexcept;

struct DgpSpec {
    DgpModel model = DgpModel::Sine;
    Innovation innovation = Innovation::Normal;
    std::size_t n = 100;
    std::size_t warmup = 500;
    std::uint64_t seed = 42;
};

/// Conditional mean g(y) of the next observation.
[[nodiscard]] double transition_mean(DgpModel model, double y) noexcept;

[[nodiscard]] double draw_innovation(Innovation law, Rng& rng);

using InnovationSource = std::function<double()>;

/// Runs warmup + n steps from Y_0 = 0 and keeps the last n.
TimeSeriesSample simulate(const DgpSpec& spec);
/// Same recursion with innovations taken from `source` instead of the spec's law.
TimeSeriesSample simulate(const DgpSpec& spec, const InnovationSource& source);

/// S independent draws of Y_{n+1} given Y_n = x_n.
std::vector<double> oracle_futures(const DgpSpec& spec, double x_n, std::size_t S, std::uint64_t seed);
std::vector<double> oracle_futures(const DgpSpec& spec, double x_n, std::size_t S, const InnovationSource& source);

}  // namespace markovpi
