#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace markovpi {

/// Ordered, fully observed real-valued series Y_1..Y_n. Non-finite values are rejected.
class TimeSeriesSample {
public:
    explicit TimeSeriesSample(std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    /// Largest absolute observation.
    [[nodiscard]] double max_abs() const noexcept;
    /// Sample standard deviation (n - 1 denominator); 0 for n == 1.
    [[nodiscard]] double sample_sd() const noexcept;

private:
    std::vector<double> values_;
};

/**
 * @brief Regression view of a Markov(p) series.
 *
 * Pair k holds the lag vector (Y_{t-1}, ..., Y_{t-p}) and the response Y_t,
 * with t = p + 1 + k. Predictors are stored row-major, one row of length p
 * per pair.
 */
class EmbeddedPairs {
public:
    EmbeddedPairs(std::size_t order, std::vector<double> predictors, std::vector<double> responses);

    [[nodiscard]] std::size_t order() const noexcept { return order_; }
    [[nodiscard]] std::size_t size() const noexcept { return responses_.size(); }

    [[nodiscard]] std::span<const double> predictor(std::size_t k) const noexcept {
        return {predictors_.data() + k * order_, order_};
    }
    [[nodiscard]] double response(std::size_t k) const noexcept { return responses_[k]; }

    [[nodiscard]] std::span<const double> responses() const noexcept { return responses_; }
    [[nodiscard]] std::span<const double> predictors() const noexcept { return predictors_; }

    /// Copy with pair k removed.
    [[nodiscard]] EmbeddedPairs without(std::size_t k) const;
    /// Copy with one extra pair appended at the end.
    [[nodiscard]] EmbeddedPairs with_appended(std::span<const double> predictor, double response) const;

private:
    std::size_t order_;
    std::vector<double> predictors_;
    std::vector<double> responses_;
};

/// Miscoverage probability alpha, strictly inside (0, 1).
class NominalLevel {
public:
    explicit NominalLevel(double alpha);
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double coverage() const noexcept { return 1.0 - alpha_; }

private:
    double alpha_;
};

enum class Method { MF, PMF, MDCP, PMDCP };

std::string_view to_string(Method m) noexcept;
/// Case-insensitive; returns nullopt for unknown names.
std::optional<Method> parse_method(std::string_view name) noexcept;

struct PredictionInterval {
    PredictionInterval(double lower, double upper, NominalLevel level, Method method);

    double lower;
    double upper;
    NominalLevel level;
    Method method;

    [[nodiscard]] double length() const noexcept { return upper - lower; }
    [[nodiscard]] bool contains(double y) const noexcept { return lower <= y && y <= upper; }
};

/// Builds the pairs (X_{t-1}, Y_t), t = p+1..n. Requires n >= p + 2.
EmbeddedPairs embed(const TimeSeriesSample& series, std::size_t p);

/// X_n = (Y_n, Y_{n-1}, ..., Y_{n-p+1}). Requires n >= p.
std::vector<double> last_predictor(const TimeSeriesSample& series, std::size_t p);

}  // namespace markovpi
