#pragma once

#include <span>

namespace markovpi {

/// Smoothing pair: h for the predictor product kernel, h0 for the response CDF kernel.
class Bandwidths {
public:
    Bandwidths(double h, double h0);
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] double h0() const noexcept { return h0_; }

    friend bool operator==(const Bandwidths&, const Bandwidths&) = default;

private:
    double h_;
    double h0_;
};

/// Half-width of the support of smooth_cdf_kernel's derivative.
inline constexpr double kKernelSupport = 2.0;

/// Standard normal density.
[[nodiscard]] double gaussian_density(double v) noexcept;

/// log of gaussian_density, without the exp.
[[nodiscard]] double log_gaussian_density(double v) noexcept;

/**
 * @brief Standard normal CDF truncated to [-2, 2] and renormalized.
 *
 * Exactly 0 at and below -2, exactly 1 at and above 2, strictly increasing in
 * between.
 */
[[nodiscard]] double smooth_cdf_kernel(double z) noexcept;

/// Derivative of smooth_cdf_kernel (the truncated normal density).
[[nodiscard]] double smooth_cdf_kernel_density(double z) noexcept;

/// prod_s (1/h) w((x_i[s] - x[s]) / h). Throws DimensionMismatch on unequal sizes.
[[nodiscard]] double product_weight(std::span<const double> x_i, std::span<const double> x, double h);

/// Logarithm of product_weight, computed by summing log-kernel terms.
[[nodiscard]] double log_product_weight(std::span<const double> x_i, std::span<const double> x, double h);

/**
 * Sum of squared scaled gaps, sum_s ((x_i[s] - x[s]) / h)^2. Ratios of product
 * weights only need exp(-0.5 * this); the normalizing constants cancel.
 */
[[nodiscard]] double scaled_sq_distance(std::span<const double> x_i, std::span<const double> x,
                                        double h) noexcept;

}  // namespace markovpi
