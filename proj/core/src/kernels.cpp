#include "markovpi/kernels.hpp"

#include "markovpi/error.hpp"

#include <cmath>
#include <numbers>

namespace markovpi {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;
constexpr double kLogSqrt2Pi = 0.9189385332046727417803297364056176;

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Phi(-2) and Phi(2) - Phi(-2).
constexpr double kLowerMass = 0.022750131948179207200282637166533437;
constexpr double kTruncatedMass = 0.954499736103641585599434725666933125;

}  // namespace

Bandwidths::Bandwidths(double h, double h0) : h_(h), h0_(h0) {
    if (!(std::isfinite(h) && h > 0.0 && std::isfinite(h0) && h0 > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "bandwidths must be finite and positive");
    }
}

double gaussian_density(double v) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * v * v); }

double log_gaussian_density(double v) noexcept { return -0.5 * v * v - kLogSqrt2Pi; }

double smooth_cdf_kernel(double z) noexcept {
    if (z <= -kKernelSupport) return 0.0;
    if (z >= kKernelSupport) return 1.0;
    const double k = (normal_cdf(z) - kLowerMass) / kTruncatedMass;
    return std::fmin(1.0, std::fmax(0.0, k));
}

double smooth_cdf_kernel_density(double z) noexcept {
    if (z < -kKernelSupport || z > kKernelSupport) return 0.0;
    return gaussian_density(z) / kTruncatedMass;
}

double scaled_sq_distance(std::span<const double> x_i, std::span<const double> x, double h) noexcept {
    double acc = 0.0;
    for (std::size_t s = 0; s < x.size(); ++s) {
        const double u = (x_i[s] - x[s]) / h;
        acc += u * u;
    }
    return acc;
}

double log_product_weight(std::span<const double> x_i, std::span<const double> x, double h) {
    if (x_i.size() != x.size() || x.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "product weight needs two vectors of equal positive length");
    }
    double acc = 0.0;
    const double log_h = std::log(h);
    for (std::size_t s = 0; s < x.size(); ++s) {
        acc += log_gaussian_density((x_i[s] - x[s]) / h) - log_h;
    }
    return acc;
}

double product_weight(std::span<const double> x_i, std::span<const double> x, double h) {
    return std::exp(log_product_weight(x_i, x, h));
}

}  // namespace markovpi
