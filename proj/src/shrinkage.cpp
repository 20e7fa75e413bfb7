#include "sbon/shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sbon/error.hpp"

namespace sbon {

namespace {

void check_lambda(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ConfigError("threshold must be finite and non-negative, got " + std::to_string(lambda));
    }
}

} // namespace

double mad_sigma(std::span<const double> coeffs) {
    if (coeffs.empty()) throw DataError("mad_sigma of empty coefficient set");
    std::vector<double> mags(coeffs.size());
    std::transform(coeffs.begin(), coeffs.end(), mags.begin(), [](double c) { return std::abs(c); });
    const std::size_t n = mags.size();
    const std::size_t mid = n / 2;
    std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid), mags.end());
    double median = mags[mid];
    if (n % 2 == 0) {
        const double lower = *std::max_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid));
        median = 0.5 * (lower + median);
    }
    return median / kMadNormalization;
}

double universal_threshold(double delta_mad, double n_pixels) {
    if (!(n_pixels >= 1.0)) throw ConfigError("universal threshold needs at least one pixel");
    if (!(delta_mad >= 0.0)) throw ConfigError("noise estimate must be non-negative");
    return delta_mad * std::sqrt(2.0 * std::log(n_pixels));
}

ShrinkageParams visushrink_params(const RealGrid& noise_band, std::size_t n_pixels) {
    ShrinkageParams p;
    p.delta_mad = mad_sigma(noise_band);
    p.n_pixels = n_pixels;
    p.lambda = universal_threshold(p.delta_mad, static_cast<double>(n_pixels));
    return p;
}

RealGrid hard_threshold(const RealGrid& grid, double lambda) {
    check_lambda(lambda);
    RealGrid out = grid;
    for (double& c : out) {
        if (std::abs(c) <= lambda) c = 0.0;
    }
    return out;
}

RealGrid soft_threshold(const RealGrid& grid, double lambda) {
    check_lambda(lambda);
    RealGrid out = grid;
    for (double& c : out) {
        const double mag = std::abs(c) - lambda;
        c = mag > 0.0 ? std::copysign(mag, c) : 0.0;
    }
    return out;
}

} // namespace sbon
