#pragma once

#include <cstddef>
#include <span>

#include "sbon/grid.hpp"

namespace sbon {

// VisuShrink building blocks.
//
// Notes on two deliberate readings:
//  * mad_sigma is median(|c|) / 0.6745, the median of absolute values rather than the
//    absolute deviation about the median. For detail coefficients the two coincide
//    up to the (near-zero) median.
//  * soft_threshold uses sign(c) * max(|c| - lambda, 0). Subtracting lambda from every
//    surviving coefficient regardless of sign would push negative coefficients away
//    from zero instead of toward it.

struct ShrinkageParams {
    double delta_mad = 0.0;
    double lambda = 0.0;
    std::size_t n_pixels = 1;
};

inline constexpr double kMadNormalization = 0.6745;

double mad_sigma(std::span<const double> coeffs);
inline double mad_sigma(const RealGrid& coeffs) { return mad_sigma(coeffs.values()); }

// delta * sqrt(2 ln N). N is a pixel count but any real N >= 1 is accepted.
double universal_threshold(double delta_mad, double n_pixels);

ShrinkageParams visushrink_params(const RealGrid& noise_band, std::size_t n_pixels);

RealGrid hard_threshold(const RealGrid& grid, double lambda);
RealGrid soft_threshold(const RealGrid& grid, double lambda);

} // namespace sbon
