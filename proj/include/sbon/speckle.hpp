#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sbon/image.hpp"

namespace sbon {

// Fully developed multiplicative speckle: I_s = I * n, n ~ Gamma(shape L, scale 1/L),
// so E[n] = 1, Var[n] = 1/L and the ENL of a homogeneous region is L.
//
// Generator (fixed; golden outputs depend on it):
//  * Pixel j owns an independent SplitMix64 stream whose state starts at
//    mix64(seed + (j + 1) * 0x9E3779B97F4A7C15). Pixels can therefore be generated in
//    any order or in parallel with identical results.
//  * Uniforms are u = ((x >> 11) + 1) * 2^-53, in (0, 1].
//  * Since L is an integer, n = -(1/L) * sum_{t=1..L} ln(u_t) (Erlang construction).
struct SpeckleParams {
    unsigned looks = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

// Multiplier for pixel `index` under `params`.
double speckle_multiplier(const SpeckleParams& params, std::uint64_t index) noexcept;

// Multipliers for pixels 0..count-1.
std::vector<double> speckle_multipliers(const SpeckleParams& params, std::size_t count);

// Output is neither rounded nor clamped.
Image add_speckle(const Image& image, const SpeckleParams& params);

// Pixelwise mean of equally sized realizations.
Image average_looks(std::span<const Image> looks);

} // namespace sbon
