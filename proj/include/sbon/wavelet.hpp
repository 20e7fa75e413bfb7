#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "sbon/grid.hpp"

namespace sbon {

enum class Subband { LH, HL, HH };

inline constexpr std::array<Subband, 3> kDetailSubbands{Subband::LH, Subband::HL, Subband::HH};

std::string_view subband_name(Subband band) noexcept;

// Detail channels of one decomposition level. LH is the vertical detail, HL the
// horizontal detail, HH the diagonal detail.
struct DetailBands {
    RealGrid lh;
    RealGrid hl;
    RealGrid hh;

    RealGrid& operator[](Subband band) noexcept;
    const RealGrid& operator[](Subband band) const noexcept;

    friend bool operator==(const DetailBands&, const DetailBands&) = default;
};

// Pyramid produced by recursive decomposition of the LL channel.
// details[0] is level 1 (finest, H/2 x W/2); ll is the approximation at level `levels()`.
struct WaveletDecomposition {
    RealGrid ll;
    std::vector<DetailBands> details;

    std::size_t levels() const noexcept { return details.size(); }

    friend bool operator==(const WaveletDecomposition&, const WaveletDecomposition&) = default;
};

// Orthonormal separable Haar analysis, `levels` deep. Rows and columns must be
// divisible by 2^levels.
WaveletDecomposition dwt2_forward(const RealGrid& grid, std::size_t levels = 1);

// Exact adjoint of dwt2_forward.
RealGrid dwt2_inverse(const WaveletDecomposition& decomposition);

} // namespace sbon
