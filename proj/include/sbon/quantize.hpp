#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sbon/binary_vector.hpp"
#include "sbon/grid.hpp"

namespace sbon {

using IntGrid = Grid<std::uint32_t>;

inline constexpr unsigned kMinBits = 1;
inline constexpr unsigned kMaxBits = 16;

// Affine map between the real interval [c_min, c_max] and the integers [0, 2^bits - 1].
struct QuantParams {
    double c_min = 0.0;
    double c_max = 0.0;
    unsigned bits = 8;

    std::uint32_t levels_max() const noexcept { return (std::uint32_t{1} << bits) - 1; }
    bool degenerate() const noexcept { return c_max == c_min; }
    // Largest |dequantize(quantize(g)) - g| for any g in range.
    double half_step() const noexcept { return (c_max - c_min) / (2.0 * levels_max()); }

    friend bool operator==(const QuantParams&, const QuantParams&) = default;
};

enum class PlaneOrder { MostSignificantFirst, LeastSignificantFirst };

// Bit-planes of an integer grid, one BinaryVector of rows*cols elements per bit.
struct BitPlaneSet {
    std::vector<BinaryVector> planes;
    PlaneOrder order = PlaneOrder::MostSignificantFirst;
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::size_t bits() const noexcept { return planes.size(); }
    std::size_t plane_len() const noexcept { return rows * cols; }

    // Weight exponent of plane k (2^exponent).
    std::size_t exponent(std::size_t k) const noexcept {
        return order == PlaneOrder::MostSignificantFirst ? planes.size() - 1 - k : k;
    }

    friend bool operator==(const BitPlaneSet&, const BitPlaneSet&) = default;
};

// Scales [min, max] of the grid onto [0, 2^bits - 1], rounding half away from zero.
// A constant grid quantizes to zeros.
std::pair<IntGrid, QuantParams> quantize(const RealGrid& grid, unsigned bits);

RealGrid dequantize(const IntGrid& values, const QuantParams& params);

// Plane k holds bit (bits-1-k) of each value (most significant first).
BitPlaneSet bit_slice(const IntGrid& values, unsigned bits);

IntGrid reassemble(const BitPlaneSet& planes);

// Same planes, indexing flipped between most- and least-significant-first.
BitPlaneSet reversed(const BitPlaneSet& planes);

} // namespace sbon
