#include "sbon/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sbon/error.hpp"

namespace sbon {

namespace {

void check_bits(unsigned bits) {
    if (bits < kMinBits || bits > kMaxBits) {
        throw ConfigError("bit count " + std::to_string(bits) + " outside [1, 16]");
    }
}

void check_range(const IntGrid& values, unsigned bits) {
    const std::uint32_t hi = (std::uint32_t{1} << bits) - 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > hi) {
            throw RangeError("value " + std::to_string(values[i]) + " at index " + std::to_string(i) +
                             " exceeds " + std::to_string(hi) + " for " + std::to_string(bits) + " bits");
        }
    }
}

} // namespace

std::pair<IntGrid, QuantParams> quantize(const RealGrid& grid, unsigned bits) {
    check_bits(bits);
    if (grid.empty()) throw DataError("cannot quantize an empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw DataError("non-finite coefficient at index " + std::to_string(i));
    }
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    QuantParams params{*lo, *hi, bits};

    IntGrid out(grid.rows(), grid.cols(), 0U);
    if (params.degenerate()) return {std::move(out), params};

    const double range = params.c_max - params.c_min;
    const double top = params.levels_max();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        // std::round rounds halves away from zero; the argument is non-negative here.
        const double q = std::round((grid[i] - params.c_min) / range * top);
        out[i] = static_cast<std::uint32_t>(std::clamp(q, 0.0, top));
    }
    return {std::move(out), params};
}

RealGrid dequantize(const IntGrid& values, const QuantParams& params) {
    check_bits(params.bits);
    check_range(values, params.bits);
    RealGrid out(values.rows(), values.cols(), params.c_min);
    if (params.degenerate()) return out;
    const double range = params.c_max - params.c_min;
    const double top = params.levels_max();
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = params.c_min + static_cast<double>(values[i]) / top * range;
    }
    return out;
}

BitPlaneSet bit_slice(const IntGrid& values, unsigned bits) {
    check_bits(bits);
    check_range(values, bits);
    BitPlaneSet set;
    set.rows = values.rows();
    set.cols = values.cols();
    set.order = PlaneOrder::MostSignificantFirst;
    set.planes.assign(bits, BinaryVector(values.size()));
    for (std::size_t k = 0; k < bits; ++k) {
        const unsigned shift = bits - 1 - static_cast<unsigned>(k);
        BinaryVector& plane = set.planes[k];
        for (std::size_t j = 0; j < values.size(); ++j) {
            if ((values[j] >> shift) & 1U) plane.set(j);
        }
    }
    return set;
}

IntGrid reassemble(const BitPlaneSet& planes) {
    if (planes.planes.empty() || planes.bits() > kMaxBits) {
        throw StructuralError("bit-plane set must hold 1..16 planes, has " + std::to_string(planes.bits()));
    }
    const std::size_t p = planes.plane_len();
    for (std::size_t k = 0; k < planes.bits(); ++k) {
        if (planes.planes[k].size() != p) {
            throw StructuralError("plane " + std::to_string(k) + " has length " +
                                  std::to_string(planes.planes[k].size()) + ", expected " + std::to_string(p));
        }
    }
    IntGrid out(planes.rows, planes.cols, 0U);
    for (std::size_t k = 0; k < planes.bits(); ++k) {
        const std::uint32_t weight = std::uint32_t{1} << planes.exponent(k);
        const BinaryVector& plane = planes.planes[k];
        for (std::size_t j = 0; j < p; ++j) {
            if (plane.test(j)) out[j] |= weight;
        }
    }
    return out;
}

BitPlaneSet reversed(const BitPlaneSet& planes) {
    BitPlaneSet out = planes;
    std::reverse(out.planes.begin(), out.planes.end());
    out.order = planes.order == PlaneOrder::MostSignificantFirst ? PlaneOrder::LeastSignificantFirst
                                                                 : PlaneOrder::MostSignificantFirst;
    return out;
}

} // namespace sbon
