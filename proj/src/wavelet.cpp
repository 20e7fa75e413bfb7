#include "sbon/wavelet.hpp"

#include <string>

namespace sbon {

std::string_view subband_name(Subband band) noexcept {
    switch (band) {
    case Subband::LH: return "LH";
    case Subband::HL: return "HL";
    case Subband::HH: return "HH";
    }
    return "?";
}

RealGrid& DetailBands::operator[](Subband band) noexcept {
    return band == Subband::LH ? lh : band == Subband::HL ? hl : hh;
}

const RealGrid& DetailBands::operator[](Subband band) const noexcept {
    return band == Subband::LH ? lh : band == Subband::HL ? hl : hh;
}

namespace {

// One analysis step. Filtering rows with (1/√2)(1, 1) / (1/√2)(1, -1) then columns with
// the same pair reduces, for each 2x2 block [[a, b], [c, d]], to
//   LL = (a+b+c+d)/2   HL = (a-b+c-d)/2   LH = (a+b-c-d)/2   HH = (a-b-c+d)/2
// which is what gets evaluated here.
void analyze(const RealGrid& in, RealGrid& ll, DetailBands& bands) {
    const std::size_t rows = in.rows() / 2;
    const std::size_t cols = in.cols() / 2;
    ll = RealGrid(rows, cols);
    bands.lh = RealGrid(rows, cols);
    bands.hl = RealGrid(rows, cols);
    bands.hh = RealGrid(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double a = in(2 * r, 2 * c);
            const double b = in(2 * r, 2 * c + 1);
            const double cc = in(2 * r + 1, 2 * c);
            const double d = in(2 * r + 1, 2 * c + 1);
            ll(r, c) = (a + b + cc + d) * 0.5;
            bands.hl(r, c) = (a - b + cc - d) * 0.5;
            bands.lh(r, c) = (a + b - cc - d) * 0.5;
            bands.hh(r, c) = (a - b - cc + d) * 0.5;
        }
    }
}

RealGrid synthesize(const RealGrid& ll, const DetailBands& bands) {
    const std::size_t rows = ll.rows();
    const std::size_t cols = ll.cols();
    RealGrid out(rows * 2, cols * 2);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double s = ll(r, c);
            const double h = bands.hl(r, c);
            const double v = bands.lh(r, c);
            const double d = bands.hh(r, c);
            out(2 * r, 2 * c) = (s + h + v + d) * 0.5;
            out(2 * r, 2 * c + 1) = (s - h + v - d) * 0.5;
            out(2 * r + 1, 2 * c) = (s + h - v - d) * 0.5;
            out(2 * r + 1, 2 * c + 1) = (s - h - v + d) * 0.5;
        }
    }
    return out;
}

} // namespace

WaveletDecomposition dwt2_forward(const RealGrid& grid, std::size_t levels) {
    if (levels == 0) throw DimensionError("decomposition needs at least one level");
    if (levels >= 8 * sizeof(std::size_t)) throw DimensionError("too many decomposition levels");
    const std::size_t divisor = std::size_t{1} << levels;
    if (grid.empty() || grid.rows() % divisor != 0 || grid.cols() % divisor != 0) {
        throw DimensionError("grid " + std::to_string(grid.rows()) + "x" + std::to_string(grid.cols()) +
                             " not divisible by " + std::to_string(divisor) + " (2^" +
                             std::to_string(levels) + ") for " + std::to_string(levels) + " level(s)");
    }

    WaveletDecomposition out;
    out.details.resize(levels);
    RealGrid current = grid;
    for (std::size_t level = 0; level < levels; ++level) {
        RealGrid next;
        analyze(current, next, out.details[level]);
        current = std::move(next);
    }
    out.ll = std::move(current);
    return out;
}

RealGrid dwt2_inverse(const WaveletDecomposition& decomposition) {
    if (decomposition.details.empty()) throw StructuralError("decomposition has no levels");
    RealGrid current = decomposition.ll;
    for (std::size_t level = decomposition.levels(); level-- > 0;) {
        const DetailBands& bands = decomposition.details[level];
        for (Subband band : kDetailSubbands) {
            if (!bands[band].same_shape(current)) {
                throw StructuralError("level " + std::to_string(level + 1) + " " +
                                      std::string(subband_name(band)) + " is " +
                                      std::to_string(bands[band].rows()) + "x" +
                                      std::to_string(bands[band].cols()) + ", expected " +
                                      std::to_string(current.rows()) + "x" + std::to_string(current.cols()));
            }
        }
        current = synthesize(current, bands);
    }
    return current;
}

} // namespace sbon
