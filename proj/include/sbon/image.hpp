#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sbon/grid.hpp"

namespace sbon {

enum class PgmFormat { P2, P5 };

// Grey-level image with real-valued samples and a declared bit depth.
//
// Samples are finite but may leave [0, declared_max] transiently (e.g. straight out
// of an inverse transform); clamp_to_depth() brings them back and write_pgm() rejects
// anything that would not fit.
class Image {
public:
    Image() = default;
    Image(std::size_t width, std::size_t height, std::uint32_t declared_max);
    Image(RealGrid samples, std::uint32_t declared_max);

    std::size_t width() const noexcept { return samples_.cols(); }
    std::size_t height() const noexcept { return samples_.rows(); }
    std::uint32_t declared_max() const noexcept { return declared_max_; }

    const RealGrid& samples() const noexcept { return samples_; }
    RealGrid& samples() noexcept { return samples_; }

    double operator()(std::size_t row, std::size_t col) const noexcept { return samples_(row, col); }
    double& operator()(std::size_t row, std::size_t col) noexcept { return samples_(row, col); }

    friend bool operator==(const Image&, const Image&) = default;

private:
    RealGrid samples_;
    std::uint32_t declared_max_ = 255;
};

bool is_supported_maxval(std::uint32_t maxval) noexcept;

// Parses a P2 or P5 stream. Samples are the stored values, unscaled; 16-bit P5 is big-endian.
Image read_pgm(std::string_view bytes);

// Samples are rounded half away from zero; any rounded sample outside [0, declared_max]
// raises RangeError naming the pixel.
std::string write_pgm(const Image& image, PgmFormat format = PgmFormat::P5);

Image clamp_to_depth(const Image& image);

// Loss-free text grid used to chain real-valued images between CLI commands:
//   SBONRAW <width> <height> <declared_max>\n
// followed by one line per row of space-separated %.17g values.
std::string write_raw_grid(const Image& image);
Image read_raw_grid(std::string_view bytes);

// Dispatches on the leading magic (P2, P5 or SBONRAW).
Image decode_image(std::string_view bytes);

} // namespace sbon
