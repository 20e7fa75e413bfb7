#include "sbon/image.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace sbon {

namespace {

void check_finite(const RealGrid& samples) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i])) {
            throw DataError("image sample " + std::to_string(i) + " is not finite");
        }
    }
}

std::string at_offset(std::size_t offset) { return " at byte offset " + std::to_string(offset); }

// Tokenizer for the ASCII part of a netpbm stream. '#' starts a comment running to end of line.
class HeaderReader {
public:
    explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

    std::size_t offset() const noexcept { return pos_; }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (is_space(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::uint64_t read_uint(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        if (pos_ >= bytes_.size()) {
            throw ParseError(std::string("unexpected end of data reading ") + what + at_offset(start));
        }
        std::uint64_t value = 0;
        const char* first = bytes_.data() + pos_;
        const char* last = bytes_.data() + bytes_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first) {
            throw ParseError(std::string("expected unsigned integer for ") + what + at_offset(start));
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        if (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') {
            throw ParseError(std::string("garbage after ") + what + at_offset(pos_));
        }
        return value;
    }

    // The single whitespace byte separating a binary header from its payload.
    void expect_single_space() {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
            throw ParseError("expected whitespace before pixel data" + at_offset(pos_));
        }
        ++pos_;
    }

private:
    static bool is_space(char c) noexcept {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    }

    std::string_view bytes_;
    std::size_t pos_ = 0;
};

std::uint32_t checked_sample(double value, std::uint32_t maxval, std::size_t row, std::size_t col) {
    const double rounded = std::round(value);
    if (!(rounded >= 0.0 && rounded <= static_cast<double>(maxval))) {
        throw RangeError("sample " + std::to_string(value) + " at (row " + std::to_string(row) +
                         ", col " + std::to_string(col) + ") outside [0, " + std::to_string(maxval) +
                         "]");
    }
    return static_cast<std::uint32_t>(rounded);
}

} // namespace

bool is_supported_maxval(std::uint32_t maxval) noexcept { return maxval == 255 || maxval == 65535; }

Image::Image(std::size_t width, std::size_t height, std::uint32_t declared_max)
    : Image(RealGrid(height, width, 0.0), declared_max) {}

Image::Image(RealGrid samples, std::uint32_t declared_max)
    : samples_(std::move(samples)), declared_max_(declared_max) {
    if (samples_.rows() == 0 || samples_.cols() == 0) {
        throw StructuralError("image must have positive width and height");
    }
    if (!is_supported_maxval(declared_max_)) {
        throw RangeError("unsupported maxval " + std::to_string(declared_max_) + " (expected 255 or 65535)");
    }
    check_finite(samples_);
}

Image read_pgm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        throw ParseError("missing P2/P5 magic" + at_offset(0));
    }
    const bool binary = bytes[1] == '5';
    HeaderReader reader(bytes.substr(2));
    const auto base = [](std::size_t off) { return off + 2; };

    const std::uint64_t width = reader.read_uint("width");
    const std::uint64_t height = reader.read_uint("height");
    const std::size_t maxval_offset = base(reader.offset());
    const std::uint64_t maxval = reader.read_uint("maxval");
    if (width == 0 || height == 0) {
        throw ParseError("zero image dimension" + at_offset(maxval_offset));
    }
    if (maxval > 65535 || !is_supported_maxval(static_cast<std::uint32_t>(maxval))) {
        throw ParseError("unsupported maxval " + std::to_string(maxval) + at_offset(maxval_offset));
    }

    const std::size_t count = width * height;
    std::vector<double> samples(count);
    if (binary) {
        reader.expect_single_space();
        const std::size_t data_start = base(reader.offset());
        const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
        const std::size_t needed = count * bytes_per_sample;
        if (bytes.size() - data_start < needed) {
            throw ParseError("truncated pixel data: need " + std::to_string(needed) + " bytes, have " +
                             std::to_string(bytes.size() - data_start) + at_offset(data_start));
        }
        const auto* data = reinterpret_cast<const unsigned char*>(bytes.data() + data_start);
        for (std::size_t i = 0; i < count; ++i) {
            std::uint32_t v = bytes_per_sample == 2
                                  ? (std::uint32_t{data[2 * i]} << 8) | std::uint32_t{data[2 * i + 1]}
                                  : std::uint32_t{data[i]};
            if (v > maxval) {
                throw ParseError("sample " + std::to_string(v) + " exceeds maxval" +
                                 at_offset(data_start + i * bytes_per_sample));
            }
            samples[i] = static_cast<double>(v);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t off = base(reader.offset());
            const std::uint64_t v = reader.read_uint("sample");
            if (v > maxval) {
                throw ParseError("sample " + std::to_string(v) + " exceeds maxval" + at_offset(off));
            }
            samples[i] = static_cast<double>(v);
        }
    }
    return Image(RealGrid(height, width, std::move(samples)), static_cast<std::uint32_t>(maxval));
}

std::string write_pgm(const Image& image, PgmFormat format) {
    const std::uint32_t maxval = image.declared_max();
    const auto& s = image.samples();
    std::string out = (format == PgmFormat::P5 ? "P5\n" : "P2\n") + std::to_string(image.width()) + " " +
                      std::to_string(image.height()) + "\n" + std::to_string(maxval) + "\n";
    if (format == PgmFormat::P5) {
        const bool wide = maxval > 255;
        out.reserve(out.size() + s.size() * (wide ? 2 : 1));
        for (std::size_t r = 0; r < s.rows(); ++r) {
            for (std::size_t c = 0; c < s.cols(); ++c) {
                const std::uint32_t v = checked_sample(s(r, c), maxval, r, c);
                if (wide) out.push_back(static_cast<char>(v >> 8));
                out.push_back(static_cast<char>(v & 0xFF));
            }
        }
    } else {
        for (std::size_t r = 0; r < s.rows(); ++r) {
            for (std::size_t c = 0; c < s.cols(); ++c) {
                if (c) out.push_back(' ');
                out += std::to_string(checked_sample(s(r, c), maxval, r, c));
            }
            out.push_back('\n');
        }
    }
    return out;
}

Image clamp_to_depth(const Image& image) {
    Image out = image;
    const double hi = image.declared_max();
    for (double& v : out.samples()) v = std::clamp(v, 0.0, hi);
    return out;
}

std::string write_raw_grid(const Image& image) {
    std::string out = "SBONRAW " + std::to_string(image.width()) + " " + std::to_string(image.height()) +
                      " " + std::to_string(image.declared_max()) + "\n";
    char buf[32];
    const auto& s = image.samples();
    for (std::size_t r = 0; r < s.rows(); ++r) {
        for (std::size_t c = 0; c < s.cols(); ++c) {
            const int n = std::snprintf(buf, sizeof buf, "%.17g", s(r, c));
            if (c) out.push_back(' ');
            out.append(buf, static_cast<std::size_t>(n));
        }
        out.push_back('\n');
    }
    return out;
}

Image read_raw_grid(std::string_view bytes) {
    constexpr std::string_view magic = "SBONRAW";
    if (!bytes.starts_with(magic)) throw ParseError("missing SBONRAW magic" + at_offset(0));
    HeaderReader reader(bytes.substr(magic.size()));
    const std::uint64_t width = reader.read_uint("width");
    const std::uint64_t height = reader.read_uint("height");
    const std::size_t maxval_offset = magic.size() + reader.offset();
    const std::uint64_t maxval = reader.read_uint("declared_max");
    if (width == 0 || height == 0) throw ParseError("zero image dimension" + at_offset(maxval_offset));
    if (maxval > 65535 || !is_supported_maxval(static_cast<std::uint32_t>(maxval))) {
        throw ParseError("unsupported maxval " + std::to_string(maxval) + at_offset(maxval_offset));
    }

    std::size_t pos = magic.size() + reader.offset();
    std::vector<double> samples(width * height);
    for (double& v : samples) {
        while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        if (pos >= bytes.size()) throw ParseError("truncated raw grid" + at_offset(pos));
        const char* first = bytes.data() + pos;
        auto [ptr, ec] = std::from_chars(first, bytes.data() + bytes.size(), v);
        if (ec != std::errc{} || ptr == first) throw ParseError("expected real value" + at_offset(pos));
        pos += static_cast<std::size_t>(ptr - first);
    }
    return Image(RealGrid(height, width, std::move(samples)), static_cast<std::uint32_t>(maxval));
}

Image decode_image(std::string_view bytes) {
    if (bytes.starts_with("SBONRAW")) return read_raw_grid(bytes);
    return read_pgm(bytes);
}

} // namespace sbon
