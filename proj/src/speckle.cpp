#include "sbon/speckle.hpp"

#include <cmath>
#include <string>

#include "sbon/error.hpp"

namespace sbon {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}
    std::uint64_t next() noexcept { return mix64(state_ += kGolden); }
    double uniform_open_zero() noexcept { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

} // namespace

void SpeckleParams::validate() const {
    if (looks == 0) throw ConfigError("number of looks must be at least 1");
}

double speckle_multiplier(const SpeckleParams& params, std::uint64_t index) noexcept {
    SplitMix64 rng(mix64(params.seed + (index + 1) * kGolden));
    double log_sum = 0.0;
    for (unsigned t = 0; t < params.looks; ++t) log_sum += std::log(rng.uniform_open_zero());
    // -0.0 for u == 1 in every draw; keep the multiplier non-negative zero.
    return log_sum == 0.0 ? 0.0 : -log_sum / static_cast<double>(params.looks);
}

std::vector<double> speckle_multipliers(const SpeckleParams& params, std::size_t count) {
    params.validate();
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) out[j] = speckle_multiplier(params, j);
    return out;
}

Image add_speckle(const Image& image, const SpeckleParams& params) {
    params.validate();
    Image out = image;
    auto& s = out.samples();
    for (std::size_t j = 0; j < s.size(); ++j) s[j] *= speckle_multiplier(params, j);
    return out;
}

Image average_looks(std::span<const Image> looks) {
    if (looks.empty()) throw StructuralError("average_looks needs at least one realization");
    const Image& first = looks.front();
    RealGrid sum(first.height(), first.width(), 0.0);
    for (std::size_t k = 0; k < looks.size(); ++k) {
        if (!looks[k].samples().same_shape(first.samples())) {
            throw StructuralError("realization " + std::to_string(k) + " is " + std::to_string(looks[k].width()) +
                                  "x" + std::to_string(looks[k].height()) + ", expected " +
                                  std::to_string(first.width()) + "x" + std::to_string(first.height()));
        }
        const auto& s = looks[k].samples();
        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += s[j];
    }
    const double n = static_cast<double>(looks.size());
    for (double& v : sum) v /= n;
    return Image(std::move(sum), first.declared_max());
}

} // namespace sbon
