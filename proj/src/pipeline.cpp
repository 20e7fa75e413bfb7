#include "sbon/pipeline.hpp"

#include <string>
#include <tuple>

#include "sbon/bop.hpp"
#include "sbon/error.hpp"

namespace sbon {

void DespeckleConfig::validate() const {
    if (levels == 0) throw ConfigError("levels must be at least 1");
    if (bits < kMinBits || bits > kMaxBits) {
        throw ConfigError("bits must be in [1, 16], got " + std::to_string(bits));
    }
}

std::string_view method_name(Method method) noexcept {
    switch (method) {
    case Method::Sbon: return "sbon";
    case Method::VisuHard: return "visu-hard";
    case Method::VisuSoft: return "visu-soft";
    }
    return "?";
}

std::string_view projection_name(Projection projection) noexcept {
    return projection == Projection::DualOrder ? "dual-order" : "identity";
}

BitPlaneSet project_planes(const BitPlaneSet& planes, Projection projection) {
    if (projection == Projection::Identity) return planes;

    const BitPlaneSet reverse_input = reversed(planes);
    const BopResult forward = bop_v1(planes.planes);
    BopResult backward = bop_v1(reverse_input.planes);

    BitPlaneSet out = planes;
    const std::size_t q = planes.bits();
    for (std::size_t k = 0; k < q; ++k) {
        out.planes[k] = forward.u[k] & backward.u[q - 1 - k];
    }
    return out;
}

namespace {

Image finish(const RealGrid& reconstruction, std::uint32_t declared_max) {
    return clamp_to_depth(Image(reconstruction, declared_max));
}

} // namespace

SbonTrace sbon_trace(const Image& image, const DespeckleConfig& config) {
    config.validate();
    SbonTrace trace;
    trace.input = dwt2_forward(image.samples(), config.levels);
    trace.output = trace.input;

    for (std::size_t level = 0; level < config.levels; ++level) {
        for (Subband band : kDetailSubbands) {
            SbonSubbandTrace st;
            st.level = level + 1;
            st.band = band;
            st.coefficients = trace.input.details[level][band];
            std::tie(st.quantized, st.params) = quantize(st.coefficients, config.bits);
            st.planes_in = bit_slice(st.quantized, config.bits);
            st.planes_out = project_planes(st.planes_in, config.projection);
            st.reassembled = reassemble(st.planes_out);
            st.restored = dequantize(st.reassembled, st.params);
            trace.output.details[level][band] = st.restored;
            trace.subbands.push_back(std::move(st));
        }
    }
    trace.result = finish(dwt2_inverse(trace.output), image.declared_max());
    return trace;
}

VisuTrace visushrink_trace(const Image& image, const DespeckleConfig& config) {
    config.validate();
    if (config.method == Method::Sbon) throw ConfigError("visushrink_trace needs a visu-hard/visu-soft method");
    VisuTrace trace;
    trace.input = dwt2_forward(image.samples(), config.levels);
    trace.output = trace.input;

    for (std::size_t level = 0; level < config.levels; ++level) {
        // Noise level for all three detail channels of a level comes from its HH channel.
        const RealGrid& hh = trace.input.details[level].hh;
        for (Subband band : kDetailSubbands) {
            RealGrid& coeffs = trace.output.details[level][band];
            const ShrinkageParams p = visushrink_params(hh, coeffs.size());
            coeffs = config.method == Method::VisuHard ? hard_threshold(coeffs, p.lambda)
                                                       : soft_threshold(coeffs, p.lambda);
            trace.subbands.push_back({level + 1, band, p});
        }
    }
    trace.result = finish(dwt2_inverse(trace.output), image.declared_max());
    return trace;
}

Image sbon_despeckle(const Image& image, const DespeckleConfig& config) {
    return sbon_trace(image, config).result;
}

Image visushrink_despeckle(const Image& image, const DespeckleConfig& config) {
    return visushrink_trace(image, config).result;
}

Image despeckle(const Image& image, const DespeckleConfig& config) {
    return config.method == Method::Sbon ? sbon_despeckle(image, config) : visushrink_despeckle(image, config);
}

} // namespace sbon
