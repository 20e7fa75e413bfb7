#pragma once

#include <string_view>
#include <vector>

#include "sbon/image.hpp"
#include "sbon/quantize.hpp"
#include "sbon/shrinkage.hpp"
#include "sbon/wavelet.hpp"

namespace sbon {

enum class Method { Sbon, VisuHard, VisuSoft };

// How the bit-plane set of a detail subband is rewritten before reassembly.
//  DualOrder: BOP (version 1) over the planes most-significant-first gives set A,
//             BOP over the planes least-significant-first (re-indexed back) gives
//             set B; plane k becomes A_k AND B_k.
//  Identity:  planes pass through unchanged.
enum class Projection { DualOrder, Identity };

struct DespeckleConfig {
    Method method = Method::Sbon;
    std::size_t levels = 1;
    unsigned bits = 8;
    Projection projection = Projection::DualOrder;

    // Throws ConfigError for levels == 0 or bits outside [1, 16].
    void validate() const;
};

std::string_view method_name(Method method) noexcept;
std::string_view projection_name(Projection projection) noexcept;

BitPlaneSet project_planes(const BitPlaneSet& planes, Projection projection);

// Every intermediate of one SBON detail subband, in processing order.
struct SbonSubbandTrace {
    std::size_t level = 0; // 1-based
    Subband band = Subband::LH;
    RealGrid coefficients;
    IntGrid quantized;
    QuantParams params;
    BitPlaneSet planes_in;
    BitPlaneSet planes_out;
    IntGrid reassembled;
    RealGrid restored;
};

struct SbonTrace {
    WaveletDecomposition input;
    WaveletDecomposition output;
    std::vector<SbonSubbandTrace> subbands; // level-major, then LH, HL, HH
    Image result;
};

struct VisuSubbandTrace {
    std::size_t level = 0;
    Subband band = Subband::LH;
    ShrinkageParams shrinkage;
};

struct VisuTrace {
    WaveletDecomposition input;
    WaveletDecomposition output;
    std::vector<VisuSubbandTrace> subbands;
    Image result;
};

SbonTrace sbon_trace(const Image& image, const DespeckleConfig& config);
VisuTrace visushrink_trace(const Image& image, const DespeckleConfig& config);

Image sbon_despeckle(const Image& image, const DespeckleConfig& config);
Image visushrink_despeckle(const Image& image, const DespeckleConfig& config);

// Dispatches on config.method.
Image despeckle(const Image& image, const DespeckleConfig& config);

} // namespace sbon
