#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sbon/image.hpp"

namespace sbon {

// Speckle-reduction quality measures. All variances are population variances
// (divide by R*C). Dimension mismatches raise StructuralError; metrics that are
// undefined for the input raise DegenerateInputError.

double nmv(const Image& image);
double nv(const Image& image);
double nsd(const Image& image);

double mse(const Image& reference, const Image& test);

// 10 log10(nv(test) / mse(reference, test)); note the variance is taken over the
// despeckled image, not the reference. Throws when the images are identical.
double snr(const Image& reference, const Image& test);

// Mean squared difference between the speckled original and the despeckled image.
double msd(const Image& speckled, const Image& despeckled);

inline constexpr std::size_t kEnlTile = 25;

// Mean of nmv^2 / nsd^2 over non-overlapping tile x tile blocks anchored at the top-left.
// Partial edge blocks and constant blocks are skipped.
double enl_tiled(const Image& image, std::size_t tile = kEnlTile);

// (1/RC) * sum (I - nmv) / nsd, evaluated as written. Analytically zero.
double dr(const Image& image);

using EdgeMap = Grid<std::uint8_t>;

// Sobel gradient magnitude (replicated borders) thresholded either at a fixed
// magnitude (edge iff magnitude > threshold) or automatically with Otsu's method on
// a 256-bin histogram over [0, max magnitude].
struct EdgeThreshold {
    std::optional<double> fixed;
};

RealGrid sobel_magnitude(const Image& image);
EdgeMap detect_edges(const Image& image, const EdgeThreshold& threshold = {});

struct FomParams {
    double alpha = 1.0 / 9.0;
    EdgeThreshold edge_threshold;
};

// Squared Euclidean distance from every cell to the nearest set cell of `features`
// (exact, separable lower-envelope algorithm). Cells are +inf when `features` is empty.
RealGrid squared_distance_transform(const EdgeMap& features);

// Pratt's figure of merit: (1 / max(N_detected, N_ideal)) * sum 1 / (1 + alpha d_i^2).
// An empty detected map scores 0; an empty ideal map raises.
double fom(const EdgeMap& detected, const EdgeMap& ideal, double alpha = 1.0 / 9.0);

struct MetricsReport {
    double msd = 0.0;
    double nmv = 0.0;
    double nsd = 0.0;
    double enl = 0.0; // NaN when every tile is degenerate
    double dr = 0.0;  // NaN when the image is constant
    double fom = 0.0; // NaN when the ideal edge map is empty
    // Present only when a noise-free reference was supplied.
    std::optional<double> snr; // +inf when test == reference
    std::optional<double> mse;
    std::optional<double> nv;
};

// `speckled` is the despeckler's input; ideal edges come from `reference` when given,
// otherwise from `speckled`. Detected edges come from `test`.
MetricsReport compute_report(const Image& test, const Image& speckled, const Image* reference,
                             const FomParams& params = {});

// Fixed schemas: CSV header msd,nmv,nsd,enl,dr,fom[,snr,mse,nv] plus one data row;
// JSON object with the same keys in the same order. Non-finite values are written as
// nan/inf in CSV and null in JSON.
std::string report_csv(const MetricsReport& report);
std::string report_json(const MetricsReport& report);

} // namespace sbon
