#include "sbon/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include <nlohmann/json.hpp>

#include "sbon/error.hpp"

namespace sbon {

namespace {

void check_same_shape(const Image& a, const Image& b, const char* op) {
    if (!a.samples().same_shape(b.samples())) {
        throw StructuralError(std::string(op) + ": image sizes differ (" + std::to_string(a.width()) + "x" +
                              std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                              std::to_string(b.height()) + ")");
    }
}

double mean_squared_difference(const Image& a, const Image& b, const char* op) {
    check_same_shape(a, b, op);
    const auto& x = a.samples();
    const auto& y = b.samples();
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sum += d * d;
    }
    return sum / static_cast<double>(x.size());
}

} // namespace

double nmv(const Image& image) {
    const auto& s = image.samples();
    double sum = 0.0;
    for (double v : s) sum += v;
    return sum / static_cast<double>(s.size());
}

double nv(const Image& image) {
    const double mean = nmv(image);
    double sum = 0.0;
    for (double v : image.samples()) sum += (v - mean) * (v - mean);
    return sum / static_cast<double>(image.samples().size());
}

double nsd(const Image& image) { return std::sqrt(nv(image)); }

double mse(const Image& reference, const Image& test) { return mean_squared_difference(reference, test, "mse"); }

double snr(const Image& reference, const Image& test) {
    const double err = mse(reference, test);
    if (err == 0.0) throw DegenerateInputError("snr: test image equals reference (zero MSE)");
    return 10.0 * std::log10(nv(test) / err);
}

double msd(const Image& speckled, const Image& despeckled) {
    return mean_squared_difference(speckled, despeckled, "msd");
}

double enl_tiled(const Image& image, std::size_t tile) {
    if (tile == 0) throw ConfigError("enl tile size must be positive");
    const auto& s = image.samples();
    if (s.rows() < tile || s.cols() < tile) {
        throw DegenerateInputError("enl: image smaller than one " + std::to_string(tile) + "x" +
                                   std::to_string(tile) + " tile");
    }
    const double n = static_cast<double>(tile * tile);
    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t r0 = 0; r0 + tile <= s.rows(); r0 += tile) {
        for (std::size_t c0 = 0; c0 + tile <= s.cols(); c0 += tile) {
            double sum = 0.0;
            double lo = s(r0, c0);
            double hi = lo;
            for (std::size_t r = r0; r < r0 + tile; ++r) {
                for (std::size_t c = c0; c < c0 + tile; ++c) {
                    sum += s(r, c);
                    lo = std::min(lo, s(r, c));
                    hi = std::max(hi, s(r, c));
                }
            }
            if (lo == hi) continue;
            const double mean = sum / n;
            double var = 0.0;
            for (std::size_t r = r0; r < r0 + tile; ++r) {
                for (std::size_t c = c0; c < c0 + tile; ++c) var += (s(r, c) - mean) * (s(r, c) - mean);
            }
            var /= n;
            if (var == 0.0) continue;
            total += mean * mean / var;
            ++used;
        }
    }
    if (used == 0) throw DegenerateInputError("enl: every tile has zero standard deviation");
    return total / static_cast<double>(used);
}

double dr(const Image& image) {
    const double mean = nmv(image);
    const double sd = nsd(image);
    if (sd == 0.0) throw DegenerateInputError("dr: image has zero standard deviation");
    double sum = 0.0;
    for (double v : image.samples()) sum += (v - mean) / sd;
    return sum / static_cast<double>(image.samples().size());
}

RealGrid sobel_magnitude(const Image& image) {
    const auto& s = image.samples();
    const std::size_t rows = s.rows();
    const std::size_t cols = s.cols();
    const auto at = [&](std::ptrdiff_t r, std::ptrdiff_t c) {
        r = std::clamp<std::ptrdiff_t>(r, 0, static_cast<std::ptrdiff_t>(rows) - 1);
        c = std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(cols) - 1);
        return s(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    };
    RealGrid out(rows, cols);
    for (std::size_t ur = 0; ur < rows; ++ur) {
        for (std::size_t uc = 0; uc < cols; ++uc) {
            const auto r = static_cast<std::ptrdiff_t>(ur);
            const auto c = static_cast<std::ptrdiff_t>(uc);
            const double gx = (at(r - 1, c + 1) + 2.0 * at(r, c + 1) + at(r + 1, c + 1)) -
                              (at(r - 1, c - 1) + 2.0 * at(r, c - 1) + at(r + 1, c - 1));
            const double gy = (at(r + 1, c - 1) + 2.0 * at(r + 1, c) + at(r + 1, c + 1)) -
                              (at(r - 1, c - 1) + 2.0 * at(r - 1, c) + at(r - 1, c + 1));
            out(ur, uc) = std::hypot(gx, gy);
        }
    }
    return out;
}

EdgeMap detect_edges(const Image& image, const EdgeThreshold& threshold) {
    const RealGrid mag = sobel_magnitude(image);
    EdgeMap edges(mag.rows(), mag.cols(), 0);

    if (threshold.fixed) {
        for (std::size_t i = 0; i < mag.size(); ++i) edges[i] = mag[i] > *threshold.fixed ? 1 : 0;
        return edges;
    }

    const double top = *std::max_element(mag.begin(), mag.end());
    if (top <= 0.0) return edges;

    constexpr std::size_t kBins = 256;
    std::vector<std::size_t> bin_of(mag.size());
    std::array<double, kBins> hist{};
    for (std::size_t i = 0; i < mag.size(); ++i) {
        const auto b = static_cast<std::size_t>(mag[i] / top * static_cast<double>(kBins));
        bin_of[i] = std::min(b, kBins - 1);
        hist[bin_of[i]] += 1.0;
    }

    // Otsu: split after bin t maximizing the between-class variance w0 w1 (mu0 - mu1)^2.
    double total_mass = 0.0;
    double total_moment = 0.0;
    for (std::size_t b = 0; b < kBins; ++b) {
        total_mass += hist[b];
        total_moment += static_cast<double>(b) * hist[b];
    }
    double w0 = 0.0;
    double m0 = 0.0;
    double best = -1.0;
    std::size_t split = 0;
    for (std::size_t t = 0; t + 1 < kBins; ++t) {
        w0 += hist[t];
        m0 += static_cast<double>(t) * hist[t];
        const double w1 = total_mass - w0;
        if (w0 == 0.0 || w1 == 0.0) continue;
        const double diff = m0 / w0 - (total_moment - m0) / w1;
        const double between = w0 * w1 * diff * diff;
        if (between > best) {
            best = between;
            split = t;
        }
    }
    for (std::size_t i = 0; i < mag.size(); ++i) edges[i] = bin_of[i] > split ? 1 : 0;
    return edges;
}

namespace {

// Lower envelope of parabolas for one line (Felzenszwalb & Huttenlocher).
void distance_1d(std::vector<double>& f, std::vector<double>& d, std::vector<std::size_t>& v,
                 std::vector<double>& z) {
    const std::size_t n = f.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::size_t k = 0;
    v[0] = 0;
    z[0] = -inf;
    z[1] = inf;
    const auto intersect = [&](std::size_t q, std::size_t p) {
        const auto fq = static_cast<double>(q);
        const auto fp = static_cast<double>(p);
        return ((f[q] + fq * fq) - (f[p] + fp * fp)) / (2.0 * (fq - fp));
    };
    for (std::size_t q = 1; q < n; ++q) {
        double s = intersect(q, v[k]);
        // z[0] is -inf, so this stops at k == 0 at the latest.
        while (s <= z[k]) s = intersect(q, v[--k]);
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = inf;
    }
    k = 0;
    for (std::size_t q = 0; q < n; ++q) {
        while (z[k + 1] < static_cast<double>(q)) ++k;
        const double dq = static_cast<double>(q) - static_cast<double>(v[k]);
        d[q] = dq * dq + f[v[k]];
    }
}

} // namespace

RealGrid squared_distance_transform(const EdgeMap& features) {
    const std::size_t rows = features.rows();
    const std::size_t cols = features.cols();
    constexpr double inf = std::numeric_limits<double>::infinity();
    RealGrid out(rows, cols, inf);
    if (std::none_of(features.begin(), features.end(), [](std::uint8_t b) { return b != 0; })) return out;

    // Finite stand-in for "no feature" so the parabola intersections stay finite.
    const double far = 4.0 * static_cast<double>((rows + cols) * (rows + cols)) + 1.0;
    const std::size_t n = std::max(rows, cols);
    std::vector<double> f(n), d(n), z(n + 1);
    std::vector<std::size_t> v(n);

    f.resize(rows);
    d.resize(rows);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) f[r] = features(r, c) ? 0.0 : far;
        distance_1d(f, d, v, z);
        for (std::size_t r = 0; r < rows; ++r) out(r, c) = d[r];
    }
    f.resize(cols);
    d.resize(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) f[c] = out(r, c);
        distance_1d(f, d, v, z);
        for (std::size_t c = 0; c < cols; ++c) out(r, c) = d[c];
    }
    return out;
}

double fom(const EdgeMap& detected, const EdgeMap& ideal, double alpha) {
    if (!detected.same_shape(ideal)) throw StructuralError("fom: edge maps differ in size");
    if (!(alpha > 0.0)) throw ConfigError("fom: alpha must be positive");
    const auto count = [](const EdgeMap& m) {
        return static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [](std::uint8_t b) { return b != 0; }));
    };
    const std::size_t n_ideal = count(ideal);
    if (n_ideal == 0) throw DegenerateInputError("fom: ideal edge map is empty");
    const std::size_t n_detected = count(detected);
    if (n_detected == 0) return 0.0;

    const RealGrid dist2 = squared_distance_transform(ideal);
    double sum = 0.0;
    for (std::size_t i = 0; i < detected.size(); ++i) {
        if (detected[i]) sum += 1.0 / (1.0 + alpha * dist2[i]);
    }
    return sum / static_cast<double>(std::max(n_detected, n_ideal));
}

MetricsReport compute_report(const Image& test, const Image& speckled, const Image* reference,
                             const FomParams& params) {
    check_same_shape(speckled, test, "metrics");
    if (reference) check_same_shape(*reference, test, "metrics");
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    MetricsReport report;
    report.msd = msd(speckled, test);
    report.nmv = nmv(test);
    report.nsd = nsd(test);
    try {
        report.enl = enl_tiled(test);
    } catch (const DegenerateInputError&) {
        report.enl = nan;
    }
    try {
        report.dr = dr(test);
    } catch (const DegenerateInputError&) {
        report.dr = nan;
    }
    const EdgeMap detected = detect_edges(test, params.edge_threshold);
    const EdgeMap ideal = detect_edges(reference ? *reference : speckled, params.edge_threshold);
    try {
        report.fom = fom(detected, ideal, params.alpha);
    } catch (const DegenerateInputError&) {
        report.fom = nan;
    }
    if (reference) {
        report.mse = mse(*reference, test);
        report.nv = nv(test);
        report.snr = *report.mse == 0.0 ? std::numeric_limits<double>::infinity()
                                        : 10.0 * std::log10(*report.nv / *report.mse);
    }
    return report;
}

namespace {

std::vector<std::pair<const char*, double>> report_fields(const MetricsReport& r) {
    std::vector<std::pair<const char*, double>> fields{
        {"msd", r.msd}, {"nmv", r.nmv}, {"nsd", r.nsd}, {"enl", r.enl}, {"dr", r.dr}, {"fom", r.fom}};
    if (r.snr) {
        fields.emplace_back("snr", *r.snr);
        fields.emplace_back("mse", r.mse.value_or(0.0));
        fields.emplace_back("nv", r.nv.value_or(0.0));
    }
    return fields;
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

} // namespace

std::string report_csv(const MetricsReport& report) {
    const auto fields = report_fields(report);
    std::string header;
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            header.push_back(',');
            row.push_back(',');
        }
        header += fields[i].first;
        row += format_real(fields[i].second);
    }
    return header + "\n" + row + "\n";
}

std::string report_json(const MetricsReport& report) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report_fields(report)) {
        if (std::isfinite(value)) {
            j[key] = value;
        } else {
            j[key] = nullptr;
        }
    }
    return j.dump() + "\n";
}

} // namespace sbon
