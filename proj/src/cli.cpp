#include "sbon/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sbon/error.hpp"
#include "sbon/image.hpp"
#include "sbon/metrics.hpp"
#include "sbon/pipeline.hpp"
#include "sbon/speckle.hpp"

namespace sbon::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

Image load_image(const fs::path& path) {
    try {
        return decode_image(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

// Writes to a sibling temporary and renames it into place.
void write_file_atomic(const fs::path& path, const std::string& bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw Error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

struct OutputFlags {
    PgmFormat format = PgmFormat::P5;
    bool raw = false;
};

// Rounds and clamps at write time unless a raw grid was requested.
void save_image(const fs::path& path, const Image& image, const OutputFlags& flags) {
    write_file_atomic(path, flags.raw ? write_raw_grid(image) : write_pgm(clamp_to_depth(image), flags.format));
}

const std::map<std::string, PgmFormat> kFormats{{"p5", PgmFormat::P5}, {"p2", PgmFormat::P2}};
const std::map<std::string, Method> kMethods{
    {"sbon", Method::Sbon}, {"visu-hard", Method::VisuHard}, {"visu-soft", Method::VisuSoft}};
const std::map<std::string, Projection> kProjections{{"dual-order", Projection::DualOrder},
                                                     {"identity", Projection::Identity}};

void add_despeckle_flags(CLI::App& cmd, DespeckleConfig& config) {
    cmd.add_option("--method", config.method, "sbon | visu-hard | visu-soft")
        ->transform(CLI::CheckedTransformer(kMethods, CLI::ignore_case))
        ->default_str("sbon");
    cmd.add_option("--levels", config.levels, "wavelet decomposition levels")
        ->check(CLI::Range(std::size_t{1}, std::size_t{30}))
        ->default_val(1);
    cmd.add_option("--bits", config.bits, "bits per quantized coefficient")
        ->check(CLI::Range(1U, 16U))
        ->default_val(8);
    cmd.add_option("--projection", config.projection, "dual-order | identity (sbon only)")
        ->transform(CLI::CheckedTransformer(kProjections, CLI::ignore_case))
        ->default_str("dual-order");
}

// ---- pipeline-dump ---------------------------------------------------------------

struct Normalization {
    double lo = 0.0;
    double hi = 0.0;
};

// Affine map of a coefficient grid onto 0..255 for viewing.
std::pair<Image, Normalization> normalized_view(const RealGrid& grid) {
    Normalization map;
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    map.lo = *lo;
    map.hi = *hi;
    RealGrid pixels(grid.rows(), grid.cols(), 0.0);
    if (map.hi > map.lo) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            pixels[i] = std::round((grid[i] - map.lo) / (map.hi - map.lo) * 255.0);
        }
    }
    return {Image(std::move(pixels), 255), map};
}

Image int_grid_image(const IntGrid& grid, unsigned bits) {
    RealGrid pixels(grid.rows(), grid.cols());
    for (std::size_t i = 0; i < grid.size(); ++i) pixels[i] = grid[i];
    return Image(std::move(pixels), bits <= 8 ? 255U : 65535U);
}

Image plane_image(const BinaryVector& plane, std::size_t rows, std::size_t cols) {
    RealGrid pixels(rows, cols);
    for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = plane.test(i) ? 255.0 : 0.0;
    return Image(std::move(pixels), 255);
}

std::string format_real(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

class DumpWriter {
public:
    explicit DumpWriter(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void image(const std::string& name, const Image& img) {
        write_file_atomic(dir_ / name, write_pgm(img, PgmFormat::P5));
    }

    void coefficients(const std::string& name, const RealGrid& grid) {
        auto [view, map] = normalized_view(grid);
        image(name, view);
        manifest_ << name << " normalized min=" << format_real(map.lo) << " max=" << format_real(map.hi)
                  << " (pixel p -> min + p/255*(max-min))\n";
    }

    std::ostream& manifest() { return manifest_; }
    const fs::path& dir() const { return dir_; }

    void finish() { write_file_atomic(dir_ / "manifest.txt", manifest_.str()); }

private:
    fs::path dir_;
    std::ostringstream manifest_;
};

std::string band_prefix(std::size_t level, Subband band) {
    return "L" + std::to_string(level) + "_" + std::string(subband_name(band));
}

void dump_sbon(DumpWriter& w, const SbonTrace& trace, const DespeckleConfig& config) {
    fs::create_directories(w.dir() / "planes_pre");
    fs::create_directories(w.dir() / "planes_post");
    w.coefficients("L" + std::to_string(config.levels) + "_LL_coeff.pgm", trace.input.ll);
    for (const SbonSubbandTrace& st : trace.subbands) {
        const std::string prefix = band_prefix(st.level, st.band);
        w.coefficients(prefix + "_coeff.pgm", st.coefficients);
        w.manifest() << prefix << " quantization c_min=" << format_real(st.params.c_min)
                     << " c_max=" << format_real(st.params.c_max) << " bits=" << st.params.bits << "\n";
        w.image(prefix + "_int_in.pgm", int_grid_image(st.quantized, config.bits));
        for (std::size_t k = 0; k < st.planes_in.bits(); ++k) {
            const std::string name = prefix + "_plane" + std::to_string(k) + ".pgm";
            w.image("planes_pre/" + name, plane_image(st.planes_in.planes[k], st.planes_in.rows, st.planes_in.cols));
            w.image("planes_post/" + name,
                    plane_image(st.planes_out.planes[k], st.planes_out.rows, st.planes_out.cols));
        }
        w.image(prefix + "_int_out.pgm", int_grid_image(st.reassembled, config.bits));
        w.coefficients(prefix + "_coeff_out.pgm", st.restored);
    }
}

void dump_visu(DumpWriter& w, const VisuTrace& trace, const DespeckleConfig& config) {
    w.coefficients("L" + std::to_string(config.levels) + "_LL_coeff.pgm", trace.input.ll);
    for (const VisuSubbandTrace& st : trace.subbands) {
        const std::string prefix = band_prefix(st.level, st.band);
        w.coefficients(prefix + "_coeff.pgm", trace.input.details[st.level - 1][st.band]);
        w.manifest() << prefix << " delta_mad=" << format_real(st.shrinkage.delta_mad)
                     << " lambda=" << format_real(st.shrinkage.lambda) << " n=" << st.shrinkage.n_pixels << "\n";
        w.coefficients(prefix + "_coeff_out.pgm", trace.output.details[st.level - 1][st.band]);
    }
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wavelet-domain SAR despeckling with Boolean-orthonormalized bit-planes", "sbon"};
    app.require_subcommand(1);

    // speckle
    std::string speckle_in, speckle_out;
    SpeckleParams speckle;
    OutputFlags speckle_flags;
    auto* cmd_speckle = app.add_subcommand("speckle", "multiply an image by Gamma(L, 1/L) speckle");
    cmd_speckle->add_option("--in", speckle_in, "input image (PGM or raw grid)")->required();
    cmd_speckle->add_option("--out", speckle_out, "output path")->required();
    cmd_speckle->add_option("--looks", speckle.looks, "number of looks L")
        ->check(CLI::Range(1U, 1000000U))
        ->default_val(1);
    cmd_speckle->add_option("--seed", speckle.seed, "generator seed")->default_val(0);
    cmd_speckle->add_flag("--raw", speckle_flags.raw, "write a loss-free text grid instead of PGM");
    cmd_speckle->add_option("--format", speckle_flags.format, "p5 | p2")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

    // despeckle
    std::string despeckle_in, despeckle_out;
    DespeckleConfig despeckle_config;
    OutputFlags despeckle_flags;
    auto* cmd_despeckle = app.add_subcommand("despeckle", "despeckle an image");
    cmd_despeckle->add_option("--in", despeckle_in, "input image (PGM or raw grid)")->required();
    cmd_despeckle->add_option("--out", despeckle_out, "output path")->required();
    add_despeckle_flags(*cmd_despeckle, despeckle_config);
    cmd_despeckle->add_flag("--raw", despeckle_flags.raw, "write a loss-free text grid instead of PGM");
    cmd_despeckle->add_option("--format", despeckle_flags.format, "p5 | p2")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));

    // metrics
    std::string metrics_test, metrics_speckled, metrics_ref, metrics_format = "csv";
    std::optional<double> edge_threshold;
    FomParams fom_params;
    auto* cmd_metrics = app.add_subcommand("metrics", "quality assessment of a despeckled image");
    cmd_metrics->add_option("--test", metrics_test, "despeckled image")->required();
    cmd_metrics->add_option("--speckled", metrics_speckled, "speckled input of the despeckler (defaults to --ref)");
    cmd_metrics->add_option("--ref", metrics_ref, "noise-free reference; enables snr, mse, nv");
    cmd_metrics->add_option("--format", metrics_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd_metrics->add_option("--alpha", fom_params.alpha, "FOM distance penalty")
        ->check(CLI::PositiveNumber)
        ->default_val(1.0 / 9.0);
    cmd_metrics->add_option("--edge-threshold", edge_threshold,
                            "fixed Sobel magnitude threshold (default: Otsu)");

    // pipeline-dump
    std::string dump_in, dump_outdir;
    DespeckleConfig dump_config;
    auto* cmd_dump = app.add_subcommand("pipeline-dump", "write every pipeline intermediate");
    cmd_dump->add_option("--in", dump_in, "input image (PGM or raw grid)")->required();
    cmd_dump->add_option("--outdir", dump_outdir, "output directory")->required();
    add_despeckle_flags(*cmd_dump, dump_config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_speckle->parsed()) {
            save_image(speckle_out, add_speckle(load_image(speckle_in), speckle), speckle_flags);
        } else if (cmd_despeckle->parsed()) {
            save_image(despeckle_out, despeckle(load_image(despeckle_in), despeckle_config), despeckle_flags);
        } else if (cmd_metrics->parsed()) {
            if (metrics_speckled.empty() && metrics_ref.empty()) {
                err << "metrics: need --speckled or --ref\n";
                return kExitUsage;
            }
            const Image test = load_image(metrics_test);
            std::optional<Image> ref;
            if (!metrics_ref.empty()) ref = load_image(metrics_ref);
            const Image speckled = metrics_speckled.empty() ? *ref : load_image(metrics_speckled);
            fom_params.edge_threshold.fixed = edge_threshold;
            const MetricsReport report = compute_report(test, speckled, ref ? &*ref : nullptr, fom_params);
            out << (metrics_format == "json" ? report_json(report) : report_csv(report));
        } else if (cmd_dump->parsed()) {
            const Image input = load_image(dump_in);
            DumpWriter writer(dump_outdir);
            writer.manifest() << "method " << method_name(dump_config.method) << "\nlevels " << dump_config.levels
                              << "\nbits " << dump_config.bits << "\nprojection "
                              << projection_name(dump_config.projection) << "\n";
            Image result;
            if (dump_config.method == Method::Sbon) {
                const SbonTrace trace = sbon_trace(input, dump_config);
                dump_sbon(writer, trace, dump_config);
                result = trace.result;
            } else {
                const VisuTrace trace = visushrink_trace(input, dump_config);
                dump_visu(writer, trace, dump_config);
                result = trace.result;
            }
            writer.image("despeckled.pgm", result);
            writer.finish();
        }
    } catch (const ConfigError& e) {
        err << "sbon: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "sbon: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitOk;
}

} // namespace sbon::cli
