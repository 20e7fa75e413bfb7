#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include <nlohmann/json.hpp>

#include "sbon/error.hpp"
#include "sbon/metrics.hpp"
#include "sbon/speckle.hpp"

namespace sbon {
namespace {

Image from_values(std::size_t w, std::size_t h, std::vector<double> values) {
    return Image(RealGrid(h, w, std::move(values)), 255);
}

Image constant(std::size_t w, std::size_t h, double value) {
    Image img(w, h, 255);
    for (double& v : img.samples()) v = value;
    return img;
}

Image random_image(std::mt19937_64& rng, std::size_t w, std::size_t h) {
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    Image img(w, h, 255);
    for (double& v : img.samples()) v = dist(rng);
    return img;
}

EdgeMap random_edges(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
    std::bernoulli_distribution bit(density);
    EdgeMap m(rows, cols, 0);
    for (auto& b : m) b = bit(rng) ? 1 : 0;
    return m;
}

TEST(Nmv, Examples) {
    EXPECT_EQ(nmv(constant(5, 3, 17.0)), 17.0);
    EXPECT_EQ(nmv(from_values(2, 1, {0.0, 2.0})), 1.0);
}

TEST(Nmv, MatchesLongDoubleSummation) {
    std::mt19937_64 rng(51);
    const Image img = random_image(rng, 123, 77);
    long double sum = 0.0L;
    for (std::size_t r = 0; r < img.height(); ++r) {
        for (std::size_t c = 0; c < img.width(); ++c) sum += img(r, c);
    }
    const double oracle = static_cast<double>(sum / (123.0L * 77.0L));
    EXPECT_NEAR(nmv(img), oracle, 1e-12 * oracle);
}

TEST(Nv, Examples) {
    EXPECT_EQ(nv(constant(4, 4, 9.0)), 0.0);
    EXPECT_EQ(nsd(constant(4, 4, 9.0)), 0.0);
    EXPECT_EQ(nv(from_values(2, 1, {0.0, 2.0})), 1.0);
    EXPECT_EQ(nsd(from_values(2, 1, {0.0, 2.0})), 1.0);
}

TEST(Nv, ShiftInvariantAndConsistentWithNsd) {
    std::mt19937_64 rng(52);
    const Image img = random_image(rng, 64, 32);
    Image shifted = img;
    for (double& v : shifted.samples()) v += 1000.0;
    EXPECT_NEAR(nv(shifted), nv(img), 1e-9 * nv(img));
    EXPECT_NEAR(nsd(img) * nsd(img), nv(img), 1e-12 * nv(img));
}

TEST(Mse, Examples) {
    const Image a = constant(3, 3, 0.0);
    const Image b = constant(3, 3, 2.0);
    EXPECT_EQ(mse(a, a), 0.0);
    EXPECT_EQ(mse(a, b), 4.0);
    std::mt19937_64 rng(53);
    const Image x = random_image(rng, 10, 10), y = random_image(rng, 10, 10);
    EXPECT_EQ(mse(x, y), mse(y, x));
    EXPECT_THROW(mse(constant(3, 3, 0), constant(3, 2, 0)), StructuralError);
}

TEST(Msd, SameContractAsMse) {
    const Image a = constant(3, 3, 0.0);
    const Image b = constant(3, 3, 2.0);
    EXPECT_EQ(msd(a, a), 0.0);
    EXPECT_EQ(msd(a, b), 4.0);
    EXPECT_EQ(msd(b, a), msd(a, b));
    EXPECT_THROW(msd(constant(3, 3, 0), constant(2, 3, 0)), StructuralError);
}

TEST(Snr, Examples) {
    const Image test = from_values(2, 1, {0.0, 2.0}); // nv = 1
    EXPECT_NEAR(snr(from_values(2, 1, {1.0, 1.0}), test), 0.0, 1e-12); // mse = 1
    const double d = std::sqrt(0.1);
    EXPECT_NEAR(snr(from_values(2, 1, {d, 2.0 + d}), test), 10.0, 1e-9); // mse = 0.1
}

TEST(Snr, MonotoneInError) {
    const Image test = from_values(2, 1, {0.0, 2.0});
    double previous = std::numeric_limits<double>::infinity();
    for (double d : {0.1, 0.5, 1.0, 3.0}) {
        const double s = snr(from_values(2, 1, {d, 2.0 + d}), test);
        EXPECT_LT(s, previous);
        previous = s;
    }
}

TEST(Snr, ZeroErrorIsStrictError) {
    const Image img = from_values(2, 1, {0.0, 2.0});
    EXPECT_THROW(snr(img, img), DegenerateInputError);
}

TEST(EnlTiled, HomogeneousSpeckleEstimatesLooks) {
    const Image out = add_speckle(constant(250, 250, 100.0), {4, 17});
    const double enl = enl_tiled(out);
    EXPECT_GE(enl, 3.4);
    EXPECT_LE(enl, 4.6);
}

TEST(EnlTiled, ConstantImageIsDegenerate) {
    EXPECT_THROW(enl_tiled(constant(50, 50, 3.0)), DegenerateInputError);
    EXPECT_THROW(enl_tiled(constant(20, 20, 3.0)), DegenerateInputError);
}

TEST(EnlTiled, ScaleInvariant) {
    const Image img = add_speckle(constant(100, 75, 80.0), {2, 3});
    Image scaled = img;
    for (double& v : scaled.samples()) v *= 3.3;
    EXPECT_NEAR(enl_tiled(scaled), enl_tiled(img), 1e-9 * enl_tiled(img));
}

TEST(EnlTiled, HandComputedTilesAndSkips) {
    // 4x5 image, tile 2: two full tiles per row band, trailing column and constant tile dropped.
    const Image img = from_values(5, 4, {1, 3, 5, 5, 99,  //
                                         1, 3, 5, 5, 99,  //
                                         2, 2, 0, 4, 99,  //
                                         2, 2, 0, 4, 99});
    // Tiles: {1,3,1,3} -> mean 2, var 1 -> 4; {5,5,5,5} skipped; {2,2,2,2} skipped; {0,4,0,4} -> 4/4 = 1.
    EXPECT_DOUBLE_EQ(enl_tiled(img, 2), (4.0 + 1.0) / 2.0);
}

TEST(Dr, VanishesIdentically) {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 20; ++trial) EXPECT_NEAR(dr(random_image(rng, 40, 30)), 0.0, 1e-9);
    EXPECT_NEAR(dr(from_values(2, 1, {0.0, 2.0})), 0.0, 1e-15);
    EXPECT_THROW(dr(constant(4, 4, 1.0)), DegenerateInputError);
}

TEST(DetectEdges, ConstantImageHasNoEdges) {
    for (auto b : detect_edges(constant(16, 16, 80.0))) EXPECT_EQ(b, 0);
}

TEST(DetectEdges, VerticalStep) {
    // Sobel x-response at the last dark column and the first bright column is
    // (1 + 2 + 1) * 255 = 1020; everywhere else the 3x3 neighbourhood is flat.
    Image img(16, 10, 255);
    for (std::size_t r = 0; r < 10; ++r) {
        for (std::size_t c = 8; c < 16; ++c) img(r, c) = 255.0;
    }
    const RealGrid mag = sobel_magnitude(img);
    const EdgeMap edges = detect_edges(img);
    for (std::size_t r = 0; r < 10; ++r) {
        for (std::size_t c = 0; c < 16; ++c) {
            const bool at_step = c == 7 || c == 8;
            EXPECT_DOUBLE_EQ(mag(r, c), at_step ? 1020.0 : 0.0);
            EXPECT_EQ(edges(r, c), at_step ? 1 : 0) << r << "," << c;
        }
    }
    EXPECT_EQ(detect_edges(img), edges);
}

TEST(DetectEdges, FixedThreshold) {
    Image img(8, 8, 255);
    for (std::size_t r = 0; r < 8; ++r) img(r, 7) = 10.0;
    const EdgeMap low = detect_edges(img, {.fixed = 39.0});
    const EdgeMap high = detect_edges(img, {.fixed = 40.0});
    EXPECT_EQ(low(3, 6), 1); // response 4 * 10
    EXPECT_EQ(high(3, 6), 0);
}

TEST(DistanceTransform, MatchesBruteForce) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t rows = 1 + rng() % 30, cols = 1 + rng() % 30;
        EdgeMap m = random_edges(rng, rows, cols, 0.02 + 0.02 * (trial % 4));
        m(rng() % rows, rng() % cols) = 1;
        const RealGrid d2 = squared_distance_transform(m);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < rows; ++i) {
                    for (std::size_t j = 0; j < cols; ++j) {
                        if (!m(i, j)) continue;
                        const double dr_ = double(r) - double(i), dc = double(c) - double(j);
                        best = std::min(best, dr_ * dr_ + dc * dc);
                    }
                }
                ASSERT_EQ(d2(r, c), best) << r << "," << c;
            }
        }
    }
    for (double v : squared_distance_transform(EdgeMap(3, 3, 0))) EXPECT_TRUE(std::isinf(v));
}

TEST(Fom, PerfectDetectionScoresOne) {
    std::mt19937_64 rng(56);
    for (int trial = 0; trial < 20; ++trial) {
        EdgeMap e = random_edges(rng, 20, 20, 0.1);
        e(0, 0) = 1;
        EXPECT_EQ(fom(e, e), 1.0);
    }
}

TEST(Fom, SinglePixelAtDistanceThree) {
    EdgeMap ideal(10, 10, 0), detected(10, 10, 0);
    ideal(5, 2) = 1;
    detected(5, 5) = 1;
    EXPECT_NEAR(fom(detected, ideal), 0.5, 1e-12); // 1 / (1 + 9/9)
}

TEST(Fom, EmptyMaps) {
    EdgeMap ideal(4, 4, 0), detected(4, 4, 0);
    ideal(1, 1) = 1;
    EXPECT_EQ(fom(detected, ideal), 0.0);
    EXPECT_THROW(fom(ideal, detected), DegenerateInputError);
    EXPECT_THROW(fom(EdgeMap(4, 4, 0), EdgeMap(4, 5, 0)), StructuralError);
}

TEST(Fom, DenominatorIsLargerCount) {
    EdgeMap ideal(5, 5, 0), detected(5, 5, 0);
    ideal(2, 2) = 1;
    detected(2, 2) = 1;
    detected(2, 3) = 1; // distance 1 -> 1 / (1 + 1/9) = 0.9
    EXPECT_NEAR(fom(detected, ideal), (1.0 + 0.9) / 2.0, 1e-15);
    EXPECT_NEAR(fom(ideal, detected), 1.0 / 2.0, 1e-15);
}

TEST(Fom, AlwaysInUnitInterval) {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 50; ++trial) {
        EdgeMap ideal = random_edges(rng, 16, 16, 0.1);
        ideal(3, 3) = 1;
        const double f = fom(random_edges(rng, 16, 16, 0.2), ideal);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
    }
}

TEST(Report, SchemaWithoutReference) {
    std::mt19937_64 rng(58);
    const Image speckled = random_image(rng, 50, 50);
    const Image test = random_image(rng, 50, 50);
    const MetricsReport r = compute_report(test, speckled, nullptr);
    EXPECT_FALSE(r.snr.has_value());
    const std::string csv = report_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "msd,nmv,nsd,enl,dr,fom");
    const auto j = nlohmann::ordered_json::parse(report_json(r));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"msd", "nmv", "nsd", "enl", "dr", "fom"}));
}

TEST(Report, SchemaWithReference) {
    std::mt19937_64 rng(59);
    const Image ref = random_image(rng, 50, 50);
    const MetricsReport r = compute_report(ref, ref, &ref);
    EXPECT_EQ(r.mse, 0.0);
    EXPECT_EQ(r.fom, 1.0);
    EXPECT_TRUE(std::isinf(*r.snr));
    const std::string csv = report_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "msd,nmv,nsd,enl,dr,fom,snr,mse,nv");
    EXPECT_NE(csv.find(",inf,"), std::string::npos);
    const auto j = nlohmann::json::parse(report_json(r));
    EXPECT_TRUE(j["snr"].is_null());
    EXPECT_EQ(j["mse"], 0.0);
    EXPECT_DOUBLE_EQ(j["nv"].get<double>(), nv(ref));
}

TEST(Report, DegenerateMetricsBecomeNan) {
    const Image flat = constant(50, 50, 10.0);
    const MetricsReport r = compute_report(flat, flat, nullptr);
    EXPECT_TRUE(std::isnan(r.enl));
    EXPECT_TRUE(std::isnan(r.dr));
    EXPECT_TRUE(std::isnan(r.fom));
    EXPECT_NE(report_csv(r).find("nan"), std::string::npos);
    EXPECT_TRUE(nlohmann::json::parse(report_json(r))["enl"].is_null());
}

} // namespace
} // namespace sbon
