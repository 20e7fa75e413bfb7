#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sbon/error.hpp"
#include "sbon/wavelet.hpp"

namespace sbon {
namespace {

RealGrid random_grid(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::uniform_real_distribution<double> dist(-300.0, 300.0);
    RealGrid g(rows, cols);
    for (double& v : g) v = dist(rng);
    return g;
}

double energy(const RealGrid& g) {
    double e = 0.0;
    for (double v : g) e += v * v;
    return e;
}

double energy(const WaveletDecomposition& d) {
    double e = energy(d.ll);
    for (const auto& b : d.details) e += energy(b.lh) + energy(b.hl) + energy(b.hh);
    return e;
}

// Independent single-level oracle: filter every row with the analysis pair
// (1/√2)(1, 1), (1/√2)(1, -1) and downsample, then do the same down every column.
struct SeparableLevel {
    RealGrid ll, lh, hl, hh;
};

SeparableLevel separable_oracle(const RealGrid& g) {
    const double k = 1.0 / std::sqrt(2.0);
    const std::size_t rows = g.rows();
    const std::size_t half_c = g.cols() / 2;
    RealGrid low(rows, half_c), high(rows, half_c);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < half_c; ++c) {
            low(r, c) = k * (g(r, 2 * c) + g(r, 2 * c + 1));
            high(r, c) = k * (g(r, 2 * c) - g(r, 2 * c + 1));
        }
    }
    const std::size_t half_r = rows / 2;
    SeparableLevel out{RealGrid(half_r, half_c), RealGrid(half_r, half_c), RealGrid(half_r, half_c),
                       RealGrid(half_r, half_c)};
    for (std::size_t r = 0; r < half_r; ++r) {
        for (std::size_t c = 0; c < half_c; ++c) {
            out.ll(r, c) = k * (low(2 * r, c) + low(2 * r + 1, c));
            out.lh(r, c) = k * (low(2 * r, c) - low(2 * r + 1, c));   // vertical detail
            out.hl(r, c) = k * (high(2 * r, c) + high(2 * r + 1, c)); // horizontal detail
            out.hh(r, c) = k * (high(2 * r, c) - high(2 * r + 1, c));
        }
    }
    return out;
}

void expect_near(const RealGrid& a, const RealGrid& b, double tol) {
    ASSERT_TRUE(a.same_shape(b));
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "index " << i;
}

TEST(DwtForward, ConstantGrid) {
    const auto d = dwt2_forward(RealGrid(4, 6, 7.0), 1);
    for (double v : d.ll) EXPECT_DOUBLE_EQ(v, 14.0);
    for (Subband b : kDetailSubbands) {
        for (double v : d.details[0][b]) EXPECT_EQ(v, 0.0);
    }
}

TEST(DwtForward, TwoByTwoHandComputed) {
    // [[1,2],[3,4]]: LL = 10/2, HL = (1-2+3-4)/2, LH = (1+2-3-4)/2, HH = (1-2-3+4)/2.
    const auto d = dwt2_forward(RealGrid(2, 2, {1.0, 2.0, 3.0, 4.0}), 1);
    EXPECT_DOUBLE_EQ(d.ll[0], 5.0);
    EXPECT_DOUBLE_EQ(d.details[0].hl[0], -1.0);
    EXPECT_DOUBLE_EQ(d.details[0].lh[0], -2.0);
    EXPECT_DOUBLE_EQ(d.details[0].hh[0], 0.0);
}

TEST(DwtForward, MatchesSeparableFilterBank) {
    std::mt19937_64 rng(5);
    for (auto [rows, cols] : {std::pair{2, 2}, {4, 8}, {16, 6}, {32, 32}}) {
        const RealGrid g = random_grid(rng, rows, cols);
        const auto d = dwt2_forward(g, 1);
        const auto o = separable_oracle(g);
        expect_near(d.ll, o.ll, 1e-12);
        expect_near(d.details[0].lh, o.lh, 1e-12);
        expect_near(d.details[0].hl, o.hl, 1e-12);
        expect_near(d.details[0].hh, o.hh, 1e-12);
    }
}

TEST(DwtForward, RecursesOnLowPass) {
    std::mt19937_64 rng(6);
    const RealGrid g = random_grid(rng, 16, 8);
    const auto d = dwt2_forward(g, 3);
    ASSERT_EQ(d.levels(), 3u);
    EXPECT_EQ(d.details[0].hh.rows(), 8u);
    EXPECT_EQ(d.details[1].hh.rows(), 4u);
    EXPECT_EQ(d.details[2].hh.rows(), 2u);
    EXPECT_EQ(d.ll.rows(), 2u);
    EXPECT_EQ(d.ll.cols(), 1u);

    const auto one = dwt2_forward(g, 1);
    const auto two = dwt2_forward(one.ll, 1);
    EXPECT_EQ(d.details[1], two.details[0]);
}

TEST(DwtForward, EnergyPreserved) {
    std::mt19937_64 rng(8);
    const RealGrid g = random_grid(rng, 32, 16);
    for (std::size_t levels = 1; levels <= 4; ++levels) {
        EXPECT_NEAR(energy(dwt2_forward(g, levels)) / energy(g), 1.0, 1e-12);
    }
}

TEST(DwtForward, Linear) {
    std::mt19937_64 rng(9);
    const RealGrid g1 = random_grid(rng, 16, 16);
    const RealGrid g2 = random_grid(rng, 16, 16);
    const double a = 1.7, b = -0.3;
    RealGrid mix(16, 16);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * g1[i] + b * g2[i];
    const auto d = dwt2_forward(mix, 2);
    const auto d1 = dwt2_forward(g1, 2);
    const auto d2 = dwt2_forward(g2, 2);
    for (std::size_t i = 0; i < d.ll.size(); ++i) EXPECT_NEAR(d.ll[i], a * d1.ll[i] + b * d2.ll[i], 1e-10);
    for (std::size_t lvl = 0; lvl < 2; ++lvl) {
        for (Subband s : kDetailSubbands) {
            const auto& x = d.details[lvl][s];
            for (std::size_t i = 0; i < x.size(); ++i) {
                EXPECT_NEAR(x[i], a * d1.details[lvl][s][i] + b * d2.details[lvl][s][i], 1e-10);
            }
        }
    }
}

TEST(DwtForward, DimensionErrorStatesDivisor) {
    try {
        dwt2_forward(RealGrid(250, 250), 2);
        FAIL() << "expected DimensionError";
    } catch (const DimensionError& e) {
        EXPECT_NE(std::string(e.what()).find("divisible by 4"), std::string::npos) << e.what();
    }
    EXPECT_THROW(dwt2_forward(RealGrid(3, 4), 1), DimensionError);
    EXPECT_THROW(dwt2_forward(RealGrid(4, 4), 0), DimensionError);
}

TEST(DwtInverse, TwoByTwoHandComputed) {
    WaveletDecomposition d;
    d.ll = RealGrid(1, 1, 5.0);
    d.details.push_back({RealGrid(1, 1, -2.0), RealGrid(1, 1, -1.0), RealGrid(1, 1, 0.0)});
    const RealGrid g = dwt2_inverse(d);
    EXPECT_DOUBLE_EQ(g(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(g(0, 1), 2.0);
    EXPECT_DOUBLE_EQ(g(1, 0), 3.0);
    EXPECT_DOUBLE_EQ(g(1, 1), 4.0);
}

TEST(DwtInverse, RandomRoundTrip) {
    std::mt19937_64 rng(10);
    const RealGrid g = random_grid(rng, 8, 8);
    const RealGrid back = dwt2_inverse(dwt2_forward(g, 2));
    expect_near(back, g, 1e-10);
}

TEST(DwtInverse, ZeroDetailsOfConstantImage) {
    auto d = dwt2_forward(RealGrid(8, 8, 42.0), 3);
    for (auto& bands : d.details) {
        for (Subband b : kDetailSubbands) bands[b] = RealGrid(bands[b].rows(), bands[b].cols(), 0.0);
    }
    expect_near(dwt2_inverse(d), RealGrid(8, 8, 42.0), 1e-12);
}

TEST(DwtInverse, MismatchedSubbandsRejected) {
    auto d = dwt2_forward(RealGrid(8, 8, 1.0), 2);
    d.details[1].hl = RealGrid(3, 2);
    EXPECT_THROW(dwt2_inverse(d), StructuralError);
    EXPECT_THROW(dwt2_inverse(WaveletDecomposition{}), StructuralError);
}

TEST(DwtInverse, PerfectReconstructionProperty) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t levels = 1 + rng() % 3;
        const std::size_t unit = std::size_t{1} << levels;
        const RealGrid g = random_grid(rng, unit * (1 + rng() % 8), unit * (1 + rng() % 8));
        const RealGrid back = dwt2_inverse(dwt2_forward(g, levels));
        for (std::size_t i = 0; i < g.size(); ++i) ASSERT_NEAR(back[i], g[i], 1e-10);
    }
}

} // namespace
} // namespace sbon
