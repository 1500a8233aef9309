#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "masw/dense.hpp"
#include "masw/stiffness.hpp"
#include "oracles.hpp"

namespace masw {
namespace {

using masw::testing::random_banded;
using masw::testing::random_model;

struct Sample {
    LayeredEarthModel model;
    double wavelength;
    double velocity;
};

std::vector<Sample> random_samples(std::uint64_t seed, std::size_t count, std::size_t max_layers = 10) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Sample> out;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t n = 1 + rng() % max_layers;
        out.push_back({random_model(rng, n), 1.0 + 50.0 * u(rng), 50.0 + 500.0 * u(rng)});
    }
    return out;
}

TEST(VelocityTerms, Deterministic) {
    std::mt19937_64 rng(1);
    const auto m = random_model(rng, 4);
    EXPECT_EQ(precompute_velocity_terms(m, 137.25), precompute_velocity_terms(m, 137.25));
}

TEST(VelocityTerms, DependOnVelocity) {
    std::mt19937_64 rng(2);
    const auto m = random_model(rng, 4);
    EXPECT_NE(precompute_velocity_terms(m, 100.0), precompute_velocity_terms(m, 200.0));
}

TEST(VelocityTerms, NudgeOffLayerVelocity) {
    LayeredEarthModel m{1, {2.0}, {1800.0, 2000.0}, {300.0, 600.0}, {150.0, 300.0}};
    const auto on_vs = precompute_velocity_terms(m, 150.0);
    EXPECT_EQ(on_vs.requested_velocity, 150.0);
    EXPECT_EQ(on_vs.velocity, 150.0 + kSingularVelocityNudge);
    const auto on_vp = precompute_velocity_terms(m, 600.0);
    EXPECT_EQ(on_vp.velocity, 600.0 + kSingularVelocityNudge);
    const auto clear = precompute_velocity_terms(m, 151.0);
    EXPECT_EQ(clear.velocity, 151.0);

    const Complex det = banded_determinant(assemble(m, 10.0, on_vs));
    EXPECT_TRUE(std::isfinite(det.real()) && std::isfinite(det.imag()));
}

TEST(Assemble, CachedMatchesUncachedBitwise) {
    for (const auto& s : random_samples(11, 200)) {
        const auto cached = assemble(s.model, s.wavelength, precompute_velocity_terms(s.model, s.velocity));
        const auto naive = assemble_uncached(s.model, s.wavelength, s.velocity);
        ASSERT_EQ(cached.order(), naive.order());
        for (std::size_t i = 0; i < cached.bands().size(); ++i) {
            const Complex a = cached.bands()[i], b = naive.bands()[i];
            ASSERT_EQ(std::memcmp(&a, &b, sizeof(Complex)), 0) << "slot " << i;
        }
    }
}

TEST(Assemble, SixLayersGiveOrderFourteen) {
    std::mt19937_64 rng(3);
    const auto m = random_model(rng, 6);
    const auto k = assemble(m, 10.0, precompute_velocity_terms(m, 120.0));
    EXPECT_EQ(k.order(), 14u);
    EXPECT_EQ(to_dense(k).entries.size(), 196u);
}

TEST(Assemble, SingleLayerStructure) {
    LayeredEarthModel m{1, {2.0}, {1800.0, 2000.0}, {300.0, 600.0}, {150.0, 300.0}};
    const double wavelength = 8.0;
    const auto terms = precompute_velocity_terms(m, 120.0);
    const auto k = assemble(m, wavelength, terms);
    ASSERT_EQ(k.order(), 4u);

    // Rows/cols 0-1 hold only the element block; the element's lower-right
    // 2x2 mirrors its upper-left, so the halfspace is the difference.
    const double wavenumber = 2.0 * M_PI / wavelength;
    const double tol = 1e-9 * std::abs(k.at(0, 0));
    EXPECT_NEAR(std::abs(k.at(2, 2) - k.at(0, 0) - wavenumber * terms.halfspace.k11), 0.0, tol);
    EXPECT_NEAR(std::abs(k.at(3, 3) - k.at(1, 1) - wavenumber * terms.halfspace.k22), 0.0, tol);
    EXPECT_NEAR(std::abs(k.at(2, 3) + k.at(0, 1) - wavenumber * terms.halfspace.k12), 0.0, tol);
}

TEST(Assemble, Symmetric) {
    for (const auto& s : random_samples(12, 200)) {
        const auto k = assemble(s.model, s.wavelength, precompute_velocity_terms(s.model, s.velocity));
        for (std::size_t i = 0; i < k.order(); ++i)
            for (std::size_t j = 0; j < k.order(); ++j) ASSERT_EQ(k.at(i, j), k.at(j, i));
    }
}

TEST(Assemble, BandExact) {
    for (const auto& s : random_samples(13, 50)) {
        const auto dense = to_dense(assemble(s.model, s.wavelength, precompute_velocity_terms(s.model, s.velocity)));
        for (std::size_t i = 0; i < dense.order; ++i)
            for (std::size_t j = 0; j < dense.order; ++j)
                if ((i > j ? i - j : j - i) > 3) {
                    ASSERT_EQ(dense(i, j), Complex{});
                }
    }
}

TEST(Assemble, Deterministic) {
    for (const auto& s : random_samples(14, 20)) {
        const auto terms = precompute_velocity_terms(s.model, s.velocity);
        EXPECT_EQ(assemble(s.model, s.wavelength, terms), assemble(s.model, s.wavelength, terms));
    }
}

TEST(BandedDeterminant, Identity) {
    for (std::size_t n : {1u, 4u, 14u, 30u}) EXPECT_EQ(banded_determinant(BandedStiffnessMatrix::identity(n)), Complex(1.0));
}

TEST(BandedDeterminant, Diagonal) {
    const std::vector<Complex> d{2.0, 3.0, 4.0};
    EXPECT_EQ(banded_determinant(BandedStiffnessMatrix::diagonal(d)), Complex(24.0));
}

TEST(BandedDeterminant, RandomHeptadiagonalMatchesDenseOracle) {
    std::mt19937_64 rng(15);
    for (int t = 0; t < 50; ++t) {
        const auto m = random_banded(rng, 14);
        const Complex banded = banded_determinant(m);
        const Complex dense = dense_determinant(to_dense(m));
        EXPECT_LE(std::abs(banded - dense), 1e-10 * std::max(1.0, std::abs(dense))) << "trial " << t;
    }
}

TEST(BandedDeterminant, StiffnessMatricesMatchDenseOracle) {
    for (const auto& s : random_samples(16, 300)) {
        const auto k = assemble(s.model, s.wavelength, precompute_velocity_terms(s.model, s.velocity));
        const Complex dense = dense_determinant(to_dense(k));
        EXPECT_LE(std::abs(banded_determinant(k) - dense), 1e-10 * std::max(1.0, std::abs(dense)));
    }
}

TEST(BandedDeterminant, ZeroPivotIsSingular) {
    BandedStiffnessMatrix m(2);
    m.slot(0, 1) = 1.0;
    m.slot(1, 0) = 1.0;
    EliminationStats stats;
    EXPECT_EQ(banded_determinant(m, &stats), Complex{});
    EXPECT_TRUE(stats.singular);
}

TEST(BandedDeterminant, RealBelowHalfspaceShearVelocity) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const auto m = random_model(rng, 1 + rng() % 8);
        const double v = (0.3 + 0.69 * u(rng)) * m.vs.back();
        const Complex det = banded_determinant(assemble(m, 1.0 + 40.0 * u(rng), precompute_velocity_terms(m, v)));
        EXPECT_LE(std::abs(det.imag()), 1e-8 * std::abs(det));
    }
}

TEST(BandedDeterminant, CostLinearInOrder) {
    std::mt19937_64 rng(18);
    EliminationStats s14, s28;
    banded_determinant(random_banded(rng, 14), &s14);
    banded_determinant(random_banded(rng, 28), &s28);
    EXPECT_LE(static_cast<double>(s28.flops) / static_cast<double>(s14.flops), 2.5);

    std::uint64_t dense28 = 0;
    dense_determinant(to_dense(random_banded(rng, 28)), &dense28);
    EXPECT_LT(s28.flops, dense28);
}

TEST(DeterminantSign, RealPartDecides) {
    EXPECT_EQ(determinant_sign({3.5, -2.0}), 1);
    EXPECT_EQ(determinant_sign({-1e-300, 0.0}), -1);
    EXPECT_EQ(determinant_sign({0.0, 7.0}), 0);
    EXPECT_EQ(determinant_sign({std::nan(""), 1.0}), 0);
}

}  // namespace
}  // namespace masw
