#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "masw/datasets.hpp"
#include "masw/dispersion.hpp"
#include "oracles.hpp"

namespace masw {
namespace {

using masw::testing::first_change;
using masw::testing::full_grid;
using masw::testing::homogeneous_model;
using masw::testing::rayleigh_velocity;

SweepScan scan_signs(const std::vector<double>& reals, std::size_t* evaluated = nullptr) {
    return scan_first_sign_change(reals.size(), [&](std::size_t n) {
        if (evaluated) *evaluated = std::max(*evaluated, n + 1);
        return Complex(reals[n], 0.0);
    });
}

TEST(ScanFirstSignChange, FindsFirstChange) {
    const auto scan = scan_signs({1.0, 2.0, -1.0, -3.0});
    ASSERT_TRUE(scan.index);
    EXPECT_EQ(*scan.index, 2u);
    EXPECT_EQ(scan.determinants, 3u);
}

TEST(ScanFirstSignChange, OnlyTheFirstOfSeveral) {
    const auto scan = scan_signs({1.0, -1.0, 1.0, -1.0});
    ASSERT_TRUE(scan.index);
    EXPECT_EQ(*scan.index, 1u);
}

TEST(ScanFirstSignChange, NoneWhenConstantSign) {
    const auto scan = scan_signs({1.0, 2.0, 3.0, 4.0});
    EXPECT_FALSE(scan.index);
    EXPECT_EQ(scan.determinants, 4u);
}

TEST(ScanFirstSignChange, ZeroCountsAsChange) {
    const auto scan = scan_signs({1.0, 0.0, 1.0});
    ASSERT_TRUE(scan.index);
    EXPECT_EQ(*scan.index, 1u);
}

TEST(ScanFirstSignChange, StopsEvaluatingAtChange) {
    std::size_t evaluated = 0;
    scan_signs({-1.0, -1.0, 1.0, 1.0, 1.0, 1.0}, &evaluated);
    EXPECT_EQ(evaluated, 3u);
}

TEST(VelocityTermsTable, RejectsUnsortedVelocities) {
    EXPECT_THROW(VelocityTermsTable(reference_model(), std::vector<double>{100.0, 90.0}), InputError);
    EXPECT_THROW(VelocityTermsTable(reference_model(), std::vector<double>{100.0}), InputError);
}

TEST(DispersionCurve, HomogeneousHalfspaceGivesRayleighVelocity) {
    const auto model = homogeneous_model(200.0, 346.4);
    const double expected = rayleigh_velocity(346.4, 200.0);
    const VelocitySweep sweep{150.0, 250.0, 0.5};
    const std::vector<double> wavelengths{5.0, 10.0, 20.0};
    const auto curve = theoretical_dispersion_curve(model, wavelengths, sweep);
    for (double c : curve.velocities) {
        EXPECT_GE(c, expected);
        EXPECT_LE(c - expected, sweep.v_step);
    }
}

TEST(DispersionCurve, ReferenceModelValues) {
    // Frozen from the bisection that chose the uniform tier wavelengths.
    const auto curve = theoretical_dispersion_curve(reference_model(), std::vector<double>{1.321, 31.492, 36.985},
                                                    reference_sweep());
    EXPECT_EQ(curve.velocities, (std::vector<double>{72.0, 238.0, 256.0}));
}

TEST(DispersionCurve, Deterministic) {
    const auto w = variable_wavelengths(40);
    const auto a = theoretical_dispersion_curve(reference_model(), w, reference_sweep());
    const auto b = theoretical_dispersion_curve(reference_model(), w, reference_sweep());
    EXPECT_EQ(a.velocities, b.velocities);
}

TEST(DispersionCurve, ReversingWavelengthsReversesVelocities) {
    auto w = variable_wavelengths(25);
    const auto forward = theoretical_dispersion_curve(reference_model(), w, reference_sweep());
    std::reverse(w.begin(), w.end());
    auto backward = theoretical_dispersion_curve(reference_model(), w, reference_sweep());
    std::reverse(backward.velocities.begin(), backward.velocities.end());
    EXPECT_EQ(forward.velocities, backward.velocities);
}

TEST(DispersionCurve, NoSignChangeCarriesWavelength) {
    const std::vector<double> wavelengths{1.0, 60.0};
    try {
        theoretical_dispersion_curve(reference_model(), wavelengths, VelocitySweep{50.0, 100.0, 0.5});
        FAIL() << "expected NoSignChange";
    } catch (const NoSignChange& e) {
        EXPECT_EQ(e.wavelength_index(), 1u);
        EXPECT_EQ(e.wavelength(), 60.0);
    }
}

TEST(DispersionCurve, EarlyExitCountMatchesFullGridOracle) {
    const auto model = reference_model();
    const VelocityTermsTable table(model, reference_sweep());
    const auto w = variable_wavelengths(12);
    const auto trace = trace_dispersion_curve(model, w, table);
    const auto grid = full_grid(model, w, table);
    std::uint64_t expected_total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const std::size_t n = first_change(grid[i]);
        ASSERT_LT(n, table.size());
        EXPECT_EQ(trace.change_index[i], n);
        EXPECT_EQ(trace.determinants[i], n + 1);
        EXPECT_EQ(trace.curve.velocities[i], table.velocity(n));
        expected_total += n + 1;
    }
    EXPECT_EQ(trace.total_determinants(), expected_total);
    EXPECT_LT(trace.total_determinants(), w.size() * table.size());
    EXPECT_GE(trace.total_determinants(), 2 * w.size());
}

TEST(DispersionCurve, UniformDatasetCountsAreEqual) {
    const auto data = gen_uniform(50);
    const VelocityTermsTable table(reference_model(), reference_sweep());
    const auto trace = trace_dispersion_curve(reference_model(), data.wavelengths, table);
    EXPECT_EQ(trace.curve.velocities, data.velocities);
    for (auto d : trace.determinants) EXPECT_EQ(d, trace.determinants.front());
}

TEST(Misfit, Examples) {
    EXPECT_EQ(misfit(std::vector<double>{100.0, 200.0}, std::vector<double>{100.0, 200.0}), 0.0);
    EXPECT_DOUBLE_EQ(misfit(std::vector<double>{110.0}, std::vector<double>{100.0}), 0.1);
    EXPECT_DOUBLE_EQ(misfit(std::vector<double>{90.0, 220.0}, std::vector<double>{100.0, 200.0}), 0.1);
}

TEST(Misfit, RejectsBadInputs) {
    EXPECT_THROW(misfit(std::vector<double>{}, std::vector<double>{}), InputError);
    EXPECT_THROW(misfit(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0}), InputError);
    EXPECT_THROW(misfit(std::vector<double>{1.0}, std::vector<double>{0.0}), InputError);
    EXPECT_THROW(misfit(std::vector<double>{1.0}, std::vector<double>{-3.0}), InputError);
}

TEST(Misfit, ScaleAndPermutationInvariant) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> v(50.0, 500.0), scale(0.1, 10.0);
    for (int t = 0; t < 100; ++t) {
        const std::size_t l = 1 + rng() % 60;
        std::vector<double> ct(l), ce(l);
        for (std::size_t i = 0; i < l; ++i) {
            ct[i] = v(rng);
            ce[i] = v(rng);
        }
        const double base = misfit(ct, ce);
        EXPECT_GE(base, 0.0);
        const double a = scale(rng);
        std::vector<double> sct(ct), sce(ce);
        for (std::size_t i = 0; i < l; ++i) {
            sct[i] *= a;
            sce[i] *= a;
        }
        EXPECT_NEAR(misfit(sct, sce), base, 1e-12 * std::max(1.0, base));

        std::vector<std::size_t> perm(l);
        for (std::size_t i = 0; i < l; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> pct(l), pce(l);
        for (std::size_t i = 0; i < l; ++i) {
            pct[i] = ct[perm[i]];
            pce[i] = ce[perm[i]];
        }
        // Exact summation makes the permuted misfit identical.
        EXPECT_EQ(misfit(pct, pce), base);
    }
}

TEST(EvaluateModel, SelfConsistentCurveHasZeroMisfit) {
    const auto data = gen_variable(20);
    const auto result = evaluate_model(reference_model(), data, reference_sweep());
    EXPECT_EQ(result.misfit, 0.0);
    EXPECT_EQ(result.curve.velocities, data.velocities);
    EXPECT_EQ(result.curve.wavelengths, data.wavelengths);
}

TEST(EvaluateModel, UniformThousandIsDeterministic) {
    const auto data = gen_uniform(1000);
    const VelocityTermsTable table(reference_model(), reference_sweep());
    const auto a = evaluate_model(reference_model(), data, table);
    const auto b = evaluate_model(reference_model(), data, table);
    EXPECT_EQ(a.curve.velocities, b.curve.velocities);
    EXPECT_EQ(a.misfit, b.misfit);
    EXPECT_EQ(a.misfit, 0.0);
    EXPECT_EQ(a.determinants_computed, b.determinants_computed);
}

}  // namespace
}  // namespace masw
