#pragma once

// Test-only reference computations. Nothing here calls the engines' search
// or reduction code.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "masw/dispersion.hpp"
#include "masw/stiffness.hpp"

namespace masw::testing {

/// Rayleigh phase velocity of a homogeneous halfspace by bisection on
/// (2 - x^2)^2 - 4 sqrt(1 - x^2 vs^2/vp^2) sqrt(1 - x^2), x = c / vs.
inline double rayleigh_velocity(double vp, double vs) {
    const double ratio2 = (vs * vs) / (vp * vp);
    auto f = [&](double x) {
        const double x2 = x * x;
        return (2.0 - x2) * (2.0 - x2) - 4.0 * std::sqrt(1.0 - x2 * ratio2) * std::sqrt(1.0 - x2);
    };
    double lo = 0.5, hi = 0.999999;  // f(lo) > 0 > f(hi) for Poisson ratios in [0, 0.5)
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) > 0.0) == (f(lo) > 0.0))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi) * vs;
}

/// Determinant of every (wavelength, velocity) cell, no early exit.
inline std::vector<std::vector<Complex>> full_grid(const LayeredEarthModel& model, const std::vector<double>& wavelengths,
                                                   const VelocityTermsTable& table) {
    std::vector<std::vector<Complex>> grid(wavelengths.size(), std::vector<Complex>(table.size()));
    BandedStiffnessMatrix scratch;
    for (std::size_t w = 0; w < wavelengths.size(); ++w)
        for (std::size_t n = 0; n < table.size(); ++n)
            grid[w][n] = stiffness_determinant(model, wavelengths[w], table.terms(n), scratch);
    return grid;
}

inline int sign_of_real(const Complex& z) { return z.real() > 0.0 ? 1 : (z.real() < 0.0 ? -1 : 0); }

/// Linear search of a fully computed row: first n with a different sign
/// than n-1, or row.size() when there is none.
inline std::size_t first_change(const std::vector<Complex>& row) {
    for (std::size_t n = 1; n < row.size(); ++n)
        if (sign_of_real(row[n]) != sign_of_real(row[n - 1])) return n;
    return row.size();
}

/// Random physical model with n finite layers.
inline LayeredEarthModel random_model(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LayeredEarthModel m;
    m.n_layers = n;
    for (std::size_t i = 0; i <= n; ++i) {
        const double vs = 80.0 + 400.0 * u(rng);
        m.vs.push_back(vs);
        m.vp.push_back(vs * (1.5 + u(rng)));
        m.density.push_back(1600.0 + 600.0 * u(rng));
        if (i < n) m.thickness.push_back(0.5 + 5.0 * u(rng));
    }
    return m;
}

/// Model whose single thin layer is identical to the halfspace beneath it.
inline LayeredEarthModel homogeneous_model(double vs, double vp, double density = 1800.0) {
    LayeredEarthModel m;
    m.n_layers = 1;
    m.thickness = {1.0};
    m.density = {density, density};
    m.vp = {vp, vp};
    m.vs = {vs, vs};
    return m;
}

inline BandedStiffnessMatrix random_banded(std::mt19937_64& rng, std::size_t order) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    BandedStiffnessMatrix m(order);
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j)
            if (m.in_band(i, j)) m.slot(i, j) = Complex(u(rng), u(rng));
    return m;
}

}  // namespace masw::testing
