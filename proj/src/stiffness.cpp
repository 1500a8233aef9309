#include "masw/stiffness.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace masw {

BandedStiffnessMatrix::BandedStiffnessMatrix(std::size_t order) : order_(order), bands_(order * kBandCount) {}

BandedStiffnessMatrix BandedStiffnessMatrix::identity(std::size_t order) {
    BandedStiffnessMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) m.slot(i, i) = 1.0;
    return m;
}

BandedStiffnessMatrix BandedStiffnessMatrix::diagonal(std::span<const Complex> entries) {
    BandedStiffnessMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m.slot(i, i) = entries[i];
    return m;
}

bool BandedStiffnessMatrix::in_band(std::size_t row, std::size_t col) const {
    if (row >= order_ || col >= order_) return false;
    return (row > col ? row - col : col - row) <= kHalfBandwidth;
}

Complex BandedStiffnessMatrix::at(std::size_t row, std::size_t col) const {
    return in_band(row, col) ? slot(row, col) : Complex{};
}

void BandedStiffnessMatrix::reset(std::size_t order) {
    order_ = order;
    bands_.assign(order * kBandCount, Complex{});
}

double effective_test_velocity(const LayeredEarthModel& model, double velocity) {
    auto collides = [&](double c) {
        for (std::size_t i = 0; i < model.vs.size(); ++i) {
            if (std::abs(c - model.vs[i]) < kSingularVelocityTolerance) return true;
            if (std::abs(c - model.vp[i]) < kSingularVelocityTolerance) return true;
        }
        return false;
    };
    while (collides(velocity)) velocity += kSingularVelocityNudge;
    return velocity;
}

namespace {

// Branch matches MATLAB's sqrt of a negative real: +i*sqrt(|x|).
Complex radical(double c, double wave_speed) {
    return std::sqrt(Complex(1.0 - (c * c) / (wave_speed * wave_speed), 0.0));
}

double wavenumber(double wavelength) { return 2.0 * std::numbers::pi / wavelength; }

struct Element {
    Complex k11, k12, k13, k14, k22, k24;
};

Element layer_element(const LayerTerms& t, double k, double h) {
    const Complex arg_r = k * t.r * h;
    const Complex arg_s = k * t.s * h;
    const Complex cr = std::cosh(arg_r);
    const Complex sr = std::sinh(arg_r);
    const Complex cs = std::cosh(arg_s);
    const Complex ss = std::sinh(arg_s);

    const Complex d = 2.0 * (1.0 - cr * cs) + t.cross * sr * ss;
    const Complex scale = (k * t.rho_c2) / d;

    Element e;
    e.k11 = scale * (t.inv_s * cr * ss - t.r * sr * cs);
    e.k12 = scale * (cr * cs - t.rs * sr * ss - 1.0) - k * t.shear;
    e.k13 = scale * (t.r * sr - t.inv_s * ss);
    e.k14 = scale * (-cr + cs);
    e.k22 = scale * (t.inv_r * sr * cs - t.s * cr * ss);
    e.k24 = scale * (-t.inv_r * sr + t.s * ss);
    return e;
}

void add_element(BandedStiffnessMatrix& m, std::size_t base, const Element& e) {
    // Symmetric 4x4 block; the lower-right 2x2 mirrors the upper-left with
    // the off-diagonal sign flipped.
    const Complex block[4][4] = {
        {e.k11, e.k12, e.k13, e.k14},
        {e.k12, e.k22, -e.k14, e.k24},
        {e.k13, -e.k14, e.k11, -e.k12},
        {e.k14, e.k24, -e.k12, e.k22},
    };
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m.slot(base + i, base + j) += block[i][j];
}

void add_halfspace(BandedStiffnessMatrix& m, std::size_t base, Complex k11, Complex k12, Complex k22) {
    m.slot(base, base) += k11;
    m.slot(base, base + 1) += k12;
    m.slot(base + 1, base) += k12;
    m.slot(base + 1, base + 1) += k22;
}

}  // namespace

VelocityTerms precompute_velocity_terms(const LayeredEarthModel& model, double velocity) {
    VelocityTerms terms;
    terms.requested_velocity = velocity;
    const double c = effective_test_velocity(model, velocity);
    terms.velocity = c;

    terms.layers.resize(model.n_layers);
    for (std::size_t j = 0; j < model.n_layers; ++j) {
        LayerTerms& t = terms.layers[j];
        t.r = radical(c, model.vp[j]);
        t.s = radical(c, model.vs[j]);
        t.inv_r = 1.0 / t.r;
        t.inv_s = 1.0 / t.s;
        t.rs = t.r * t.s;
        t.cross = 1.0 / (t.r * t.s) + t.r * t.s;
        t.rho_c2 = model.density[j] * c * c;
        t.shear = model.density[j] * model.vs[j] * model.vs[j] * (1.0 + t.s * t.s);
    }

    const std::size_t n = model.n_layers;
    const Complex r = radical(c, model.vp[n]);
    const Complex s = radical(c, model.vs[n]);
    const double mu = model.density[n] * model.vs[n] * model.vs[n];
    terms.halfspace.k11 = mu * (r * (1.0 - s * s)) / (1.0 - r * s);
    terms.halfspace.k12 = mu * (1.0 - s * s) / (1.0 - r * s) - 2.0 * mu;
    terms.halfspace.k22 = mu * (s * (1.0 - s * s)) / (1.0 - r * s);
    return terms;
}

void assemble_into(BandedStiffnessMatrix& out, const LayeredEarthModel& model, double wavelength,
                   const VelocityTerms& terms) {
    assert(terms.layers.size() == model.n_layers);
    out.reset(2 * (model.n_layers + 1));
    const double k = wavenumber(wavelength);
    for (std::size_t j = 0; j < model.n_layers; ++j)
        add_element(out, 2 * j, layer_element(terms.layers[j], k, model.thickness[j]));
    const auto& hs = terms.halfspace;
    add_halfspace(out, 2 * model.n_layers, k * hs.k11, k * hs.k12, k * hs.k22);
}

BandedStiffnessMatrix assemble(const LayeredEarthModel& model, double wavelength, const VelocityTerms& terms) {
    BandedStiffnessMatrix m;
    assemble_into(m, model, wavelength, terms);
    return m;
}

BandedStiffnessMatrix assemble_uncached(const LayeredEarthModel& model, double wavelength, double velocity) {
    const std::size_t n = model.n_layers;
    BandedStiffnessMatrix m(2 * (n + 1));
    const double k = wavenumber(wavelength);
    const double c = effective_test_velocity(model, velocity);

    for (std::size_t j = 0; j < n; ++j) {
        const double h = model.thickness[j];
        const double rho = model.density[j];
        const double alpha = model.vp[j];
        const double beta = model.vs[j];

        // Each entry is written out in full, the way a direct transcription
        // of the element formulas would be; nothing is shared between them.
        auto r = [&] { return radical(c, alpha); };
        auto s = [&] { return radical(c, beta); };
        auto cr = [&] { return std::cosh(k * r() * h); };
        auto sr = [&] { return std::sinh(k * r() * h); };
        auto cs = [&] { return std::cosh(k * s() * h); };
        auto ss = [&] { return std::sinh(k * s() * h); };
        auto d = [&] { return 2.0 * (1.0 - cr() * cs()) + (1.0 / (r() * s()) + r() * s()) * sr() * ss(); };
        auto scale = [&] { return (k * (rho * c * c)) / d(); };

        const Complex k11 = scale() * (1.0 / s() * cr() * ss() - r() * sr() * cs());
        const Complex k12 =
            scale() * (cr() * cs() - r() * s() * sr() * ss() - 1.0) - k * (rho * beta * beta * (1.0 + s() * s()));
        const Complex k13 = scale() * (r() * sr() - 1.0 / s() * ss());
        const Complex k14 = scale() * (-cr() + cs());
        const Complex k22 = scale() * (1.0 / r() * sr() * cs() - s() * cr() * ss());
        const Complex k24 = scale() * (-(1.0 / r()) * sr() + s() * ss());

        add_element(m, 2 * j, Element{k11, k12, k13, k14, k22, k24});
    }

    const double rho = model.density[n];
    const double beta = model.vs[n];
    const Complex r = radical(c, model.vp[n]);
    const Complex s = radical(c, beta);
    const Complex k11 = k * (rho * beta * beta * (r * (1.0 - s * s)) / (1.0 - r * s));
    const Complex k12 = k * (rho * beta * beta * (1.0 - s * s) / (1.0 - r * s) - 2.0 * (rho * beta * beta));
    const Complex k22 = k * (rho * beta * beta * (s * (1.0 - s * s)) / (1.0 - r * s));
    add_halfspace(m, 2 * n, k11, k12, k22);
    return m;
}

Complex eliminate_in_place(BandedStiffnessMatrix& m, EliminationStats* stats) {
    constexpr std::size_t w = BandedStiffnessMatrix::kHalfBandwidth;
    const std::size_t n = m.order();
    std::uint64_t flops = 0;
    Complex det = 1.0;
    for (std::size_t p = 0; p < n; ++p) {
        const Complex pivot = m.slot(p, p);
        if (pivot == Complex{}) {
            if (stats) {
                stats->flops += flops;
                stats->singular = true;
            }
            return Complex{};
        }
        det *= pivot;
        ++flops;
        const std::size_t last = std::min(n - 1, p + w);
        for (std::size_t i = p + 1; i <= last; ++i) {
            const Complex factor = m.slot(i, p) / pivot;
            ++flops;
            if (factor == Complex{}) continue;
            for (std::size_t j = p + 1; j <= last; ++j) m.slot(i, j) -= factor * m.slot(p, j);
            flops += 2 * (last - p);
        }
    }
    if (stats) stats->flops += flops;
    return det;
}

Complex banded_determinant(BandedStiffnessMatrix matrix, EliminationStats* stats) {
    return eliminate_in_place(matrix, stats);
}

int determinant_sign(Complex det) {
    const double re = det.real();
    if (re > 0.0) return 1;
    if (re < 0.0) return -1;
    return 0;
}

Complex stiffness_determinant(const LayeredEarthModel& model, double wavelength, const VelocityTerms& terms,
                              BandedStiffnessMatrix& scratch) {
    assemble_into(scratch, model, wavelength, terms);
    return eliminate_in_place(scratch, nullptr);
}

}  // namespace masw
