#include "masw/datasets.hpp"

#include <cmath>

#include "masw/dispersion.hpp"

namespace masw {

namespace {

constexpr double kVariableLongest = 60.0;
constexpr double kVariableShortest = 1.0;

}  // namespace

LayeredEarthModel reference_model() {
    LayeredEarthModel m;
    m.n_layers = 6;
    m.thickness = {1.0, 1.5, 2.0, 2.5, 3.0, 4.0};
    m.density = {1800.0, 1850.0, 1900.0, 1950.0, 2000.0, 2050.0, 2100.0};
    m.vp = {150.0, 220.0, 300.0, 400.0, 500.0, 600.0, 800.0};
    m.vs = {75.0, 110.0, 150.0, 200.0, 250.0, 300.0, 400.0};
    return m;
}

VelocitySweep reference_sweep() { return {50.0, 550.0, 0.5}; }

const std::vector<UniformTier>& uniform_tiers() {
    // Midpoints of the wavelength intervals over which the reference model
    // lands on each tier velocity (found by bisection on the wavelength).
    static const std::vector<UniformTier> tiers = {
        {72.0, 1.321},
        {238.0, 31.492},
        {256.0, 36.985},
    };
    return tiers;
}

DispersionCurve gen_uniform(std::size_t length, double tier_velocity) {
    if (length == 0) throw InputError("uniform dataset length must be at least 1");
    for (const auto& tier : uniform_tiers()) {
        if (tier.velocity == tier_velocity) {
            DispersionCurve curve;
            curve.wavelengths.assign(length, tier.wavelength);
            curve.velocities.assign(length, tier.velocity);
            return curve;
        }
    }
    throw InputError("unknown uniform tier " + std::to_string(tier_velocity) + " (expected 72, 238 or 256)");
}

std::vector<double> variable_wavelengths(std::size_t length) {
    if (length == 0) throw InputError("variable dataset length must be at least 1");
    std::vector<double> out(length);
    if (length == 1) {
        out[0] = kVariableLongest;
        return out;
    }
    const double ratio = std::log(kVariableShortest / kVariableLongest) / static_cast<double>(length - 1);
    for (std::size_t i = 0; i < length; ++i) out[i] = kVariableLongest * std::exp(ratio * static_cast<double>(i));
    out.back() = kVariableShortest;
    return out;
}

DispersionCurve gen_variable(std::size_t length) {
    const auto wavelengths = variable_wavelengths(length);
    return theoretical_dispersion_curve(reference_model(), wavelengths, reference_sweep());
}

}  // namespace masw
