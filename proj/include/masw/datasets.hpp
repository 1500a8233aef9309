#pragma once

#include <cstddef>
#include <vector>

#include "masw/model.hpp"

namespace masw {

/// Six finite layers over a halfspace; stiffness matrices are 14x14.
/// The same values ship as data/reference_model.json.
LayeredEarthModel reference_model();

/// 50..550 m/s in 0.5 m/s steps (1001 test velocities).
VelocitySweep reference_sweep();

/// Target velocities of the uniform dataset, and the wavelength at which
/// the reference model's theoretical velocity equals each one on the
/// reference sweep.
struct UniformTier {
    double velocity;
    double wavelength;
};
const std::vector<UniformTier>& uniform_tiers();

inline constexpr double kDefaultUniformTier = 238.0;
inline constexpr std::size_t kDefaultVariableLength = 40;

/// `length` copies of the tier's wavelength, each paired with the tier
/// velocity. Throws InputError for length 0 or an unknown tier.
DispersionCurve gen_uniform(std::size_t length, double tier_velocity = kDefaultUniformTier);

/// Geometrically decreasing wavelengths from 60 m to 1 m, paired with the
/// reference model's theoretical velocities on the reference sweep.
DispersionCurve gen_variable(std::size_t length = kDefaultVariableLength);

/// Wavelengths of gen_variable without running the engine.
std::vector<double> variable_wavelengths(std::size_t length);

}  // namespace masw
