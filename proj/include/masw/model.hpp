#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace masw {

/// Thrown for malformed inputs: bad sweep parameters, mismatched curve
/// lengths, invalid models handed to an engine.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A model, curve or sweep that violates its invariants. Carries every
/// violation found.
class ValidationError : public InputError {
public:
    explicit ValidationError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

/// N finite layers over a halfspace. Property arrays carry N+1 entries; the
/// last one describes the halfspace. SI units throughout.
struct LayeredEarthModel {
    std::size_t n_layers = 0;
    std::vector<double> thickness;  // m, N entries
    std::vector<double> density;    // kg/m^3, N+1 entries
    std::vector<double> vp;         // m/s, N+1 entries
    std::vector<double> vs;         // m/s, N+1 entries

    bool operator==(const LayeredEarthModel&) const = default;
};

/// Paired wavelength / phase-velocity samples.
struct DispersionCurve {
    std::vector<double> wavelengths;  // m
    std::vector<double> velocities;   // m/s

    std::size_t size() const { return wavelengths.size(); }
    bool operator==(const DispersionCurve&) const = default;
};

/// Test-velocity range. The materialized grid is
/// v_min, v_min + v_step, ... up to the last value not exceeding v_max.
struct VelocitySweep {
    double v_min = 0.0;
    double v_max = 0.0;
    double v_step = 0.0;

    bool operator==(const VelocitySweep&) const = default;
};

/// Every violated model invariant, one message each. Empty means valid.
std::vector<std::string> validate_model(const LayeredEarthModel& model);

/// Throws ValidationError listing all violations.
void require_valid_model(const LayeredEarthModel& model);

/// Throws ValidationError when the curve lengths differ or a populated entry
/// is nonpositive.
void validate_curve(const DispersionCurve& curve);

/// Throws InputError on invalid parameters or when fewer than two
/// velocities would result.
std::vector<double> materialize_sweep(const VelocitySweep& sweep);

}  // namespace masw
