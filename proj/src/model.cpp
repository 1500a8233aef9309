#include "masw/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace masw {

namespace {

std::string indexed(const char* what, std::size_t i) {
    std::ostringstream os;
    os << what << " at index " << i;
    return os.str();
}

std::string join_errors(const char* prefix, const std::vector<std::string>& errors) {
    std::string message = prefix;
    for (std::size_t i = 0; i < errors.size(); ++i) message += (i == 0 ? " " : "; ") + errors[i];
    return message;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> errors)
    : InputError(join_errors("validation failed:", errors)), errors_(std::move(errors)) {}

std::vector<std::string> validate_model(const LayeredEarthModel& model) {
    std::vector<std::string> errors;
    const std::size_t n = model.n_layers;
    if (n == 0) errors.emplace_back("n_layers must be positive");

    if (model.thickness.size() != n) errors.emplace_back("thickness length must equal n_layers");
    if (model.density.size() != n + 1) errors.emplace_back("density length must equal n_layers + 1");
    if (model.vp.size() != n + 1) errors.emplace_back("vp length must equal n_layers + 1");
    if (model.vs.size() != n + 1) errors.emplace_back("vs length must equal n_layers + 1");

    // NaN fails every `> 0` test, so it is reported as nonpositive.
    for (std::size_t i = 0; i < model.thickness.size(); ++i)
        if (!(model.thickness[i] > 0.0) || !std::isfinite(model.thickness[i]))
            errors.push_back(indexed("nonpositive thickness", i));
    for (std::size_t i = 0; i < model.density.size(); ++i)
        if (!(model.density[i] > 0.0) || !std::isfinite(model.density[i]))
            errors.push_back(indexed("nonpositive density", i));
    for (std::size_t i = 0; i < model.vs.size(); ++i)
        if (!(model.vs[i] > 0.0) || !std::isfinite(model.vs[i]))
            errors.push_back(indexed("nonpositive vs", i));

    const std::size_t paired = std::min(model.vp.size(), model.vs.size());
    for (std::size_t i = 0; i < paired; ++i)
        if (!(model.vp[i] > model.vs[i]) || !std::isfinite(model.vp[i]))
            errors.push_back(indexed("vp must exceed vs", i));
    return errors;
}

void require_valid_model(const LayeredEarthModel& model) {
    const auto errors = validate_model(model);
    if (errors.empty()) return;
    throw ValidationError(errors);
}

void validate_curve(const DispersionCurve& curve) {
    if (curve.wavelengths.size() != curve.velocities.size())
        throw ValidationError({"curve wavelength and velocity counts differ"});
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (!(curve.wavelengths[i] > 0.0) || !std::isfinite(curve.wavelengths[i]))
            throw ValidationError({indexed("nonpositive wavelength", i)});
        if (!(curve.velocities[i] > 0.0) || !std::isfinite(curve.velocities[i]))
            throw ValidationError({indexed("nonpositive velocity", i)});
    }
}

std::vector<double> materialize_sweep(const VelocitySweep& sweep) {
    if (!(sweep.v_min > 0.0) || !(sweep.v_step > 0.0) || !(sweep.v_max > sweep.v_min) ||
        !std::isfinite(sweep.v_max) || !std::isfinite(sweep.v_step))
        throw InputError("velocity sweep requires 0 < v_min < v_max and v_step > 0");

    // The small slack lets an endpoint that is an exact multiple of the step
    // survive the division's rounding; the guard below keeps values <= v_max.
    const double span = (sweep.v_max - sweep.v_min) / sweep.v_step;
    auto last = static_cast<std::size_t>(std::floor(span + 1e-9));
    while (last > 0 && sweep.v_min + static_cast<double>(last) * sweep.v_step > sweep.v_max + 1e-9 * sweep.v_step)
        --last;
    if (last < 1) throw InputError("velocity sweep must contain at least two velocities");

    std::vector<double> grid(last + 1);
    for (std::size_t i = 0; i <= last; ++i) grid[i] = sweep.v_min + static_cast<double>(i) * sweep.v_step;
    return grid;
}

}  // namespace masw
