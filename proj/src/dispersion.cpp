#include "masw/dispersion.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace masw {

namespace {

std::string no_sign_change_message(double wavelength, std::size_t index) {
    std::ostringstream os;
    os.precision(17);
    os << "no determinant sign change within the velocity sweep for wavelength " << wavelength << " m (index "
       << index << ")";
    return os.str();
}

}  // namespace

NoSignChange::NoSignChange(double wavelength, std::size_t wavelength_index)
    : std::runtime_error(no_sign_change_message(wavelength, wavelength_index)),
      wavelength_(wavelength),
      wavelength_index_(wavelength_index) {}

VelocityTermsTable::VelocityTermsTable(const LayeredEarthModel& model, std::vector<double> velocities)
    : velocities_(std::move(velocities)) {
    require_valid_model(model);
    for (std::size_t i = 1; i < velocities_.size(); ++i)
        if (!(velocities_[i] > velocities_[i - 1])) throw InputError("test velocities must be strictly increasing");
    if (velocities_.size() < 2) throw InputError("at least two test velocities are required");
    if (!(velocities_.front() > 0.0)) throw InputError("test velocities must be positive");
    terms_.reserve(velocities_.size());
    for (double v : velocities_) terms_.push_back(precompute_velocity_terms(model, v));
}

VelocityTermsTable::VelocityTermsTable(const LayeredEarthModel& model, const VelocitySweep& sweep)
    : VelocityTermsTable(model, materialize_sweep(sweep)) {}

SignChange find_first_sign_change(const LayeredEarthModel& model, double wavelength, const VelocityTermsTable& table,
                                  BandedStiffnessMatrix& scratch, std::size_t wavelength_index) {
    const SweepScan scan = scan_first_sign_change(table.size(), [&](std::size_t n) {
        return stiffness_determinant(model, wavelength, table.terms(n), scratch);
    });
    if (!scan.index) throw NoSignChange(wavelength, wavelength_index);
    return SignChange{*scan.index, table.velocity(*scan.index), scan.determinants};
}

std::uint64_t CurveTrace::total_determinants() const {
    return std::accumulate(determinants.begin(), determinants.end(), std::uint64_t{0});
}

CurveTrace trace_dispersion_curve(const LayeredEarthModel& model, std::span<const double> wavelengths,
                                  const VelocityTermsTable& table) {
    CurveTrace trace;
    const std::size_t count = wavelengths.size();
    trace.curve.wavelengths.assign(wavelengths.begin(), wavelengths.end());
    trace.curve.velocities.resize(count);
    trace.change_index.resize(count);
    trace.determinants.resize(count);

    BandedStiffnessMatrix scratch;
    for (std::size_t w = 0; w < count; ++w) {
        const SignChange change = find_first_sign_change(model, wavelengths[w], table, scratch, w);
        trace.curve.velocities[w] = change.velocity;
        trace.change_index[w] = change.index;
        trace.determinants[w] = change.determinants;
    }
    return trace;
}

DispersionCurve theoretical_dispersion_curve(const LayeredEarthModel& model, std::span<const double> wavelengths,
                                             const VelocitySweep& sweep) {
    require_valid_model(model);
    for (double w : wavelengths)
        if (!(w > 0.0) || !std::isfinite(w)) throw InputError("wavelengths must be positive");
    const VelocityTermsTable table(model, sweep);
    return trace_dispersion_curve(model, wavelengths, table).curve;
}

void check_misfit_inputs(std::span<const double> theoretical, std::span<const double> experimental) {
    if (theoretical.size() != experimental.size())
        throw InputError("theoretical and experimental curves differ in length");
    if (experimental.empty()) throw InputError("misfit needs at least one curve entry");
    for (double ce : experimental)
        if (!(ce > 0.0)) throw InputError("experimental velocities must be positive");
}

double misfit(std::span<const double> theoretical, std::span<const double> experimental) {
    check_misfit_inputs(theoretical, experimental);
    ExactSum errors;
    for (std::size_t i = 0; i < theoretical.size(); ++i) errors.add(relative_error(theoretical[i], experimental[i]));
    return errors.value() / static_cast<double>(theoretical.size());
}

CurveResult evaluate_model(const LayeredEarthModel& model, const DispersionCurve& experimental,
                           const VelocityTermsTable& table) {
    require_valid_model(model);
    validate_curve(experimental);
    check_misfit_inputs(experimental.velocities, experimental.velocities);

    CurveTrace trace = trace_dispersion_curve(model, experimental.wavelengths, table);
    CurveResult result;
    result.determinants_computed = trace.total_determinants();
    result.misfit = misfit(trace.curve.velocities, experimental.velocities);
    result.curve = std::move(trace.curve);
    return result;
}

CurveResult evaluate_model(const LayeredEarthModel& model, const DispersionCurve& experimental,
                           const VelocitySweep& sweep) {
    require_valid_model(model);
    return evaluate_model(model, experimental, VelocityTermsTable(model, sweep));
}

}  // namespace masw
