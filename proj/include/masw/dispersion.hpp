#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "masw/exact_sum.hpp"
#include "masw/model.hpp"
#include "masw/stiffness.hpp"

namespace masw {

/// No determinant sign change anywhere in the sweep for this wavelength.
class NoSignChange : public std::runtime_error {
public:
    NoSignChange(double wavelength, std::size_t wavelength_index);

    double wavelength() const { return wavelength_; }
    std::size_t wavelength_index() const { return wavelength_index_; }

private:
    double wavelength_;
    std::size_t wavelength_index_;
};

/// Materialized sweep plus the velocity terms for one model. Immutable once
/// built, so workers can share a single instance.
class VelocityTermsTable {
public:
    VelocityTermsTable(const LayeredEarthModel& model, std::vector<double> velocities);
    VelocityTermsTable(const LayeredEarthModel& model, const VelocitySweep& sweep);

    std::size_t size() const { return velocities_.size(); }
    std::span<const double> velocities() const { return velocities_; }
    double velocity(std::size_t i) const { return velocities_[i]; }
    const VelocityTerms& terms(std::size_t i) const { return terms_[i]; }

private:
    std::vector<double> velocities_;
    std::vector<VelocityTerms> terms_;
};

struct CurveResult {
    DispersionCurve curve;            // theoretical
    double misfit = 0.0;              // fraction, not percent
    std::uint64_t determinants_computed = 0;
};

/// Outcome of an early-exit scan over one sweep.
struct SweepScan {
    std::optional<std::size_t> index;  // first n >= 1 with sign(V[n]) != sign(V[n-1])
    std::uint64_t determinants = 0;
};

/// Evaluates determinant_at(0), determinant_at(1), ... in order and stops at
/// the first sign change. A zero sign differs from both -1 and +1.
template <class DeterminantAt>
SweepScan scan_first_sign_change(std::size_t count, DeterminantAt&& determinant_at) {
    SweepScan scan;
    if (count < 2) return scan;
    int previous = determinant_sign(determinant_at(std::size_t{0}));
    scan.determinants = 1;
    for (std::size_t n = 1; n < count; ++n) {
        const int current = determinant_sign(determinant_at(n));
        ++scan.determinants;
        if (current != previous) {
            scan.index = n;
            return scan;
        }
        previous = current;
    }
    return scan;
}

struct SignChange {
    std::size_t index = 0;
    double velocity = 0.0;
    std::uint64_t determinants = 0;
};

/// First sign change for one wavelength. Throws NoSignChange (tagged with
/// `wavelength_index`) when the whole sweep keeps one sign.
SignChange find_first_sign_change(const LayeredEarthModel& model, double wavelength, const VelocityTermsTable& table,
                                  BandedStiffnessMatrix& scratch, std::size_t wavelength_index = 0);

/// Theoretical curve plus per-wavelength instrumentation.
struct CurveTrace {
    DispersionCurve curve;
    std::vector<std::size_t> change_index;
    std::vector<std::uint64_t> determinants;

    std::uint64_t total_determinants() const;
};

CurveTrace trace_dispersion_curve(const LayeredEarthModel& model, std::span<const double> wavelengths,
                                  const VelocityTermsTable& table);

DispersionCurve theoretical_dispersion_curve(const LayeredEarthModel& model, std::span<const double> wavelengths,
                                             const VelocitySweep& sweep);

inline double relative_error(double theoretical, double experimental) {
    return std::abs(theoretical - experimental) / experimental;
}

/// Throws InputError unless both curves have the same nonzero length and
/// every experimental velocity is positive.
void check_misfit_inputs(std::span<const double> theoretical, std::span<const double> experimental);

/// Mean relative error (1/l) * sum |Ct - Ce| / Ce, summed exactly.
double misfit(std::span<const double> theoretical, std::span<const double> experimental);

CurveResult evaluate_model(const LayeredEarthModel& model, const DispersionCurve& experimental,
                           const VelocityTermsTable& table);
CurveResult evaluate_model(const LayeredEarthModel& model, const DispersionCurve& experimental,
                           const VelocitySweep& sweep);

}  // namespace masw
