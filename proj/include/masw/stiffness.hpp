#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "masw/model.hpp"

namespace masw {

using Complex = std::complex<double>;

/// Square complex matrix with three sub- and three super-diagonals stored
/// row by row: slot (i, j) lives at bands[i * 7 + (j - i + 3)]. Slots that
/// fall outside the matrix (row 0, column -1, ...) stay zero.
class BandedStiffnessMatrix {
public:
    static constexpr std::size_t kHalfBandwidth = 3;
    static constexpr std::size_t kBandCount = 2 * kHalfBandwidth + 1;

    BandedStiffnessMatrix() = default;
    explicit BandedStiffnessMatrix(std::size_t order);

    static BandedStiffnessMatrix identity(std::size_t order);
    static BandedStiffnessMatrix diagonal(std::span<const Complex> entries);

    std::size_t order() const { return order_; }
    bool in_band(std::size_t row, std::size_t col) const;

    /// Logical entry; zero outside the band.
    Complex at(std::size_t row, std::size_t col) const;
    /// Band slot; (row, col) must be in band.
    Complex& slot(std::size_t row, std::size_t col) { return bands_[row * kBandCount + col + kHalfBandwidth - row]; }
    const Complex& slot(std::size_t row, std::size_t col) const {
        return bands_[row * kBandCount + col + kHalfBandwidth - row];
    }

    /// Zero every slot and set the order, keeping the allocation when possible.
    void reset(std::size_t order);

    std::span<const Complex> bands() const { return bands_; }

    bool operator==(const BandedStiffnessMatrix&) const = default;

private:
    std::size_t order_ = 0;
    std::vector<Complex> bands_;
};

/// Per-layer subexpressions that depend on the test velocity but not on the
/// wavelength.
struct LayerTerms {
    Complex r;            // sqrt(1 - c^2/vp^2)
    Complex s;            // sqrt(1 - c^2/vs^2)
    Complex inv_r;
    Complex inv_s;
    Complex rs;
    Complex cross;        // 1/(r s) + r s
    double rho_c2 = 0.0;  // density * c^2
    Complex shear;        // density * vs^2 * (1 + s^2)

    bool operator==(const LayerTerms&) const = default;
};

/// Halfspace stiffness per unit wavenumber.
struct HalfspaceTerms {
    Complex k11;
    Complex k12;
    Complex k22;

    bool operator==(const HalfspaceTerms&) const = default;
};

/// Everything about one (model, test velocity) pair that every wavelength
/// can reuse. `velocity` is the value actually used in the formulas; it is
/// nudged off any layer vp/vs it would otherwise coincide with.
struct VelocityTerms {
    double requested_velocity = 0.0;
    double velocity = 0.0;
    std::vector<LayerTerms> layers;  // finite layers only
    HalfspaceTerms halfspace;

    bool operator==(const VelocityTerms&) const = default;
};

/// Distance below which a test velocity counts as equal to a layer velocity,
/// and the step it is nudged upward by.
inline constexpr double kSingularVelocityTolerance = 1e-9;
inline constexpr double kSingularVelocityNudge = 1e-6;

/// Applies the singular-velocity nudge until the velocity clears every
/// vp/vs of the model (halfspace included).
double effective_test_velocity(const LayeredEarthModel& model, double velocity);

VelocityTerms precompute_velocity_terms(const LayeredEarthModel& model, double velocity);

/// Global stiffness matrix for one wavelength, using precomputed terms.
/// Each finite layer i adds a symmetric 4x4 element block on rows/cols
/// 2i..2i+3; the halfspace adds a 2x2 block on the last two.
BandedStiffnessMatrix assemble(const LayeredEarthModel& model, double wavelength, const VelocityTerms& terms);

/// Same as assemble() but reuses `out`'s storage.
void assemble_into(BandedStiffnessMatrix& out, const LayeredEarthModel& model, double wavelength,
                   const VelocityTerms& terms);

/// Assembly with no cached terms: every entry recomputes its own
/// subexpressions from the raw model. Kept as the reference the cached path
/// must match bit for bit.
BandedStiffnessMatrix assemble_uncached(const LayeredEarthModel& model, double wavelength, double velocity);

struct EliminationStats {
    std::uint64_t flops = 0;  // complex multiply/divide/subtract count
    bool singular = false;    // an exact zero pivot was hit
};

/// Banded Gaussian elimination in natural order, O(order * 3^2). Destroys
/// the matrix. An exact zero pivot makes the determinant 0.
Complex eliminate_in_place(BandedStiffnessMatrix& matrix, EliminationStats* stats = nullptr);

Complex banded_determinant(BandedStiffnessMatrix matrix, EliminationStats* stats = nullptr);

/// Sign of the real part: -1, 0 or +1. NaN maps to 0.
int determinant_sign(Complex det);

/// Assemble + eliminate for one grid cell. `scratch` is overwritten. All
/// engines go through this function so their determinants agree exactly.
Complex stiffness_determinant(const LayeredEarthModel& model, double wavelength, const VelocityTerms& terms,
                              BandedStiffnessMatrix& scratch);

}  // namespace masw
