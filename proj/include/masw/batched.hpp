#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "masw/dispersion.hpp"

namespace masw {

inline constexpr std::size_t kDefaultBlockSize = 256;
/// 2 GiB, the global memory of the reference workstation GPU.
inline constexpr std::uint64_t kDefaultMemoryBudget = 2ull * 1024 * 1024 * 1024;

/// Device footprint if every stiffness matrix on the grid were held densely:
/// wavelengths * velocities * (2(N+1))^2 * 16 bytes.
std::uint64_t memory_estimate(std::uint64_t wavelengths, std::uint64_t velocities, std::uint64_t layers);

class MemoryBudgetExceeded : public std::runtime_error {
public:
    MemoryBudgetExceeded(std::uint64_t required, std::uint64_t budget);
    std::uint64_t required() const { return required_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

struct BatchedOptions {
    std::size_t block_size = kDefaultBlockSize;
    std::uint64_t memory_budget = kDefaultMemoryBudget;
    std::size_t workers = 0;  // 0 = hardware concurrency
    bool signs_only = false;  // drop complex values after the sign phase
    /// When set, each phase visits its tasks in a seeded random order.
    std::optional<std::uint64_t> schedule_seed;
};

/// Determinants over the wavelength x velocity grid, row-major by wavelength.
struct DeterminantGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> values;       // empty in signs-only mode
    std::vector<std::int8_t> signs;
    std::uint64_t tasks = 0;           // one per stiffness matrix

    int sign(std::size_t w, std::size_t n) const { return signs[w * cols + n]; }
    Complex value(std::size_t w, std::size_t n) const { return values[w * cols + n]; }
};

/// Fill phase (one task per matrix) followed by the elimination phase (one
/// task per matrix), processed in row chunks that bound scratch memory.
/// Checks the memory estimate against the budget before allocating.
DeterminantGrid fill_grid(const LayeredEarthModel& model, std::span<const double> wavelengths,
                          const VelocityTermsTable& table, const BatchedOptions& options = {});
DeterminantGrid fill_grid(const LayeredEarthModel& model, std::span<const double> wavelengths,
                          const VelocitySweep& sweep, const BatchedOptions& options = {});

/// Per (wavelength, block) first in-block sign change. The pair that
/// straddles blocks k and k+1 belongs to block k; the last velocity never
/// starts a pair.
struct BlockResultMatrix {
    static constexpr std::int32_t kNone = -1;

    std::size_t rows = 0;
    std::size_t blocks = 0;
    std::size_t block_size = 0;
    std::size_t velocity_count = 0;
    std::vector<std::int32_t> first;

    std::int32_t at(std::size_t w, std::size_t k) const { return first[w * blocks + k]; }
};

BlockResultMatrix block_search(const DeterminantGrid& grid, std::size_t block_size = kDefaultBlockSize,
                               const BatchedOptions& options = {});

/// First non-empty block per wavelength gives global index
/// k * block_size + t + 1. Throws NoSignChange for an all-empty row (lowest
/// wavelength index first).
DispersionCurve reduce_blocks(const BlockResultMatrix& blocks, std::span<const double> wavelengths,
                              std::span<const double> velocities);

CurveResult batched_evaluate(const LayeredEarthModel& model, const DispersionCurve& experimental,
                             const VelocityTermsTable& table, const BatchedOptions& options = {});
CurveResult batched_evaluate(const LayeredEarthModel& model, const DispersionCurve& experimental,
                             const VelocitySweep& sweep, const BatchedOptions& options = {});

DispersionCurve batched_dispersion_curve(const LayeredEarthModel& model, std::span<const double> wavelengths,
                                         const VelocityTermsTable& table, const BatchedOptions& options = {});

}  // namespace masw
