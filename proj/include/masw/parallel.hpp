#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "masw/dispersion.hpp"

namespace masw {

enum class PartitionStrategy { Contiguous, Modular };

std::string_view to_string(PartitionStrategy strategy);
/// Accepts "contiguous" or "modular"; throws InputError otherwise.
PartitionStrategy parse_partition_strategy(std::string_view text);

/// Static assignment of wavelength indices to workers. Backend-agnostic: a
/// message-passing runtime could hand `assignments[k]` to rank k unchanged.
struct Partition {
    std::size_t wavelength_count = 0;
    std::vector<std::vector<std::size_t>> assignments;  // per worker, increasing

    std::size_t workers() const { return assignments.size(); }
};

/// Contiguous: worker k gets one run of indices, the first W mod s workers
/// take one extra. Modular: worker k gets every index congruent to k mod s.
Partition partition_wavelengths(std::size_t wavelength_count, std::size_t workers, PartitionStrategy strategy);

struct WorkerReport {
    std::size_t worker = 0;
    std::vector<std::size_t> wavelengths;  // indices the worker owned
    std::uint64_t determinants = 0;
    double seconds = 0.0;
};

struct ParallelResult {
    CurveResult result;
    std::vector<WorkerReport> workers;
};

/// Multi-worker evaluation. Ct is bitwise identical to the serial engine;
/// each worker keeps an exact partial sum of its relative errors and the
/// partials are merged once, in worker order, then divided by the curve
/// length. NoSignChange from the lowest failing wavelength index is
/// rethrown after all workers join.
ParallelResult parallel_evaluate(const LayeredEarthModel& model, const DispersionCurve& experimental,
                                 const VelocityTermsTable& table, std::size_t workers, PartitionStrategy strategy);
ParallelResult parallel_evaluate(const LayeredEarthModel& model, const DispersionCurve& experimental,
                                 const VelocitySweep& sweep, std::size_t workers, PartitionStrategy strategy);

/// Curve only (no experimental velocities).
struct ParallelCurve {
    DispersionCurve curve;
    std::vector<WorkerReport> workers;
};
ParallelCurve parallel_dispersion_curve(const LayeredEarthModel& model, std::span<const double> wavelengths,
                                        const VelocityTermsTable& table, std::size_t workers,
                                        PartitionStrategy strategy);

struct LoadBalanceRow {
    std::size_t worker = 0;
    std::size_t wavelengths = 0;
    std::uint64_t determinants = 0;
    double seconds = 0.0;
};

std::vector<LoadBalanceRow> load_balance_report(const std::vector<WorkerReport>& workers);

/// max/min determinant count over workers that own at least one wavelength.
double determinant_imbalance(const std::vector<LoadBalanceRow>& rows);

/// CSV with header `worker,wavelengths,determinants,seconds`.
std::string format_load_balance_csv(const std::vector<LoadBalanceRow>& rows, bool include_times = true);

}  // namespace masw
