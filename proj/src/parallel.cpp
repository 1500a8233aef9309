#include "masw/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

namespace masw {

std::string_view to_string(PartitionStrategy strategy) {
    switch (strategy) {
        case PartitionStrategy::Contiguous: return "contiguous";
        case PartitionStrategy::Modular: return "modular";
    }
    return "unknown";
}

PartitionStrategy parse_partition_strategy(std::string_view text) {
    if (text == "contiguous") return PartitionStrategy::Contiguous;
    if (text == "modular") return PartitionStrategy::Modular;
    throw InputError("unknown partition strategy '" + std::string(text) + "' (expected contiguous or modular)");
}

Partition partition_wavelengths(std::size_t wavelength_count, std::size_t workers, PartitionStrategy strategy) {
    if (workers == 0) throw InputError("worker count must be at least 1");
    Partition p;
    p.wavelength_count = wavelength_count;
    p.assignments.resize(workers);

    switch (strategy) {
        case PartitionStrategy::Contiguous: {
            const std::size_t base = wavelength_count / workers;
            const std::size_t extra = wavelength_count % workers;
            std::size_t next = 0;
            for (std::size_t k = 0; k < workers; ++k) {
                const std::size_t size = base + (k < extra ? 1 : 0);
                auto& list = p.assignments[k];
                list.reserve(size);
                for (std::size_t i = 0; i < size; ++i) list.push_back(next++);
            }
            break;
        }
        case PartitionStrategy::Modular:
            for (std::size_t i = 0; i < wavelength_count; ++i) p.assignments[i % workers].push_back(i);
            break;
    }
    return p;
}

namespace {

struct WorkerOutput {
    std::uint64_t determinants = 0;
    double seconds = 0.0;
    ExactSum errors;
    std::optional<NoSignChange> failure;
};

// Runs one worker's static slice. Writes only velocities[i] for i in `owned`.
void run_worker(const LayeredEarthModel& model, std::span<const double> wavelengths,
                std::span<const double> experimental, const VelocityTermsTable& table,
                const std::vector<std::size_t>& owned, std::span<double> velocities, WorkerOutput& out) {
    const auto start = std::chrono::steady_clock::now();
    BandedStiffnessMatrix scratch;
    for (std::size_t i : owned) {
        const SweepScan scan = scan_first_sign_change(table.size(), [&](std::size_t n) {
            return stiffness_determinant(model, wavelengths[i], table.terms(n), scratch);
        });
        out.determinants += scan.determinants;
        if (!scan.index) {
            // Lists are increasing, so this is the worker's lowest failure.
            out.failure.emplace(wavelengths[i], i);
            break;
        }
        velocities[i] = table.velocity(*scan.index);
        if (!experimental.empty()) out.errors.add(relative_error(velocities[i], experimental[i]));
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct RunOutput {
    std::vector<double> velocities;
    std::vector<WorkerOutput> outputs;
    Partition partition;
};

RunOutput run_partitioned(const LayeredEarthModel& model, std::span<const double> wavelengths,
                          std::span<const double> experimental, const VelocityTermsTable& table, std::size_t workers,
                          PartitionStrategy strategy) {
    RunOutput run;
    run.partition = partition_wavelengths(wavelengths.size(), workers, strategy);
    run.velocities.assign(wavelengths.size(), 0.0);
    run.outputs.resize(workers);

    std::span<double> velocities(run.velocities);
    if (workers == 1) {
        run_worker(model, wavelengths, experimental, table, run.partition.assignments[0], velocities, run.outputs[0]);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t k = 0; k < workers; ++k)
            pool.emplace_back([&, k] {
                run_worker(model, wavelengths, experimental, table, run.partition.assignments[k], velocities,
                           run.outputs[k]);
            });
    }

    const NoSignChange* first = nullptr;
    for (const auto& out : run.outputs)
        if (out.failure && (!first || out.failure->wavelength_index() < first->wavelength_index()))
            first = &*out.failure;
    if (first) throw *first;
    return run;
}

std::vector<WorkerReport> reports(const RunOutput& run) {
    std::vector<WorkerReport> out(run.outputs.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k].worker = k;
        out[k].wavelengths = run.partition.assignments[k];
        out[k].determinants = run.outputs[k].determinants;
        out[k].seconds = run.outputs[k].seconds;
    }
    return out;
}

}  // namespace

ParallelResult parallel_evaluate(const LayeredEarthModel& model, const DispersionCurve& experimental,
                                 const VelocityTermsTable& table, std::size_t workers, PartitionStrategy strategy) {
    require_valid_model(model);
    validate_curve(experimental);
    check_misfit_inputs(experimental.velocities, experimental.velocities);

    RunOutput run = run_partitioned(model, experimental.wavelengths, experimental.velocities, table, workers, strategy);

    // The single reduction: worker partials merged in worker-index order.
    ExactSum total;
    std::uint64_t determinants = 0;
    for (const auto& out : run.outputs) {
        total.merge(out.errors);
        determinants += out.determinants;
    }

    ParallelResult result;
    result.workers = reports(run);
    result.result.curve.wavelengths = experimental.wavelengths;
    result.result.curve.velocities = std::move(run.velocities);
    result.result.misfit = total.value() / static_cast<double>(experimental.size());
    result.result.determinants_computed = determinants;
    return result;
}

ParallelResult parallel_evaluate(const LayeredEarthModel& model, const DispersionCurve& experimental,
                                 const VelocitySweep& sweep, std::size_t workers, PartitionStrategy strategy) {
    require_valid_model(model);
    return parallel_evaluate(model, experimental, VelocityTermsTable(model, sweep), workers, strategy);
}

ParallelCurve parallel_dispersion_curve(const LayeredEarthModel& model, std::span<const double> wavelengths,
                                        const VelocityTermsTable& table, std::size_t workers,
                                        PartitionStrategy strategy) {
    require_valid_model(model);
    RunOutput run = run_partitioned(model, wavelengths, {}, table, workers, strategy);
    ParallelCurve out;
    out.workers = reports(run);
    out.curve.wavelengths.assign(wavelengths.begin(), wavelengths.end());
    out.curve.velocities = std::move(run.velocities);
    return out;
}

std::vector<LoadBalanceRow> load_balance_report(const std::vector<WorkerReport>& workers) {
    std::vector<LoadBalanceRow> rows;
    rows.reserve(workers.size());
    for (const auto& w : workers) rows.push_back({w.worker, w.wavelengths.size(), w.determinants, w.seconds});
    return rows;
}

double determinant_imbalance(const std::vector<LoadBalanceRow>& rows) {
    std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t hi = 0;
    for (const auto& r : rows) {
        if (r.wavelengths == 0) continue;
        lo = std::min(lo, r.determinants);
        hi = std::max(hi, r.determinants);
    }
    if (hi == 0) return 1.0;
    return static_cast<double>(hi) / static_cast<double>(lo);
}

std::string format_load_balance_csv(const std::vector<LoadBalanceRow>& rows, bool include_times) {
    std::ostringstream os;
    os << "worker,wavelengths,determinants,seconds\n";
    for (const auto& r : rows) {
        os << r.worker << ',' << r.wavelengths << ',' << r.determinants << ',';
        if (include_times)
            os << r.seconds;
        else
            os << '-';
        os << '\n';
    }
    return os.str();
}

}  // namespace masw
