#include "masw/batched.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace masw {

namespace {

// Upper bound on band storage held between the fill and elimination phases.
constexpr std::size_t kChunkBytes = 32u << 20;

std::size_t resolve_workers(std::size_t requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// One phase: run task(i) for every i in [0, count), each exactly once, over
// a pool of workers. Returns after all tasks finish (the barrier).
template <class Task>
void run_phase(std::size_t count, const BatchedOptions& options, Task&& task) {
    std::vector<std::size_t> order;
    if (options.schedule_seed) {
        order.resize(count);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::mt19937_64 rng(*options.schedule_seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    auto index = [&](std::size_t i) { return order.empty() ? i : order[i]; };

    const std::size_t workers = std::min(resolve_workers(options.workers), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(index(i));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t k = 0; k < workers; ++k)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1, std::memory_order_relaxed); i < count;
                 i = next.fetch_add(1, std::memory_order_relaxed))
                task(index(i));
        });
}

std::string budget_message(std::uint64_t required, std::uint64_t budget) {
    std::ostringstream os;
    os << "batched grid needs " << required << " bytes of matrix storage, budget is " << budget << " bytes";
    return os.str();
}

}  // namespace

std::uint64_t memory_estimate(std::uint64_t wavelengths, std::uint64_t velocities, std::uint64_t layers) {
    const std::uint64_t order = 2 * (layers + 1);
    return wavelengths * velocities * order * order * sizeof(Complex);
}

MemoryBudgetExceeded::MemoryBudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error(budget_message(required, budget)), required_(required), budget_(budget) {}

DeterminantGrid fill_grid(const LayeredEarthModel& model, std::span<const double> wavelengths,
                          const VelocityTermsTable& table, const BatchedOptions& options) {
    require_valid_model(model);
    const std::size_t rows = wavelengths.size();
    const std::size_t cols = table.size();
    const std::uint64_t required = memory_estimate(rows, cols, model.n_layers);
    if (required > options.memory_budget) throw MemoryBudgetExceeded(required, options.memory_budget);

    DeterminantGrid grid;
    grid.rows = rows;
    grid.cols = cols;
    grid.values.resize(rows * cols);
    grid.signs.resize(rows * cols);

    const std::size_t order = 2 * (model.n_layers + 1);
    const std::size_t matrix_bytes = order * BandedStiffnessMatrix::kBandCount * sizeof(Complex);
    const std::size_t rows_per_chunk = std::max<std::size_t>(1, kChunkBytes / (matrix_bytes * std::max<std::size_t>(cols, 1)));

    std::vector<BandedStiffnessMatrix> matrices;
    for (std::size_t row0 = 0; row0 < rows; row0 += rows_per_chunk) {
        const std::size_t chunk_rows = std::min(rows_per_chunk, rows - row0);
        const std::size_t chunk_tasks = chunk_rows * cols;
        matrices.resize(chunk_tasks);

        // Fill: one matrix per task.
        run_phase(chunk_tasks, options, [&](std::size_t t) {
            const std::size_t w = row0 + t / cols;
            const std::size_t n = t % cols;
            assemble_into(matrices[t], model, wavelengths[w], table.terms(n));
        });
        // Eliminate: one matrix per task, writes its own grid cell.
        run_phase(chunk_tasks, options, [&](std::size_t t) {
            const Complex det = eliminate_in_place(matrices[t], nullptr);
            const std::size_t cell = row0 * cols + t;
            grid.values[cell] = det;
            grid.signs[cell] = static_cast<std::int8_t>(determinant_sign(det));
        });
        grid.tasks += chunk_tasks;
    }
    if (options.signs_only) {
        grid.values.clear();
        grid.values.shrink_to_fit();
    }
    return grid;
}

DeterminantGrid fill_grid(const LayeredEarthModel& model, std::span<const double> wavelengths,
                          const VelocitySweep& sweep, const BatchedOptions& options) {
    require_valid_model(model);
    return fill_grid(model, wavelengths, VelocityTermsTable(model, sweep), options);
}

BlockResultMatrix block_search(const DeterminantGrid& grid, std::size_t block_size, const BatchedOptions& options) {
    if (block_size == 0) throw InputError("block size must be at least 1");
    BlockResultMatrix out;
    out.rows = grid.rows;
    out.block_size = block_size;
    out.velocity_count = grid.cols;
    out.blocks = (grid.cols + block_size - 1) / block_size;
    out.first.assign(out.rows * out.blocks, BlockResultMatrix::kNone);

    run_phase(out.rows * out.blocks, options, [&](std::size_t task) {
        const std::size_t w = task / out.blocks;
        const std::size_t k = task % out.blocks;
        const std::size_t begin = k * block_size;
        const std::size_t end = std::min(begin + block_size, grid.cols);
        for (std::size_t n = begin; n < end && n + 1 < grid.cols; ++n) {
            if (grid.sign(w, n) != grid.sign(w, n + 1)) {
                out.first[task] = static_cast<std::int32_t>(n - begin);
                return;
            }
        }
    });
    return out;
}

DispersionCurve reduce_blocks(const BlockResultMatrix& blocks, std::span<const double> wavelengths,
                              std::span<const double> velocities) {
    if (wavelengths.size() != blocks.rows) throw InputError("block matrix row count differs from wavelength count");
    if (velocities.size() != blocks.velocity_count)
        throw InputError("block matrix velocity count differs from sweep size");
    DispersionCurve curve;
    curve.wavelengths.assign(wavelengths.begin(), wavelengths.end());
    curve.velocities.resize(blocks.rows);
    for (std::size_t w = 0; w < blocks.rows; ++w) {
        std::size_t k = 0;
        while (k < blocks.blocks && blocks.at(w, k) == BlockResultMatrix::kNone) ++k;
        if (k == blocks.blocks) throw NoSignChange(wavelengths[w], w);
        const std::size_t n = k * blocks.block_size + static_cast<std::size_t>(blocks.at(w, k)) + 1;
        curve.velocities[w] = velocities[n];
    }
    return curve;
}

DispersionCurve batched_dispersion_curve(const LayeredEarthModel& model, std::span<const double> wavelengths,
                                         const VelocityTermsTable& table, const BatchedOptions& options) {
    BatchedOptions grid_options = options;
    grid_options.signs_only = true;
    const DeterminantGrid grid = fill_grid(model, wavelengths, table, grid_options);
    const BlockResultMatrix blocks = block_search(grid, options.block_size, options);
    return reduce_blocks(blocks, wavelengths, table.velocities());
}

CurveResult batched_evaluate(const LayeredEarthModel& model, const DispersionCurve& experimental,
                             const VelocityTermsTable& table, const BatchedOptions& options) {
    require_valid_model(model);
    validate_curve(experimental);
    check_misfit_inputs(experimental.velocities, experimental.velocities);

    CurveResult result;
    result.curve = batched_dispersion_curve(model, experimental.wavelengths, table, options);
    result.misfit = misfit(result.curve.velocities, experimental.velocities);
    result.determinants_computed = static_cast<std::uint64_t>(experimental.size()) * table.size();
    return result;
}

CurveResult batched_evaluate(const LayeredEarthModel& model, const DispersionCurve& experimental,
                             const VelocitySweep& sweep, const BatchedOptions& options) {
    require_valid_model(model);
    return batched_evaluate(model, experimental, VelocityTermsTable(model, sweep), options);
}

}  // namespace masw
