#include "masw/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "masw/datasets.hpp"
#include "masw/dense.hpp"
#include "masw/io.hpp"

namespace masw {

namespace {

// Median wall time of `run` over `reps` timed calls after one discarded warm-up.
template <class Fn>
double median_time(std::size_t reps, Fn&& run) {
    if (reps < 3) throw InputError("benchmarks need at least 3 repetitions");
    run();  // warm-up, discarded
    std::vector<double> times;
    times.reserve(reps);
    for (std::size_t i = 0; i < reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        run();
        times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    return times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

void require_matches(const DispersionCurve& got, const DispersionCurve& oracle, const std::string& what) {
    if (got.velocities != oracle.velocities)
        throw std::logic_error("benchmark run '" + what + "' disagrees with the serial engine");
}

struct TimedRun {
    double seconds = 0.0;
    std::uint64_t dets = 0;
};

TimedRun time_parallel(const BenchDataset& data, std::size_t workers, PartitionStrategy strategy,
                       const DispersionCurve& oracle, std::size_t reps) {
    const LayeredEarthModel model = reference_model();
    TimedRun out;
    out.seconds = median_time(reps, [&] {
        const VelocityTermsTable table(model, reference_sweep());
        const ParallelResult r = parallel_evaluate(model, data.curve, table, workers, strategy);
        require_matches(r.result.curve, oracle, data.name);
        out.dets = r.result.determinants_computed;
    });
    return out;
}

DispersionCurve serial_oracle(const BenchDataset& data) {
    return theoretical_dispersion_curve(reference_model(), data.curve.wavelengths, reference_sweep());
}

}  // namespace

std::string format_bench_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream os;
    os << kBenchCsvHeader << '\n';
    for (const auto& r : records) {
        os << r.experiment << ',' << r.engine << ',' << r.dataset << ',' << r.workers << ',' << r.strategy << ','
           << r.block_size << ',' << r.length << ',' << r.reps << ',' << format_double(r.median_seconds) << ','
           << r.dets << ',' << format_double(r.speedup) << '\n';
    }
    return os.str();
}

BenchDataset make_bench_dataset(const std::string& name, std::size_t length) {
    if (name == "uniform") return {name, gen_uniform(length, kDefaultUniformTier)};
    if (name == "variable") return {name, gen_variable(length)};
    throw InputError("unknown dataset '" + name + "' (expected uniform or variable)");
}

std::vector<BenchRecord> bench_strong(const BenchDataset& dataset, PartitionStrategy strategy,
                                      const std::vector<std::size_t>& workers, const BenchOptions& options) {
    if (workers.empty()) throw InputError("strong scaling needs at least one worker count");
    const DispersionCurve oracle = serial_oracle(dataset);

    const auto one = std::find(workers.begin(), workers.end(), std::size_t{1});
    std::vector<TimedRun> runs(workers.size());
    for (std::size_t i = 0; i < workers.size(); ++i)
        runs[i] = time_parallel(dataset, workers[i], strategy, oracle, options.reps);
    const double baseline = one != workers.end()
                                ? runs[static_cast<std::size_t>(one - workers.begin())].seconds
                                : time_parallel(dataset, 1, strategy, oracle, options.reps).seconds;

    std::vector<BenchRecord> records;
    for (std::size_t i = 0; i < workers.size(); ++i) {
        BenchRecord r;
        r.experiment = "strong";
        r.engine = "parallel";
        r.dataset = dataset.name;
        r.workers = workers[i];
        r.strategy = std::string(to_string(strategy));
        r.length = dataset.curve.size();
        r.reps = options.reps;
        r.median_seconds = runs[i].seconds;
        r.dets = runs[i].dets;
        r.speedup = baseline / runs[i].seconds;
        records.push_back(r);
    }
    return records;
}

std::vector<BenchRecord> bench_weak(std::size_t base_length, const std::vector<std::size_t>& workers,
                                    PartitionStrategy strategy, const BenchOptions& options) {
    if (workers.empty()) throw InputError("weak scaling needs at least one worker count");
    if (base_length == 0) throw InputError("weak scaling base length must be at least 1");

    auto run_at = [&](std::size_t s) {
        const BenchDataset data = make_bench_dataset("uniform", base_length * s);
        return time_parallel(data, s, strategy, serial_oracle(data), options.reps);
    };
    std::vector<TimedRun> runs;
    for (std::size_t s : workers) runs.push_back(run_at(s));
    const auto one = std::find(workers.begin(), workers.end(), std::size_t{1});
    const double baseline =
        one != workers.end() ? runs[static_cast<std::size_t>(one - workers.begin())].seconds : run_at(1).seconds;

    std::vector<BenchRecord> records;
    for (std::size_t i = 0; i < workers.size(); ++i) {
        BenchRecord r;
        r.experiment = "weak";
        r.engine = "parallel";
        r.dataset = "uniform";
        r.workers = workers[i];
        r.strategy = std::string(to_string(strategy));
        r.length = base_length * workers[i];
        r.reps = options.reps;
        r.median_seconds = runs[i].seconds;
        r.dets = runs[i].dets;
        r.speedup = baseline / runs[i].seconds;
        records.push_back(r);
    }
    return records;
}

std::vector<BenchRecord> bench_engines(const BenchDataset& dataset, std::size_t workers, std::size_t block_size,
                                       const BenchOptions& options) {
    const LayeredEarthModel model = reference_model();
    const DispersionCurve oracle = serial_oracle(dataset);

    std::vector<EngineConfig> engines(3);
    engines[0].kind = EngineKind::Serial;
    engines[1].kind = EngineKind::Parallel;
    engines[1].workers = workers;
    engines[2].kind = EngineKind::Batched;
    engines[2].workers = workers;
    engines[2].block_size = block_size;

    std::vector<BenchRecord> records;
    double serial_seconds = 0.0;
    for (const auto& engine : engines) {
        std::uint64_t dets = 0;
        const double seconds = median_time(options.reps, [&] {
            const VelocityTermsTable table(model, reference_sweep());
            const CurveResult r = evaluate(engine, model, dataset.curve, table);
            require_matches(r.curve, oracle, engine.describe());
            dets = r.determinants_computed;
        });
        if (engine.kind == EngineKind::Serial) serial_seconds = seconds;

        BenchRecord r;
        r.experiment = "engines";
        r.engine = std::string(to_string(engine.kind));
        r.dataset = dataset.name;
        r.workers = engine.kind == EngineKind::Serial ? 1 : workers;
        r.strategy = engine.kind == EngineKind::Parallel ? std::string(to_string(engine.strategy)) : "-";
        r.block_size = engine.kind == EngineKind::Batched ? block_size : 0;
        r.length = dataset.curve.size();
        r.reps = options.reps;
        r.median_seconds = seconds;
        r.dets = dets;
        r.speedup = serial_seconds / seconds;
        records.push_back(r);
    }
    return records;
}

std::vector<BenchRecord> bench_elimination(const std::vector<std::size_t>& orders, const BenchOptions& options,
                                           std::size_t matrices_per_rep) {
    std::vector<BenchRecord> records;
    std::mt19937_64 rng(20200714);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);

    for (std::size_t order : orders) {
        if (order == 0) throw InputError("matrix order must be positive");
        std::vector<BandedStiffnessMatrix> banded(matrices_per_rep);
        std::vector<DenseMatrix> dense;
        dense.reserve(matrices_per_rep);
        for (auto& m : banded) {
            m.reset(order);
            for (std::size_t i = 0; i < order; ++i)
                for (std::size_t j = 0; j < order; ++j)
                    if (m.in_band(i, j)) m.slot(i, j) = Complex(entry(rng), entry(rng)) + (i == j ? 4.0 : 0.0);
            dense.push_back(to_dense(m));
        }

        Complex sink = 0.0;
        const double banded_seconds = median_time(options.reps, [&] {
            for (const auto& m : banded) sink += banded_determinant(m);
        });
        const double dense_seconds = median_time(options.reps, [&] {
            for (const auto& m : dense) sink += dense_determinant(m);
        });
        if (!std::isfinite(sink.real())) throw std::logic_error("elimination benchmark produced non-finite values");

        BenchRecord b;
        b.experiment = "elimination";
        b.engine = "banded";
        b.dataset = "random-heptadiagonal";
        b.length = order;
        b.reps = options.reps;
        b.median_seconds = banded_seconds;
        b.dets = matrices_per_rep;
        b.speedup = dense_seconds / banded_seconds;
        BenchRecord d = b;
        d.engine = "dense";
        d.median_seconds = dense_seconds;
        d.speedup = 1.0;
        records.push_back(b);
        records.push_back(d);
    }
    return records;
}

}  // namespace masw
