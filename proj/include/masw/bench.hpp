#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "masw/engine.hpp"

namespace masw {

/// One row of the benchmark CSV.
struct BenchRecord {
    std::string experiment;
    std::string engine;
    std::string dataset;
    std::size_t workers = 1;
    std::string strategy = "-";
    std::size_t block_size = 0;
    std::size_t length = 0;
    std::size_t reps = 0;
    double median_seconds = 0.0;
    std::uint64_t dets = 0;
    double speedup = 1.0;
};

inline constexpr const char* kBenchCsvHeader =
    "experiment,engine,dataset,workers,strategy,block_size,length,reps,median_seconds,dets,speedup";

std::string format_bench_csv(const std::vector<BenchRecord>& records);

/// A named curve to benchmark against the reference model.
struct BenchDataset {
    std::string name;  // "uniform" or "variable"
    DispersionCurve curve;
};

/// "uniform" (reference tier 238) or "variable"; throws InputError otherwise.
BenchDataset make_bench_dataset(const std::string& name, std::size_t length);

struct BenchOptions {
    std::size_t reps = 5;  // timed repetitions after one discarded warm-up
};

/// Parallel engine at each worker count; speedup relative to one worker.
std::vector<BenchRecord> bench_strong(const BenchDataset& dataset, PartitionStrategy strategy,
                                      const std::vector<std::size_t>& workers, const BenchOptions& options = {});

/// Uniform data of length base_length * s at each worker count s;
/// speedup is t(1) / t(s), so ideal weak scaling stays at 1.
std::vector<BenchRecord> bench_weak(std::size_t base_length, const std::vector<std::size_t>& workers,
                                    PartitionStrategy strategy = PartitionStrategy::Modular,
                                    const BenchOptions& options = {});

/// Serial, parallel and batched engines on one dataset; speedup vs serial.
std::vector<BenchRecord> bench_engines(const BenchDataset& dataset, std::size_t workers, std::size_t block_size,
                                       const BenchOptions& options = {});

/// Banded vs dense determinant on random heptadiagonal matrices. Two rows
/// per order; the banded row's speedup is dense time / banded time.
std::vector<BenchRecord> bench_elimination(const std::vector<std::size_t>& orders, const BenchOptions& options = {},
                                           std::size_t matrices_per_rep = 2000);

}  // namespace masw
