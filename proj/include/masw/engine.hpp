#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "masw/batched.hpp"
#include "masw/dispersion.hpp"
#include "masw/parallel.hpp"

namespace masw {

enum class EngineKind { Serial, Parallel, Batched };

std::string_view to_string(EngineKind kind);
EngineKind parse_engine_kind(std::string_view text);

/// Which engine runs and how. Fields that do not apply to the chosen kind
/// are ignored.
struct EngineConfig {
    EngineKind kind = EngineKind::Serial;
    std::size_t workers = 1;
    PartitionStrategy strategy = PartitionStrategy::Modular;
    std::size_t block_size = kDefaultBlockSize;
    std::uint64_t memory_budget = kDefaultMemoryBudget;

    std::string describe() const;
};

CurveResult evaluate(const EngineConfig& engine, const LayeredEarthModel& model, const DispersionCurve& experimental,
                     const VelocityTermsTable& table);

DispersionCurve compute_curve(const EngineConfig& engine, const LayeredEarthModel& model,
                              std::span<const double> wavelengths, const VelocityTermsTable& table);

}  // namespace masw
