#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "masw/engine.hpp"

namespace masw {

struct CandidateOutcome {
    std::size_t id = 0;
    std::optional<double> misfit;  // empty when the candidate failed
    std::uint64_t determinants = 0;
    double seconds = 0.0;
    std::string failure;
};

struct InversionReport {
    std::vector<CandidateOutcome> rows;
    std::optional<std::size_t> best;  // argmin misfit, ties to the lowest id
};

/// Evaluates every candidate in order with one engine. A candidate whose
/// curve has no sign change is recorded without a misfit and skipped for the
/// argmin. Candidates identical to an earlier one reuse its velocity terms.
InversionReport run_inversion(const std::vector<LayeredEarthModel>& candidates, const DispersionCurve& experimental,
                              const VelocitySweep& sweep, const EngineConfig& engine);

/// `id,misfit,misfit_percent,determinants,elapsed_seconds,status`. Elapsed
/// time is written as "-" when `include_times` is false.
std::string format_report_csv(const InversionReport& report, bool include_times);

/// Aligned human-readable table plus the best-candidate line.
std::string format_report_table(const InversionReport& report, bool include_times);

}  // namespace masw
