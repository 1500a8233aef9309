#include "masw/engine.hpp"

#include <sstream>

namespace masw {

std::string_view to_string(EngineKind kind) {
    switch (kind) {
        case EngineKind::Serial: return "serial";
        case EngineKind::Parallel: return "parallel";
        case EngineKind::Batched: return "batched";
    }
    return "unknown";
}

EngineKind parse_engine_kind(std::string_view text) {
    if (text == "serial") return EngineKind::Serial;
    if (text == "parallel") return EngineKind::Parallel;
    if (text == "batched") return EngineKind::Batched;
    throw InputError("unknown engine '" + std::string(text) + "' (expected serial, parallel or batched)");
}

std::string EngineConfig::describe() const {
    std::ostringstream os;
    os << to_string(kind);
    if (kind == EngineKind::Parallel) os << "(workers=" << workers << ", strategy=" << to_string(strategy) << ")";
    if (kind == EngineKind::Batched) os << "(block_size=" << block_size << ")";
    return os.str();
}

namespace {

BatchedOptions batched_options(const EngineConfig& engine) {
    BatchedOptions options;
    options.block_size = engine.block_size;
    options.memory_budget = engine.memory_budget;
    options.workers = engine.workers;
    return options;
}

}  // namespace

CurveResult evaluate(const EngineConfig& engine, const LayeredEarthModel& model, const DispersionCurve& experimental,
                     const VelocityTermsTable& table) {
    switch (engine.kind) {
        case EngineKind::Serial: return evaluate_model(model, experimental, table);
        case EngineKind::Parallel:
            return parallel_evaluate(model, experimental, table, engine.workers, engine.strategy).result;
        case EngineKind::Batched: return batched_evaluate(model, experimental, table, batched_options(engine));
    }
    throw InputError("unknown engine");
}

DispersionCurve compute_curve(const EngineConfig& engine, const LayeredEarthModel& model,
                              std::span<const double> wavelengths, const VelocityTermsTable& table) {
    require_valid_model(model);
    switch (engine.kind) {
        case EngineKind::Serial: return trace_dispersion_curve(model, wavelengths, table).curve;
        case EngineKind::Parallel:
            return parallel_dispersion_curve(model, wavelengths, table, engine.workers, engine.strategy).curve;
        case EngineKind::Batched: return batched_dispersion_curve(model, wavelengths, table, batched_options(engine));
    }
    throw InputError("unknown engine");
}

}  // namespace masw
