#include "masw/inversion.hpp"

#include <chrono>
#include <cstdio>
#include <memory>
#include <sstream>

#include "masw/io.hpp"

namespace masw {

InversionReport run_inversion(const std::vector<LayeredEarthModel>& candidates, const DispersionCurve& experimental,
                              const VelocitySweep& sweep, const EngineConfig& engine) {
    validate_curve(experimental);
    const std::vector<double> velocities = materialize_sweep(sweep);

    InversionReport report;
    report.rows.reserve(candidates.size());
    std::vector<std::shared_ptr<const VelocityTermsTable>> tables(candidates.size());

    for (std::size_t id = 0; id < candidates.size(); ++id) {
        const LayeredEarthModel& model = candidates[id];
        require_valid_model(model);
        for (std::size_t prior = 0; prior < id && !tables[id]; ++prior)
            if (candidates[prior] == model) tables[id] = tables[prior];
        if (!tables[id]) tables[id] = std::make_shared<const VelocityTermsTable>(model, velocities);

        CandidateOutcome row;
        row.id = id;
        const auto start = std::chrono::steady_clock::now();
        try {
            const CurveResult result = evaluate(engine, model, experimental, *tables[id]);
            row.misfit = result.misfit;
            row.determinants = result.determinants_computed;
        } catch (const NoSignChange& e) {
            row.failure = e.what();
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        if (row.misfit && (!report.best || *row.misfit < *report.rows[*report.best].misfit)) report.best = id;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string format_report_csv(const InversionReport& report, bool include_times) {
    std::ostringstream os;
    os << "id,misfit,misfit_percent,determinants,elapsed_seconds,status\n";
    for (const auto& row : report.rows) {
        os << row.id << ',';
        if (row.misfit)
            os << format_double(*row.misfit) << ',' << format_double(*row.misfit * 100.0);
        else
            os << "unavailable,unavailable";
        os << ',' << row.determinants << ',';
        if (include_times)
            os << format_double(row.seconds);
        else
            os << '-';
        os << ',' << (row.misfit ? "ok" : "no_sign_change") << '\n';
    }
    return os.str();
}

std::string format_report_table(const InversionReport& report, bool include_times) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%6s  %14s  %10s  %14s  %s\n", "id", "misfit [%]", "dets", "elapsed [s]", "status");
    os << line;
    for (const auto& row : report.rows) {
        char misfit[32] = "unavailable";
        if (row.misfit) std::snprintf(misfit, sizeof misfit, "%.6f", *row.misfit * 100.0);
        char elapsed[32] = "-";
        if (include_times) std::snprintf(elapsed, sizeof elapsed, "%.6f", row.seconds);
        std::snprintf(line, sizeof line, "%6zu  %14s  %10llu  %14s  %s\n", row.id, misfit,
                      static_cast<unsigned long long>(row.determinants), elapsed,
                      row.misfit ? "ok" : "no sign change");
        os << line;
    }
    if (report.best)
        os << "best candidate: " << *report.best << " (misfit " << format_double(*report.rows[*report.best].misfit)
           << ")\n";
    else
        os << "best candidate: none (every candidate failed)\n";
    return os.str();
}

}  // namespace masw
