#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "masw/engine.hpp"
#include "masw/model.hpp"

namespace masw {

/// Malformed file content. `line` is 1-based when known, 0 otherwise;
/// `field` names the offending key or column when one applies.
class ParseError : public InputError {
public:
    ParseError(std::string source, std::size_t line, std::string field, const std::string& detail);

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::string source_;
    std::size_t line_;
    std::string field_;
};

// Models: JSON object with format/version/units header fields and the four
// property arrays. Numbers round-trip exactly.
std::string format_model(const LayeredEarthModel& model);
LayeredEarthModel parse_model(std::string_view text, const std::string& source = "<model>");
void write_model(const std::filesystem::path& path, const LayeredEarthModel& model);
LayeredEarthModel read_model(const std::filesystem::path& path);

// Curves: "wavelength_m,velocity_m_per_s" header, then one row per sample
// with 17 significant digits. '#' lines are comments.
inline constexpr std::string_view kCurveHeader = "wavelength_m,velocity_m_per_s";

std::string format_curve(const DispersionCurve& curve, const std::optional<std::string>& footer = std::nullopt);
DispersionCurve parse_curve(std::string_view text, const std::string& source = "<curve>");
void write_curve(const std::filesystem::path& path, const DispersionCurve& curve,
                 const std::optional<std::string>& footer = std::nullopt);
DispersionCurve read_curve(const std::filesystem::path& path);

/// Canonical shortest-exact rendering used in every text output: 17
/// significant digits, no trailing zeros.
std::string format_double(double value);

/// One swept parameter, addressed as "<array>[<index>]", e.g. "vs[0]".
struct ParameterRange {
    double min = 0.0;
    double max = 0.0;
    double step = 0.0;

    std::vector<double> values() const;
};

struct CandidateGrid {
    LayeredEarthModel base;
    std::map<std::string, ParameterRange> parameters;  // ordered by name
};

struct InversionSpec {
    std::filesystem::path experimental_curve;  // resolved against the spec's directory
    VelocitySweep sweep;
    std::vector<LayeredEarthModel> candidates;  // explicit list, if given
    std::optional<CandidateGrid> grid;          // otherwise a grid to expand
    EngineConfig engine;

    /// Explicit candidates or the expanded grid, validated.
    std::vector<LayeredEarthModel> expand_candidates() const;
};

/// Cartesian product over the parameters, ordered lexicographically by
/// parameter name; the first name varies slowest.
std::vector<LayeredEarthModel> expand_grid(const CandidateGrid& grid);

InversionSpec parse_inversion_spec(std::string_view text, const std::filesystem::path& base_dir,
                                   const std::string& source = "<spec>");
InversionSpec read_inversion_spec(const std::filesystem::path& path);

}  // namespace masw
