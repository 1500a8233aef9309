#include "masw/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace masw {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

namespace {

constexpr std::string_view kModelFormat = "masw-model";
constexpr int kModelVersion = 1;

std::string describe_location(const std::string& source, std::size_t line, const std::string& field) {
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    if (!field.empty()) out += " [" + field + "]";
    return out;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset; ++i)
        if (text[i] == '\n') ++line;
    return line;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw InputError("failed writing '" + path.string() + "'");
}

Json parse_json(std::string_view text, const std::string& source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(source, line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), "", e.what());
    }
}

const Json& require_field(const Json& object, const char* key, const std::string& source) {
    const auto it = object.find(key);
    if (it == object.end()) throw ParseError(source, 0, key, "missing field");
    return *it;
}

double number_field(const Json& object, const char* key, const std::string& source) {
    const Json& value = require_field(object, key, source);
    if (!value.is_number()) throw ParseError(source, 0, key, "expected a number");
    return value.get<double>();
}

std::vector<double> number_array(const Json& object, const char* key, const std::string& source) {
    const Json& value = require_field(object, key, source);
    if (!value.is_array()) throw ParseError(source, 0, key, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number())
            throw ParseError(source, 0, std::string(key) + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(value[i].get<double>());
    }
    return out;
}

LayeredEarthModel model_from_json(const Json& j, const std::string& source) {
    if (!j.is_object()) throw ParseError(source, 0, "", "model must be a JSON object");
    if (const auto it = j.find("format"); it != j.end() && (!it->is_string() || it->get<std::string>() != kModelFormat))
        throw ParseError(source, 0, "format", "expected \"masw-model\"");
    if (const auto it = j.find("version"); it != j.end() && (!it->is_number_integer() || it->get<int>() != kModelVersion))
        throw ParseError(source, 0, "version", "unsupported model version");

    const Json& n = require_field(j, "n_layers", source);
    if (!n.is_number_integer() || n.get<long long>() < 0)
        throw ParseError(source, 0, "n_layers", "expected a nonnegative integer");

    LayeredEarthModel model;
    model.n_layers = n.get<std::size_t>();
    model.thickness = number_array(j, "thickness", source);
    model.density = number_array(j, "density", source);
    model.vp = number_array(j, "vp", source);
    model.vs = number_array(j, "vs", source);
    return model;
}

OrderedJson model_to_json(const LayeredEarthModel& model) {
    OrderedJson j;
    j["format"] = kModelFormat;
    j["version"] = kModelVersion;
    j["units"] = {{"thickness", "m"}, {"density", "kg/m^3"}, {"vp", "m/s"}, {"vs", "m/s"}};
    j["n_layers"] = model.n_layers;
    j["thickness"] = model.thickness;
    j["density"] = model.density;
    j["vp"] = model.vp;
    j["vs"] = model.vs;
    return j;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text, const std::string& source, std::size_t line, const char* field) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError(source, line, field, "expected a number, got '" + std::string(text) + "'");
    return value;
}

std::pair<std::string_view, std::size_t> split_index(const std::string& name) {
    const auto open = name.find('[');
    if (open == std::string::npos || name.back() != ']' || open + 2 > name.size() - 1)
        throw InputError("grid parameter '" + name + "' must look like vs[0]");
    std::size_t index = 0;
    const char* first = name.data() + open + 1;
    const char* last = name.data() + name.size() - 1;
    const auto [ptr, ec] = std::from_chars(first, last, index);
    if (ec != std::errc{} || ptr != last) throw InputError("grid parameter '" + name + "' has a bad index");
    return {std::string_view(name).substr(0, open), index};
}

double& parameter_slot(LayeredEarthModel& model, const std::string& name) {
    const auto [array, index] = split_index(name);
    std::vector<double>* target = nullptr;
    if (array == "thickness") target = &model.thickness;
    else if (array == "density") target = &model.density;
    else if (array == "vp") target = &model.vp;
    else if (array == "vs") target = &model.vs;
    else throw InputError("grid parameter '" + name + "' names an unknown property");
    if (index >= target->size()) throw InputError("grid parameter '" + name + "' is out of range");
    return (*target)[index];
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, std::string field, const std::string& detail)
    : InputError(describe_location(source, line, field) + ": " + detail),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

std::string format_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string format_model(const LayeredEarthModel& model) { return model_to_json(model).dump(2) + "\n"; }

LayeredEarthModel parse_model(std::string_view text, const std::string& source) {
    LayeredEarthModel model = model_from_json(parse_json(text, source), source);
    require_valid_model(model);
    return model;
}

void write_model(const std::filesystem::path& path, const LayeredEarthModel& model) {
    write_file(path, format_model(model));
}

LayeredEarthModel read_model(const std::filesystem::path& path) { return parse_model(read_file(path), path.string()); }

std::string format_curve(const DispersionCurve& curve, const std::optional<std::string>& footer) {
    std::string out(kCurveHeader);
    out += '\n';
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out += format_double(curve.wavelengths[i]);
        out += ',';
        out += format_double(curve.velocities[i]);
        out += '\n';
    }
    if (footer) out += "# " + *footer + "\n";
    return out;
}

DispersionCurve parse_curve(std::string_view text, const std::string& source) {
    DispersionCurve curve;
    bool seen_header = false;
    std::size_t header_line = 0;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        const std::string_view raw = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (!seen_header) {
            if (line != kCurveHeader)
                throw ParseError(source, line_no, "header", "expected '" + std::string(kCurveHeader) + "'");
            seen_header = true;
            header_line = line_no;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
            throw ParseError(source, line_no, "", "expected two comma-separated columns");
        curve.wavelengths.push_back(parse_number(line.substr(0, comma), source, line_no, "wavelength"));
        curve.velocities.push_back(parse_number(line.substr(comma + 1), source, line_no, "velocity"));
    }
    if (!seen_header) throw ParseError(source, 0, "header", "missing header line");
    if (curve.size() == 0) throw ParseError(source, header_line, "", "curve has no samples");
    validate_curve(curve);
    return curve;
}

void write_curve(const std::filesystem::path& path, const DispersionCurve& curve,
                 const std::optional<std::string>& footer) {
    write_file(path, format_curve(curve, footer));
}

DispersionCurve read_curve(const std::filesystem::path& path) { return parse_curve(read_file(path), path.string()); }

std::vector<double> ParameterRange::values() const {
    if (!std::isfinite(min) || !std::isfinite(max) || max < min)
        throw InputError("parameter range needs finite min <= max");
    if (max == min) return {min};
    if (!(step > 0.0)) throw InputError("parameter range needs step > 0 when min < max");
    const auto last = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9));
    std::vector<double> out(last + 1);
    for (std::size_t i = 0; i <= last; ++i) out[i] = min + static_cast<double>(i) * step;
    return out;
}

std::vector<LayeredEarthModel> expand_grid(const CandidateGrid& grid) {
    std::vector<std::string> names;
    std::vector<std::vector<double>> values;
    for (const auto& [name, range] : grid.parameters) {
        LayeredEarthModel probe = grid.base;
        parameter_slot(probe, name);  // rejects unknown names early
        names.push_back(name);
        values.push_back(range.values());
    }

    std::vector<LayeredEarthModel> out;
    std::vector<std::size_t> odometer(names.size(), 0);
    while (true) {
        LayeredEarthModel model = grid.base;
        for (std::size_t p = 0; p < names.size(); ++p) parameter_slot(model, names[p]) = values[p][odometer[p]];
        out.push_back(std::move(model));

        // Last parameter turns fastest.
        std::size_t p = names.size();
        while (p > 0) {
            --p;
            if (++odometer[p] < values[p].size()) break;
            odometer[p] = 0;
            if (p == 0) return out;
        }
        if (names.empty()) return out;
    }
}

std::vector<LayeredEarthModel> InversionSpec::expand_candidates() const {
    std::vector<LayeredEarthModel> models = grid ? expand_grid(*grid) : candidates;
    if (models.empty()) throw InputError("inversion spec has no candidate models");
    for (std::size_t i = 0; i < models.size(); ++i) {
        const auto errors = validate_model(models[i]);
        if (!errors.empty()) {
            std::vector<std::string> tagged;
            for (const auto& e : errors) tagged.push_back("candidate " + std::to_string(i) + ": " + e);
            throw ValidationError(std::move(tagged));
        }
    }
    return models;
}

InversionSpec parse_inversion_spec(std::string_view text, const std::filesystem::path& base_dir,
                                   const std::string& source) {
    const Json j = parse_json(text, source);
    if (!j.is_object()) throw ParseError(source, 0, "", "inversion spec must be a JSON object");

    InversionSpec spec;
    const Json& curve = require_field(j, "experimental_curve", source);
    if (!curve.is_string()) throw ParseError(source, 0, "experimental_curve", "expected a path string");
    spec.experimental_curve = std::filesystem::path(curve.get<std::string>());
    if (spec.experimental_curve.is_relative()) spec.experimental_curve = base_dir / spec.experimental_curve;

    const Json& sweep = require_field(j, "sweep", source);
    if (!sweep.is_object()) throw ParseError(source, 0, "sweep", "expected an object");
    spec.sweep = {number_field(sweep, "v_min", source), number_field(sweep, "v_max", source),
                  number_field(sweep, "v_step", source)};

    const bool has_list = j.contains("candidates");
    const bool has_grid = j.contains("grid");
    if (has_list == has_grid) throw ParseError(source, 0, "candidates", "give exactly one of 'candidates' or 'grid'");
    if (has_list) {
        const Json& list = j.at("candidates");
        if (!list.is_array()) throw ParseError(source, 0, "candidates", "expected an array of models");
        for (std::size_t i = 0; i < list.size(); ++i)
            spec.candidates.push_back(model_from_json(list[i], source + " candidates[" + std::to_string(i) + "]"));
    } else {
        const Json& g = j.at("grid");
        if (!g.is_object()) throw ParseError(source, 0, "grid", "expected an object");
        CandidateGrid grid;
        grid.base = model_from_json(require_field(g, "base", source), source + " grid.base");
        const Json& params = require_field(g, "parameters", source);
        if (!params.is_object()) throw ParseError(source, 0, "parameters", "expected an object");
        for (const auto& [name, range] : params.items()) {
            if (!range.is_object()) throw ParseError(source, 0, name, "expected {min, max, step}");
            ParameterRange r;
            r.min = number_field(range, "min", source);
            r.max = number_field(range, "max", source);
            r.step = range.contains("step") ? number_field(range, "step", source) : 0.0;
            grid.parameters.emplace(name, r);
        }
        spec.grid = std::move(grid);
    }

    if (const auto it = j.find("engine"); it != j.end()) {
        const Json& e = *it;
        if (!e.is_object()) throw ParseError(source, 0, "engine", "expected an object");
        auto unsigned_field = [&](const char* key) -> std::uint64_t {
            const Json& v = e.at(key);
            if (!v.is_number_integer() || v.get<long long>() < 1)
                throw ParseError(source, 0, key, "expected a positive integer");
            return v.get<std::uint64_t>();
        };
        try {
            if (e.contains("kind")) spec.engine.kind = parse_engine_kind(e.at("kind").get<std::string>());
            if (e.contains("strategy"))
                spec.engine.strategy = parse_partition_strategy(e.at("strategy").get<std::string>());
        } catch (const Json::type_error&) {
            throw ParseError(source, 0, "engine", "kind and strategy must be strings");
        }
        if (e.contains("workers")) spec.engine.workers = unsigned_field("workers");
        if (e.contains("block_size")) spec.engine.block_size = unsigned_field("block_size");
        if (e.contains("memory_budget")) spec.engine.memory_budget = unsigned_field("memory_budget");
    }
    return spec;
}

InversionSpec read_inversion_spec(const std::filesystem::path& path) {
    return parse_inversion_spec(read_file(path), path.parent_path(), path.string());
}

}  // namespace masw
