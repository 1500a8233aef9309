#include "masw/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "masw/bench.hpp"
#include "masw/datasets.hpp"
#include "masw/engine.hpp"
#include "masw/inversion.hpp"
#include "masw/io.hpp"

namespace masw::cli {

namespace {

struct EngineFlags {
    std::string engine = "serial";
    std::size_t workers = 1;
    std::string strategy = "modular";
    std::size_t block_size = kDefaultBlockSize;
    std::uint64_t memory_budget = kDefaultMemoryBudget;

    CLI::Option* engine_opt = nullptr;
    CLI::Option* workers_opt = nullptr;
    CLI::Option* strategy_opt = nullptr;
    CLI::Option* block_size_opt = nullptr;
    CLI::Option* budget_opt = nullptr;

    void attach(CLI::App& app) {
        engine_opt = app.add_option("--engine", engine, "serial, parallel or batched")
                         ->check(CLI::IsMember({"serial", "parallel", "batched"}));
        workers_opt = app.add_option("--workers", workers, "worker count")->check(CLI::PositiveNumber);
        strategy_opt = app.add_option("--strategy", strategy, "wavelength partition for the parallel engine")
                           ->check(CLI::IsMember({"contiguous", "modular"}));
        block_size_opt = app.add_option("--block-size", block_size, "velocity block size for the batched engine")
                             ->check(CLI::PositiveNumber);
        budget_opt = app.add_option("--memory-budget", memory_budget, "batched engine memory budget in bytes")
                         ->check(CLI::PositiveNumber);
    }

    // Flags given on the command line override `base`.
    EngineConfig apply(EngineConfig base) const {
        if (engine_opt->count()) base.kind = parse_engine_kind(engine);
        if (workers_opt->count()) base.workers = workers;
        if (strategy_opt->count()) base.strategy = parse_partition_strategy(strategy);
        if (block_size_opt->count()) base.block_size = block_size;
        if (budget_opt->count()) base.memory_budget = memory_budget;
        return base;
    }
};

struct SweepFlags {
    VelocitySweep sweep = reference_sweep();

    void attach(CLI::App& app) {
        app.add_option("--vmin", sweep.v_min, "lowest test velocity [m/s]");
        app.add_option("--vmax", sweep.v_max, "highest test velocity [m/s]");
        app.add_option("--vstep", sweep.v_step, "test velocity step [m/s]");
    }
};

std::string elapsed_footer(double seconds, const EngineConfig& engine) {
    std::ostringstream os;
    os << "elapsed_seconds=" << format_double(seconds) << " engine=" << engine.describe();
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot open '" + path + "' for writing");
    f << text;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("bad number '" + item + "' in list");
        }
    }
    if (out.empty()) throw InputError("empty list");
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rayleigh-wave dispersion curves and misfit inversion for layered models"};
    app.name("masw");
    app.require_subcommand(1);
    bool deterministic = false;

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "compute a theoretical dispersion curve");
    std::string model_path;
    std::string wavelengths_text;
    std::string curve_path;
    std::string out_path;
    EngineFlags curve_engine;
    SweepFlags curve_sweep;
    curve_cmd->add_option("--model", model_path, "model file (JSON)")->required();
    auto* wl_opt = curve_cmd->add_option("--wavelengths", wavelengths_text, "comma-separated wavelengths [m]");
    auto* cv_opt = curve_cmd->add_option("--curve", curve_path, "experimental curve; its wavelengths are used and "
                                                                "the misfit is reported");
    wl_opt->excludes(cv_opt);
    curve_cmd->add_option("--out", out_path, "output curve file")->required();
    curve_cmd->add_flag("--deterministic", deterministic, "omit the timing footer");
    curve_engine.attach(*curve_cmd);
    curve_sweep.attach(*curve_cmd);

    // invert
    auto* invert_cmd = app.add_subcommand("invert", "evaluate every candidate model of an inversion spec");
    std::string spec_path;
    std::string report_path;
    EngineFlags invert_engine;
    invert_cmd->add_option("spec", spec_path, "inversion spec (JSON)")->required();
    invert_cmd->add_option("--report", report_path, "write the report as CSV");
    invert_cmd->add_flag("--deterministic", deterministic, "omit elapsed times");
    invert_engine.attach(*invert_cmd);

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a benchmark dataset");
    std::string dataset = "variable";
    long long length = -1;
    double tier = kDefaultUniformTier;
    std::string gen_out;
    std::string model_out;
    gen_cmd->add_option("--dataset", dataset, "uniform or variable")->check(CLI::IsMember({"uniform", "variable"}));
    gen_cmd->add_option("--length", length, "number of curve entries");
    gen_cmd->add_option("--tier", tier, "uniform target velocity: 72, 238 or 256");
    gen_cmd->add_option("--out", gen_out, "output curve file")->required();
    gen_cmd->add_option("--model-out", model_out, "also write the reference model here");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "run a scaling benchmark and print CSV");
    std::string mode;
    std::string bench_workers = "1,2,4,8";
    std::string bench_dataset = "uniform";
    long long bench_length = -1;
    long long base_length = 1000;
    std::string bench_strategy = "modular";
    std::size_t reps = 5;
    std::string orders = "4,14,30,62";
    std::size_t bench_block = kDefaultBlockSize;
    std::string bench_out;
    bench_cmd->add_option("mode", mode, "strong, weak, engines or elimination")
        ->required()
        ->check(CLI::IsMember({"strong", "weak", "engines", "elimination"}));
    auto* bw_opt = bench_cmd->add_option("--workers", bench_workers, "comma-separated worker counts");
    bench_cmd->add_option("--dataset", bench_dataset, "uniform or variable")
        ->check(CLI::IsMember({"uniform", "variable"}));
    bench_cmd->add_option("--length", bench_length, "curve length (default 1000 uniform, 40 variable)");
    bench_cmd->add_option("--base-length", base_length, "weak scaling length per worker")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--strategy", bench_strategy, "partition strategy")
        ->check(CLI::IsMember({"contiguous", "modular"}));
    bench_cmd->add_option("--reps", reps, "timed repetitions (>= 3)")->check(CLI::Range(3, 1000));
    bench_cmd->add_option("--orders", orders, "matrix orders for the elimination benchmark");
    bench_cmd->add_option("--block-size", bench_block, "batched block size")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--out", bench_out, "also write the CSV here");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "masw: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*curve_cmd) {
            if (!wl_opt->count() && !cv_opt->count()) throw InputError("give --wavelengths or --curve");
            const LayeredEarthModel model = read_model(model_path);
            std::optional<DispersionCurve> experimental;
            std::vector<double> wavelengths;
            if (cv_opt->count()) {
                experimental = read_curve(curve_path);
                wavelengths = experimental->wavelengths;
            } else {
                wavelengths = parse_list(wavelengths_text);
                for (double w : wavelengths)
                    if (!(w > 0.0)) throw InputError("wavelengths must be positive");
            }
            const EngineConfig engine = curve_engine.apply(EngineConfig{});
            const auto start = std::chrono::steady_clock::now();
            const VelocityTermsTable table(model, curve_sweep.sweep);
            const DispersionCurve ct = compute_curve(engine, model, wavelengths, table);
            const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

            std::optional<std::string> footer;
            if (!deterministic) footer = elapsed_footer(seconds, engine);
            write_curve(out_path, ct, footer);
            if (experimental) {
                const double m = misfit(ct.velocities, experimental->velocities);
                out << "misfit " << format_double(m) << " (" << format_double(m * 100.0) << " %)\n";
            }
            return kExitOk;
        }

        if (*invert_cmd) {
            const InversionSpec spec = read_inversion_spec(spec_path);
            const DispersionCurve experimental = read_curve(spec.experimental_curve);
            const auto candidates = spec.expand_candidates();
            const EngineConfig engine = invert_engine.apply(spec.engine);
            const InversionReport report = run_inversion(candidates, experimental, spec.sweep, engine);
            out << format_report_table(report, !deterministic);
            if (!report_path.empty()) write_text(report_path, format_report_csv(report, !deterministic));
            if (!report.best) {
                err << "masw: no candidate produced a dispersion curve\n";
                return kExitComputation;
            }
            return kExitOk;
        }

        if (*gen_cmd) {
            if (length == 0 || length < -1) throw InputError("--length must be at least 1");
            DispersionCurve curve;
            if (dataset == "uniform") {
                curve = gen_uniform(length < 0 ? 1000 : static_cast<std::size_t>(length), tier);
            } else {
                curve = gen_variable(length < 0 ? kDefaultVariableLength : static_cast<std::size_t>(length));
            }
            write_curve(gen_out, curve);
            if (!model_out.empty()) write_model(model_out, reference_model());
            out << "wrote " << curve.size() << " entries to " << gen_out << '\n';
            return kExitOk;
        }

        if (*bench_cmd) {
            BenchOptions options;
            options.reps = reps;
            const PartitionStrategy strategy = parse_partition_strategy(bench_strategy);
            std::vector<std::size_t> workers;
            for (double w : parse_list(bw_opt->count() || mode != "weak" ? bench_workers : std::string("1,2,4"))) {
                if (!(w >= 1.0) || w != static_cast<double>(static_cast<std::size_t>(w)))
                    throw InputError("worker counts must be positive integers");
                workers.push_back(static_cast<std::size_t>(w));
            }
            if (bench_length == 0 || bench_length < -1) throw InputError("--length must be at least 1");
            const std::size_t len = bench_length > 0 ? static_cast<std::size_t>(bench_length)
                                                     : (bench_dataset == "variable" ? kDefaultVariableLength : 1000);

            std::vector<BenchRecord> records;
            if (mode == "strong") {
                records = bench_strong(make_bench_dataset(bench_dataset, len), strategy, workers, options);
            } else if (mode == "weak") {
                records = bench_weak(static_cast<std::size_t>(base_length), workers, strategy, options);
            } else if (mode == "engines") {
                records = bench_engines(make_bench_dataset(bench_dataset, len), workers.back(), bench_block, options);
            } else {
                std::vector<std::size_t> order_list;
                for (double o : parse_list(orders)) {
                    if (!(o >= 1.0)) throw InputError("matrix orders must be positive");
                    order_list.push_back(static_cast<std::size_t>(o));
                }
                records = bench_elimination(order_list, options);
            }
            const std::string csv = format_bench_csv(records);
            out << csv;
            if (!bench_out.empty()) write_text(bench_out, csv);
            return kExitOk;
        }
    } catch (const NoSignChange& e) {
        err << "masw: " << e.what() << '\n';
        return kExitComputation;
    } catch (const InputError& e) {
        err << "masw: " << e.what() << '\n';
        return kExitUsage;
    } catch (const MemoryBudgetExceeded& e) {
        err << "masw: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace masw::cli
