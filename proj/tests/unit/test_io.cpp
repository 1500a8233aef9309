#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "masw/datasets.hpp"
#include "masw/dispersion.hpp"
#include "masw/io.hpp"

namespace masw {
namespace {

namespace fs = std::filesystem;

TEST(ModelIo, RoundTripIsExact) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.1, 1000.0);
    for (int t = 0; t < 50; ++t) {
        LayeredEarthModel m;
        m.n_layers = 1 + rng() % 8;
        for (std::size_t i = 0; i <= m.n_layers; ++i) {
            if (i < m.n_layers) m.thickness.push_back(u(rng));
            m.density.push_back(u(rng));
            m.vs.push_back(u(rng));
            m.vp.push_back(m.vs.back() * (1.0 + u(rng)));
        }
        EXPECT_EQ(parse_model(format_model(m)), m);
    }
}

TEST(ModelIo, ShippedReferenceMatchesEmbedded) {
    EXPECT_EQ(read_model(fs::path(MASW_SOURCE_DIR) / "data" / "reference_model.json"), reference_model());
}

TEST(ModelIo, MissingFieldNamesIt) {
    try {
        parse_model(R"({"n_layers": 1, "thickness": [1], "density": [1, 2], "vp": [3, 4]})");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "vs");
    }
}

TEST(ModelIo, NonNumericEntryNamesIndex) {
    try {
        parse_model(R"({"n_layers": 1, "thickness": [1], "density": [1, 2], "vp": [3, "x"], "vs": [1, 2]})");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "vp[1]");
    }
}

TEST(ModelIo, SyntaxErrorReportsLine) {
    try {
        parse_model("{\n  \"n_layers\": 1,\n  \"thickness\": [1,,]\n}");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(ModelIo, LengthMismatchIsValidationError) {
    const auto text = R"({"n_layers": 2, "thickness": [1], "density": [1, 2, 3], "vp": [3, 4, 5], "vs": [1, 2, 3]})";
    EXPECT_THROW(parse_model(text), ValidationError);
}

TEST(ModelIo, WrongFormatRejected) {
    EXPECT_THROW(parse_model(R"({"format": "other", "n_layers": 0, "thickness": [], "density": [1],
                               "vp": [2], "vs": [1]})"),
                 ParseError);
}

TEST(CurveIo, RoundTripIsExact) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(1e-3, 1e4);
    DispersionCurve c;
    for (int i = 0; i < 200; ++i) {
        c.wavelengths.push_back(u(rng));
        c.velocities.push_back(u(rng));
    }
    const auto parsed = parse_curve(format_curve(c, std::string("elapsed_seconds=1")));
    EXPECT_EQ(parsed.wavelengths, c.wavelengths);
    EXPECT_EQ(parsed.velocities, c.velocities);
}

TEST(CurveIo, VariableDatasetRoundTrips) {
    const auto c = gen_variable(40);
    const auto parsed = parse_curve(format_curve(c));
    EXPECT_EQ(parsed.wavelengths, c.wavelengths);
    EXPECT_EQ(parsed.velocities, c.velocities);
}

TEST(CurveIo, Format) {
    EXPECT_EQ(format_curve({{1.5, 2.0}, {100.0, 0.1}}), "wavelength_m,velocity_m_per_s\n1.5,100\n2,0.10000000000000001\n");
    EXPECT_EQ(format_double(238.0), "238");
}

TEST(CurveIo, BadNumberReportsLine) {
    try {
        parse_curve("wavelength_m,velocity_m_per_s\n1,100\n2,abc\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(CurveIo, WrongHeader) { EXPECT_THROW(parse_curve("lambda,c\n1,2\n"), ParseError); }

TEST(CurveIo, HeaderOnly) {
    try {
        parse_curve("wavelength_m,velocity_m_per_s\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("no samples"), std::string::npos);
    }
}

TEST(CurveIo, NegativeWavelengthIsValidationError) {
    EXPECT_THROW(parse_curve("wavelength_m,velocity_m_per_s\n-1,100\n"), ValidationError);
}

TEST(CurveIo, CommentsIgnored) {
    const auto c = parse_curve("# produced elsewhere\nwavelength_m,velocity_m_per_s\n1,100\n# footer\n");
    EXPECT_EQ(c.size(), 1u);
}

TEST(CurveIo, FileRoundTrip) {
    const auto path = fs::temp_directory_path() / "masw_test_io_curve.csv";
    const auto c = gen_uniform(5);
    write_curve(path, c);
    const auto back = read_curve(path);
    EXPECT_EQ(back.wavelengths, c.wavelengths);
    EXPECT_EQ(back.velocities, c.velocities);
    fs::remove(path);
    EXPECT_THROW(read_curve(path), InputError);
}

TEST(Datasets, UniformShapes) {
    const auto big = gen_uniform(1000);
    EXPECT_EQ(big.size(), 1000u);
    for (std::size_t i = 0; i < big.size(); ++i) {
        EXPECT_EQ(big.wavelengths[i], 31.492);
        EXPECT_EQ(big.velocities[i], 238.0);
    }
    const auto one = gen_uniform(1, 72.0);
    EXPECT_EQ(one.wavelengths, (std::vector<double>{1.321}));
    EXPECT_EQ(one.velocities, (std::vector<double>{72.0}));
    EXPECT_THROW(gen_uniform(0), InputError);
    EXPECT_THROW(gen_uniform(10, 100.0), InputError);
}

TEST(Datasets, TierWavelengthsReproduceTierVelocities) {
    std::vector<double> wavelengths;
    std::vector<double> tiers;
    for (const auto& t : uniform_tiers()) {
        wavelengths.push_back(t.wavelength);
        tiers.push_back(t.velocity);
    }
    EXPECT_EQ(theoretical_dispersion_curve(reference_model(), wavelengths, reference_sweep()).velocities, tiers);
}

TEST(Datasets, VariableShape) {
    const auto c = gen_variable(40);
    ASSERT_EQ(c.size(), 40u);
    EXPECT_EQ(c.wavelengths.front(), 60.0);
    EXPECT_DOUBLE_EQ(c.wavelengths.back(), 1.0);
    for (std::size_t i = 1; i < c.size(); ++i) {
        EXPECT_LT(c.wavelengths[i], c.wavelengths[i - 1]);
        EXPECT_LE(c.velocities[i], c.velocities[i - 1]);
    }
    EXPECT_EQ(gen_variable(2).size(), 2u);
    EXPECT_THROW(gen_variable(0), InputError);
}

TEST(Grid, ExpansionOrder) {
    CandidateGrid g;
    g.base = reference_model();
    g.parameters["vs[0]"] = {70.0, 80.0, 5.0};
    g.parameters["thickness[1]"] = {1.0, 2.0, 1.0};
    const auto models = expand_grid(g);
    ASSERT_EQ(models.size(), 6u);
    // "thickness[1]" sorts first, so it varies slowest.
    const std::vector<std::pair<double, double>> expected{{1, 70}, {1, 75}, {1, 80}, {2, 70}, {2, 75}, {2, 80}};
    for (std::size_t i = 0; i < 6; ++i) {
        EXPECT_EQ(models[i].thickness[1], expected[i].first);
        EXPECT_EQ(models[i].vs[0], expected[i].second);
        EXPECT_EQ(models[i].vp, g.base.vp);
    }
}

TEST(Grid, RejectsUnknownParameter) {
    CandidateGrid g;
    g.base = reference_model();
    g.parameters["poisson[0]"] = {0.1, 0.2, 0.1};
    EXPECT_THROW(expand_grid(g), InputError);
    g.parameters = {{"vs[9]", {1.0, 2.0, 1.0}}};
    EXPECT_THROW(expand_grid(g), InputError);
}

TEST(InversionSpecIo, ParsesGridSpec) {
    const auto spec = parse_inversion_spec(R"({
        "experimental_curve": "curve.csv",
        "sweep": {"v_min": 50, "v_max": 550, "v_step": 0.5},
        "grid": {"base": )" + format_model(reference_model()) + R"(,
                 "parameters": {"vs[0]": {"min": 70, "max": 80, "step": 5}}},
        "engine": {"kind": "parallel", "workers": 3, "strategy": "contiguous"}
    })",
                                           "/tmp/specs");
    EXPECT_EQ(spec.experimental_curve, fs::path("/tmp/specs/curve.csv"));
    EXPECT_EQ(spec.sweep.v_step, 0.5);
    EXPECT_EQ(spec.expand_candidates().size(), 3u);
    EXPECT_EQ(spec.engine.kind, EngineKind::Parallel);
    EXPECT_EQ(spec.engine.workers, 3u);
    EXPECT_EQ(spec.engine.strategy, PartitionStrategy::Contiguous);
}

TEST(InversionSpecIo, RequiresExactlyOneCandidateSource) {
    EXPECT_THROW(parse_inversion_spec(R"({"experimental_curve": "c.csv",
        "sweep": {"v_min": 50, "v_max": 550, "v_step": 0.5}})",
                                      "."),
                 ParseError);
}

TEST(InversionSpecIo, InvalidCandidateRejected) {
    auto bad = reference_model();
    bad.vp[2] = 1.0;
    const auto spec = parse_inversion_spec(R"({"experimental_curve": "/abs/c.csv",
        "sweep": {"v_min": 50, "v_max": 550, "v_step": 0.5},
        "candidates": [)" + format_model(reference_model()) + "," + format_model(bad) + "]}",
                                           ".");
    EXPECT_EQ(spec.experimental_curve, fs::path("/abs/c.csv"));
    EXPECT_THROW(spec.expand_candidates(), ValidationError);
}

}  // namespace
}  // namespace masw
