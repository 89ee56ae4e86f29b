// Copyright 2026 qnp developers
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qnp/config.hpp"
#include "qnp/curve_io.hpp"
#include "qnp/estimate.hpp"

using namespace qnp;
namespace fs = std::filesystem;

namespace {

DecayCurve sample_curve() {
    const Rates rates = Rates::from_t2(2.1, 0.24, 1.2);
    std::vector<double> ts;
    for (int i = 0; i < 7; ++i) ts.push_back(0.32 * i / 6.0);
    auto curve = engineered_curve(Method::qec, rates, 0.5, ts);
    return add_measurement_noise(curve, 0.01, 99);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qnp_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("csv round trip is lossless") {
    const auto curve = sample_curve();
    const std::string text = curve_to_csv(curve);
    const auto back = curve_from_csv(text, Method::qec);
    REQUIRE(back.size() == curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        CHECK(back.points()[i].t == curve.points()[i].t);
        CHECK(back.points()[i].value == curve.points()[i].value);
        CHECK(back.points()[i].sigma == curve.points()[i].sigma);
    }
}

TEST_CASE("json round trip keeps points and metadata") {
    const auto curve = sample_curve();
    const auto back = curve_from_json(curve_to_json(curve));
    REQUIRE(back.size() == curve.size());
    CHECK(back.method() == Method::qec);
    for (std::size_t i = 0; i < curve.size(); ++i)
        CHECK(back.points()[i].value == curve.points()[i].value);
    CHECK(back.meta().noise_sigma == curve.meta().noise_sigma);
    CHECK(back.meta().seed == curve.meta().seed);
    REQUIRE(back.meta().c_true.has_value());
    CHECK(*back.meta().c_true == *curve.meta().c_true);
    CHECK(back.meta().gamma == curve.meta().gamma);
}

TEST_CASE("csv parser rejects malformed input") {
    CHECK_THROWS_AS(curve_from_csv("", Method::qec), ParseError);
    CHECK_THROWS_AS(curve_from_csv("nonsense\n1,2,3\n", Method::qec),
                    ParseError);
    CHECK_THROWS_AS(
        curve_from_csv("t_seconds,value,sigma\n0,1\n", Method::qec),
        ParseError);
    CHECK_THROWS_AS(
        curve_from_csv("t_seconds,value,sigma\n0,one,0\n", Method::qec),
        ParseError);
    CHECK_THROWS_AS(
        curve_from_csv("t_seconds,value,sigma\n", Method::qec), ParseError);
    // non-increasing time column violates the curve invariant
    CHECK_THROWS_AS(
        curve_from_csv("t_seconds,value,sigma\n0.2,1,0\n0.1,0.9,0\n",
                       Method::qec),
        ParseError);
}

TEST_CASE("file writer and reader match byte for byte on repeat") {
    TempDir tmp;
    const auto curve = sample_curve();
    const fs::path a = tmp.path / "a.csv";
    const fs::path b = tmp.path / "b.csv";
    write_curve_file(curve, a, CurveFormat::csv);
    write_curve_file(curve, b, CurveFormat::csv);
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(fa)), {});
    const std::string sb((std::istreambuf_iterator<char>(fb)), {});
    CHECK(sa == sb);
    CHECK(!sa.empty());

    const auto back = read_curve_file(a, Method::qec);
    CHECK(back.size() == curve.size());

    const fs::path j = tmp.path / "c.json";
    write_curve_file(curve, j, CurveFormat::json);
    const auto jback = read_curve_file(j, Method::dq);  // method from file
    CHECK(jback.method() == Method::qec);
}

TEST_CASE("fit result serialization") {
    FitResult fit;
    fit.c_hat = 0.5;
    fit.ci_low = 0.3;
    fit.ci_high = 0.7;
    fit.residual_rms = 0.01;
    fit.n_bootstrap = 500;
    fit.clamped = false;
    const std::string text = fit_result_to_json(fit, Method::qec);
    CHECK(text.find("\"c_hat\": 0.5") != std::string::npos);
    CHECK(text.find("\"method\": \"qec\"") != std::string::npos);
}

TEST_CASE("time grid parsing") {
    const TimeGrid g = parse_time_grid("0:0.32:33");
    CHECK(g.start == 0.0);
    CHECK(g.stop == 0.32);
    CHECK(g.count == 33);
    const auto ts = g.points();
    REQUIRE(ts.size() == 33);
    CHECK(ts.front() == 0.0);
    CHECK(ts.back() == doctest::Approx(0.32).epsilon(1e-15));

    CHECK_THROWS_AS(parse_time_grid("0:0.32"), ConfigError);
    CHECK_THROWS_AS(parse_time_grid("abc"), ConfigError);
    CHECK_THROWS_AS(parse_time_grid("0:0.32:33:9"), ConfigError);
}

TEST_CASE("correlation list parsing") {
    const auto cs = parse_c_list("0,0.5,1");
    CHECK(cs == std::vector<double>{0.0, 0.5, 1.0});
    CHECK_THROWS_AS(parse_c_list("0,x"), ConfigError);
}

TEST_CASE("config defaults validate and map to the acetyl chloride system") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    const Rates r = cfg.rates();
    CHECK(r.gamma1 == doctest::Approx(1.0 / 2.1));
    CHECK(r.gamma2 == doctest::Approx(1.0 / 0.24));
    CHECK(r.gamma3 == doctest::Approx(1.0 / 1.2));
    CHECK(cfg.spin_system().weak_coupling_valid());
    CHECK(cfg.c_values == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("config json parsing and overrides") {
    const std::string text = R"({
        "spin_system": {"t2_s": [1.0, 0.5, 2.0]},
        "c": 0.25,
        "t_grid": {"start": 0, "stop": 0.2, "count": 5},
        "method": "dq",
        "noise_sigma": 0.02,
        "seed": 7,
        "format": "json"
    })";
    const RunConfig cfg = RunConfig::from_json_text(text);
    CHECK(cfg.t2_s == std::vector<double>{1.0, 0.5, 2.0});
    CHECK(cfg.c_values == std::vector<double>{0.25});
    CHECK(cfg.grid.count == 5);
    CHECK(cfg.method == Method::dq);
    CHECK(cfg.noise_sigma == 0.02);
    CHECK(cfg.seed == 7);
    CHECK(cfg.format == CurveFormat::json);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config validation names the violated invariant") {
    RunConfig cfg;

    cfg.grid.count = 1;
    CHECK_THROWS_WITH_AS(cfg.validate(), "time grid count must be >= 2",
                         ConfigError);
    cfg = RunConfig{};

    cfg.c_values = {1.5};
    CHECK_THROWS_WITH_AS(cfg.validate(),
                         "correlation factors must lie in [0, 1]", ConfigError);
    cfg = RunConfig{};

    cfg.t2_s = {1.0, -2.0, 1.0};
    CHECK_THROWS_WITH_AS(cfg.validate(), "spin system: T2 must be positive",
                         ConfigError);
    cfg = RunConfig{};

    cfg.noise_sigma = -0.1;
    CHECK_THROWS_WITH_AS(cfg.validate(), "noise sigma must be >= 0",
                         ConfigError);
    cfg = RunConfig{};

    // offsets too close for the placeholder J coupling
    cfg.offsets_hz = {0.0, 100.0, 0.0};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    CHECK_THROWS_AS(RunConfig::from_json_text("{nope"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json_text(R"({"method": "bogus"})"),
                    ConfigError);
}
