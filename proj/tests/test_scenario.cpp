#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wmsim/scenario.hpp"

using namespace wmsim;

namespace {

// 1D qutrit scenario with the pure higher-order fixture.
std::string scenario_text(double g = 0.1, const char* extra_readout = "") {
    std::ostringstream os;
    os << R"({
  "system": {
    "dim": 3,
    "a": [[[0,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]], [[0,0],[0,0],[2,0]]],
    "b": [[[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0]]],
    "pre": [[0.57735026918962573,0],[0.57735026918962573,0],[0.57735026918962573,0]],
    "post": [[0.7662610281769211,0],[-0.57469577113269077,0],[0.28734788556634538,0]]
  },
  "pointer": {"dims": 1, "l": 0, "sigma": 1.0, "grid_points": 256, "grid_extent": 12.0},
  "coupling": {"kind": "translation_xy", "g": )"
       << g << R"(},
  "readouts": [
    {"meter": "X2", "method": "exact"},
    {"meter": "X2", "method": "closed_form", "normalize_closed_form": false})"
       << extra_readout << R"(
  ]
})";
    return os.str();
}

}  // namespace

TEST_CASE("parse and run a scenario") {
    const Scenario sc = parse_scenario(scenario_text());
    CHECK(sc.a.dim() == 3);
    CHECK(sc.pointer.grid_points == 256);
    CHECK(sc.readouts.size() == 2);

    const ResultRecord rec = run_scenario(sc);
    REQUIRE(rec.readings.size() == 2);
    CHECK(rec.readings[0].meter == "X2");
    CHECK(std::abs(rec.weak_values.a_w) < 1e-12);          // A_w = 0 fixture
    CHECK(std::abs(rec.weak_values.a2_w - Complex(1.2)) < 1e-12);
    // closed form row carries |delta vs exact|
    REQUIRE(rec.readings[1].abs_delta_vs_exact.has_value());
    CHECK(*rec.readings[1].abs_delta_vs_exact < 1e-4);
}

TEST_CASE("runs are deterministic") {
    const Scenario sc = parse_scenario(scenario_text());
    const std::string once = to_json(run_scenario(sc));
    const std::string twice = to_json(run_scenario(sc));
    CHECK(once == twice);
}

TEST_CASE("result record round trips bit for bit") {
    const Scenario sc = parse_scenario(scenario_text());
    const ResultRecord rec = run_scenario(sc);
    const ResultRecord back = result_from_json(to_json(rec));
    REQUIRE(back.readings.size() == rec.readings.size());
    for (size_t i = 0; i < rec.readings.size(); ++i) {
        CHECK(back.readings[i].value == rec.readings[i].value);
        CHECK(back.readings[i].w == rec.readings[i].w);
    }
    CHECK(back.weak_values.a2_w == rec.weak_values.a2_w);
    // serialized twice, identical text
    CHECK(to_json(back) == to_json(rec));
}

TEST_CASE("parse errors carry the field path") {
    // non-Hermitian A
    std::string bad = scenario_text();
    const auto pos = bad.find("[[0,0],[1,0],[0,0]]");
    bad.replace(pos, 7, "[[9,1],");
    try {
        parse_scenario(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("system.a") != std::string::npos);
    }

    // non-unit pre
    std::string nonunit = scenario_text();
    const auto p2 = nonunit.find("0.57735026918962573");
    nonunit.replace(p2, 19, "0.9");
    try {
        parse_scenario(nonunit);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("pre") != std::string::npos);
    }

    // unknown meter name
    std::string badmeter = scenario_text();
    const auto p3 = badmeter.find("\"X2\", \"method\": \"exact\"");
    badmeter.replace(p3, 4, "\"Q7\"");
    try {
        parse_scenario(badmeter);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("readouts[0].meter") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_scenario("{ not json"), ParseError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/path.json"), IoError);
}

TEST_CASE("custom meters parse as 4-power arrays") {
    std::string text = scenario_text(0.1, R"(,
    {"meter": [0,0,2,0], "method": "exact"})");
    const Scenario sc = parse_scenario(text);
    REQUIRE(sc.readouts.size() == 3);
    CHECK(sc.readouts[2].meter.kind == MeterObservable::Kind::Custom);
    const ResultRecord rec = run_scenario(sc);
    // <P^2> stays near 1/(4 sigma^2) at small coupling
    CHECK(rec.readings[2].value == doctest::Approx(0.25).epsilon(5e-2));
}

TEST_CASE("scan over g emits deltas and slopes") {
    const Scenario sc = parse_scenario(scenario_text(0.1, R"(,
    {"meter": "X2", "method": "perturbative"})"));
    const ScanResult scan =
        scan_scenario(sc, "g", {0.1, 0.05, 0.025, 0.0125});
    REQUIRE(scan.rows.size() == 4);

    // per-row deltas present for the non-exact methods
    for (const auto& row : scan.rows)
        for (const auto& r : row.readings)
            if (r.method != Method::Exact) CHECK(r.abs_delta_vs_exact.has_value());

    // perturbative-vs-exact slope is the truncation order
    bool found = false;
    for (const auto& s : scan.slopes)
        if (s.method == Method::Perturbative) {
            found = true;
            CHECK(s.loglog_slope >= 2.7);
        }
    CHECK(found);

    const std::string csv = to_csv(scan);
    CHECK(csv.find("param_value,meter,method,value,w,abs_delta_vs_exact") == 0);
    // 4 rows x 3 readings + header
    int lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 13);
}

TEST_CASE("l-scan of the closed-form joint meter is affine in l") {
    const std::string text = R"({
  "system": {
    "dim": 3,
    "a": [[[0,0],[0,0],[0,0]], [[0,0],[1,0],[0,0]], [[0,0],[0,0],[2,0]]],
    "b": [[[0,0],[0,0],[0,0]], [[0,0],[2,0],[0,0]], [[0,0],[0,0],[1,0]]],
    "pre": [[0.57735026918962573,0],[0.57735026918962573,0],[0.57735026918962573,0]],
    "post": [[0.17491154476923795,0.26766372654079529],
             [0.78867787077762508,-0.3568849687210604],
             [0.37472921715711344,0.089221242180265101]]
  },
  "pointer": {"dims": 2, "l": 0, "sigma": 1.0, "grid_points": 128, "grid_extent": 14.0},
  "coupling": {"kind": "translation_xy", "g": 0.05},
  "readouts": [{"meter": "XY", "method": "closed_form", "normalize_closed_form": false}]
})";
    const Scenario sc = parse_scenario(text);
    const ScanResult scan = scan_scenario(sc, "l", {0, 1, 2, 3});
    REQUIRE(scan.rows.size() == 4);
    std::vector<double> v;
    for (const auto& row : scan.rows) v.push_back(row.readings[0].value);
    for (int k = 0; k + 2 < 4; ++k)
        CHECK(std::abs(v[k] - 2.0 * v[k + 1] + v[k + 2]) < 1e-12);
}

TEST_CASE("scan validates its inputs") {
    const Scenario sc = parse_scenario(scenario_text());
    CHECK_THROWS_AS(scan_scenario(sc, "g", {}), ParseError);
    CHECK_THROWS_AS(scan_scenario(sc, "g_a", {0.1}), ParseError);
    CHECK_THROWS_AS(scan_scenario(sc, "l", {0.5}), ParseError);
    CHECK_THROWS_AS(scan_scenario(sc, "nope", {0.1}), ParseError);
}

TEST_CASE("scan rows keep input order under capped concurrency") {
    setenv("WMSIM_MAX_THREADS", "1", 1);
    const Scenario sc = parse_scenario(scenario_text());
    const std::vector<double> sigmas{1.0, 0.5, 1.5};
    const ScanResult scan = scan_scenario(sc, "sigma", sigmas);
    unsetenv("WMSIM_MAX_THREADS");
    REQUIRE(scan.rows.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        // X2 exact at g -> 0.1 stays near sigma^2
        const double expect = sigmas[i] * sigmas[i];
        CHECK(scan.rows[i].readings[0].value ==
              doctest::Approx(expect).epsilon(5e-2));
    }
}

TEST_CASE("csv run output shape") {
    const Scenario sc = parse_scenario(scenario_text());
    const std::string csv = to_csv(run_scenario(sc));
    CHECK(csv.find("meter,method,value,w,abs_delta_vs_exact") == 0);
}
