#include "curvefem/scenario.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace curvefem;

namespace {
json minimal_radial_config() {
    return json::parse(R"({
        "domain": {"kind": "disk", "center": [0, 0], "radius": 2.0},
        "interface": {"kind": "circle", "params": {"center": [0, 0], "radius": 1.0}},
        "coefficient": "identity",
        "density": {"kind": "constant", "q": 1.0},
        "mesh_size": 0.05,
        "refinement_levels": 1,
        "verifications": ["jump"]
    })");
}
} // namespace

TEST_CASE("minimal radial config parses") {
    auto cfg = parse_config_json(minimal_radial_config());
    CHECK(cfg.domain.kind == Domain::Kind::Disk);
    CHECK(cfg.interface_curve->kind() == InterfaceCurve::Kind::Circle);
    CHECK(cfg.mesh_size == doctest::Approx(0.05));
    CHECK(cfg.verifications == std::vector<std::string>{"jump"});
}

TEST_CASE("config validation errors") {
    auto bad_h = minimal_radial_config();
    bad_h["mesh_size"] = -1.0;
    CHECK_THROWS_WITH_AS(parse_config_json(bad_h), "mesh_size must be positive", ConfigError);

    auto bad_meyers = minimal_radial_config();
    bad_meyers["verifications"] = {"meyers"};
    bad_meyers["refinement_levels"] = 3;
    CHECK_THROWS_AS(parse_config_json(bad_meyers), ConfigError); // needs meyers coefficient

    auto unknown = minimal_radial_config();
    unknown["typo_key"] = 1;
    try {
        parse_config_json(unknown);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("typo_key") != std::string::npos);
    }

    auto nested_unknown = minimal_radial_config();
    nested_unknown["domain"]["bogus"] = 1;
    try {
        parse_config_json(nested_unknown);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("domain.bogus") != std::string::npos);
    }

    auto bad_levels = minimal_radial_config();
    bad_levels["refinement_levels"] = 9;
    CHECK_THROWS_AS(parse_config_json(bad_levels), ConfigError);

    auto empty_ver = minimal_radial_config();
    empty_ver["verifications"] = json::array();
    CHECK_THROWS_AS(parse_config_json(empty_ver), ConfigError);

    auto bad_ver = minimal_radial_config();
    bad_ver["verifications"] = {"no_such_suite"};
    CHECK_THROWS_AS(parse_config_json(bad_ver), ConfigError);
}

TEST_CASE("curve json round trip") {
    auto circle = make_circle({0.5, -0.25}, 0.75);
    auto doc = curve_to_json(circle);
    CHECK(doc["kind"] == "circle");
    CHECK(doc["samples"].size() == 128);
    auto back = curve_from_json(doc);
    CHECK(back.circle_radius() == doctest::Approx(0.75));
    CHECK(back.perimeter() == doctest::Approx(circle.perimeter()));

    auto tri = curve_from_json(json::parse(R"({"kind": "triangle"})"));
    CHECK(tri.perimeter() == doctest::Approx(1.7071068).epsilon(1e-6));
    auto tdoc = curve_to_json(tri);
    CHECK(tdoc["kind"] == "polygon");
    CHECK(curve_from_json(tdoc).enclosed_area() == doctest::Approx(0.125));

    auto ell = curve_from_json(
        json::parse(R"({"kind": "ellipse", "params": {"center": [0,0], "a": 1.2, "b": 0.8}})"));
    CHECK(ell.kind() == InterfaceCurve::Kind::Parametric);
    auto edoc = curve_to_json(ell, 512);
    auto eback = curve_from_json(edoc);
    CHECK(eback.perimeter() == doctest::Approx(ell.perimeter()).epsilon(1e-3));

    auto smoothed = curve_from_json(json::parse(
        R"({"kind": "level_set_smoothed", "params": {"base": {"kind": "triangle"}, "j": 16}})"));
    CHECK(smoothed.kind() == InterfaceCurve::Kind::LevelSetSmoothed);
    CHECK(smoothed.smoothing_level() == 16);

    CHECK_THROWS_AS(curve_from_json(json::parse(R"({"kind": "spiral"})")), ConfigError);
}

TEST_CASE("scenario run produces a deterministic passing report") {
    auto doc = minimal_radial_config();
    doc["mesh_size"] = 0.08;
    doc["refinement_levels"] = 2;
    doc["verifications"] = {"jump", "growth", "maxprinciple"};
    auto cfg = parse_config_json(doc);

    auto rep1 = run_scenario(cfg);
    auto rep2 = run_scenario(cfg);
    CHECK(rep1.all_pass);
    CHECK(rep1.document.dump() == rep2.document.dump()); // byte-identical reruns

    const auto& blocks = rep1.document["verifications"];
    CHECK(blocks.contains("jump"));
    CHECK(blocks.contains("growth"));
    CHECK(blocks.contains("maxprinciple"));
    CHECK(blocks["jump"]["pass"].get<bool>());
    CHECK(blocks["growth"]["unit_circle_rel_gap"].get<double>() <= 0.02);
    CHECK(rep1.document["mesh_levels"].size() == 2);
    CHECK(rep1.document["pass"].get<bool>());
}

TEST_CASE("scenario failure is reported, not thrown") {
    auto doc = minimal_radial_config();
    doc["mesh_size"] = 0.1;
    doc["verifications"] = {"blowup"}; // needs a polygon interface
    auto cfg = parse_config_json(doc);
    auto rep = run_scenario(cfg);
    CHECK(!rep.all_pass);
    CHECK(rep.document["verifications"]["blowup"].contains("error"));
}

TEST_CASE("scenario writes its output files") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "curvefem_scenario_test";
    fs::remove_all(dir);

    auto doc = minimal_radial_config();
    doc["verifications"] = {"jump"};
    auto cfg = parse_config_json(doc);
    auto rep = run_scenario(cfg, dir.string(), true);
    CHECK(rep.all_pass);

    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "solution.csv"));
    CHECK(fs::exists(dir / "gradients.csv"));
    CHECK(fs::exists(dir / "traces.csv"));
    CHECK(fs::exists(dir / "mesh.txt"));

    std::ifstream mesh_in(dir / "mesh.txt");
    std::string first;
    std::getline(mesh_in, first);
    CHECK(first.rfind("vertices ", 0) == 0);
    CHECK(first.find(" / triangles ") != std::string::npos);

    std::ifstream rep_in(dir / "report.json");
    json on_disk;
    rep_in >> on_disk;
    CHECK(on_disk["pass"].get<bool>());
    fs::remove_all(dir);
}

TEST_CASE("parse_config io error") {
    CHECK_THROWS_AS(parse_config("/nonexistent/config.json"), ConfigError);
}
