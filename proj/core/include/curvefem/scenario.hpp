#pragma once

#include "curvefem/analysis.hpp"
#include "curvefem/fem.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace curvefem {

using json = nlohmann::ordered_json;

/// Curve serialization: {kind, params, samples: [[x,y],...]}.
json curve_to_json(const InterfaceCurve& curve, int sample_count = 128);
InterfaceCurve curve_from_json(const json& doc);

struct Tolerances {
    double jump_mean_rel = 0.05;
    double theta_rel = 0.05;
    double taylor_kink_rel = 0.10;
    double linf_cauchy_rel = 0.03;
    double l2_cauchy_rel = 0.05;
    double growth_stability_rel = 0.01;
    double growth_circle_rel = 0.02;
    double meyers_band_lo = 3.5;
    double meyers_band_hi = 4.5;
    double meyers_growth_threshold = 0.047;
    double identity_residual = 1e-4;
    double identity_min_order = 2.0;
    double maxprinciple_tol = 1e-8;
    double approx_perimeter_rel = 0.01;
    double solver_rel_tol = 1e-10;
};

struct ScenarioConfig {
    Domain domain;
    std::optional<InterfaceCurve> interface_curve;
    CoefficientField coefficient;
    DensityField density = DensityField::constant(1.0);
    double mesh_size = 0.1;
    int refinement_levels = 1;
    std::vector<std::string> verifications;
    std::string output_dir;
    Tolerances tol;
    json raw;
};

ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_json(const json& doc);

struct RunReport {
    json document;
    bool all_pass = false;
};

/// Runs the requested verifications, writes report.json plus CSV outputs to
/// the output directory (when set), and returns the report.
RunReport run_scenario(const ScenarioConfig& config, const std::string& out_dir_override = "",
                       bool dump_mesh = false);

} // namespace curvefem
