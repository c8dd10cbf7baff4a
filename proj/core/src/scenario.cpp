#include "curvefem/scenario.hpp"

#include "curvefem/errors.hpp"
#include "curvefem/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

namespace curvefem {

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 vec_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ConfigError("expected [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json vec_to(Vec2 v) { return json::array({v.x, v.y}); }

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError("unknown key: " + path + it.key());
}

const std::set<std::string> kVerificationNames = {"jump",   "theta",  "taylor",       "norms",
                                                  "blowup", "meyers", "identity",     "maxprinciple",
                                                  "growth", "approximation"};

} // namespace

json curve_to_json(const InterfaceCurve& curve, int sample_count) {
    json doc;
    json params = json::object();
    switch (curve.kind()) {
        case InterfaceCurve::Kind::Circle:
            doc["kind"] = "circle";
            params["center"] = vec_to(curve.circle_center());
            params["radius"] = curve.circle_radius();
            break;
        case InterfaceCurve::Kind::Polygon: {
            doc["kind"] = "polygon";
            json verts = json::array();
            for (const auto& v : curve.polygon_vertices()) verts.push_back(vec_to(v));
            params["vertices"] = verts;
            break;
        }
        case InterfaceCurve::Kind::Parametric:
            doc["kind"] = "parametric";
            break;
        case InterfaceCurve::Kind::LevelSetSmoothed:
            doc["kind"] = "level_set_smoothed";
            params["j"] = curve.smoothing_level();
            break;
    }
    doc["params"] = params;
    json samples = json::array();
    double L = curve.perimeter();
    for (int i = 0; i < sample_count; ++i) samples.push_back(vec_to(curve.point_at(L * i / sample_count)));
    doc["samples"] = samples;
    return doc;
}

InterfaceCurve curve_from_json(const json& doc) {
    if (!doc.contains("kind")) throw ConfigError("interface: missing key: kind");
    std::string kind = doc["kind"].get<std::string>();
    reject_unknown_keys(doc, {"kind", "params", "samples"}, "interface.");
    json params = doc.value("params", json::object());
    if (kind == "circle") {
        reject_unknown_keys(params, {"center", "radius"}, "interface.params.");
        return make_circle(vec_from(params.at("center")), params.at("radius").get<double>());
    }
    if (kind == "triangle") {
        reject_unknown_keys(params, {}, "interface.params.");
        return make_triangle();
    }
    if (kind == "polygon") {
        reject_unknown_keys(params, {"vertices"}, "interface.params.");
        std::vector<Vec2> verts;
        for (const auto& v : params.at("vertices")) verts.push_back(vec_from(v));
        return InterfaceCurve::polygon(std::move(verts));
    }
    if (kind == "ellipse") {
        reject_unknown_keys(params, {"center", "a", "b", "samples"}, "interface.params.");
        return make_ellipse(vec_from(params.at("center")), params.at("a").get<double>(),
                            params.at("b").get<double>(), params.value("samples", 2048));
    }
    if (kind == "parametric") {
        reject_unknown_keys(params, {}, "interface.params.");
        if (!doc.contains("samples")) throw ConfigError("interface: parametric needs samples");
        std::vector<Vec2> pts;
        for (const auto& v : doc["samples"]) pts.push_back(vec_from(v));
        std::vector<CurveSample> samples(pts.size());
        const int n = static_cast<int>(pts.size());
        for (int i = 0; i < n; ++i) {
            samples[i].point = pts[i];
            samples[i].tangent = normalized(pts[(i + 1) % n] - pts[(i + n - 1) % n]);
        }
        return InterfaceCurve::parametric(std::move(samples));
    }
    if (kind == "level_set_smoothed") {
        reject_unknown_keys(params, {"base", "j"}, "interface.params.");
        InterfaceCurve base = curve_from_json(params.at("base"));
        return smooth_approximation(base, params.at("j").get<int>());
    }
    throw ConfigError("interface: unknown kind: " + kind);
}

// ---------------------------------------------------------------------------
// Config parsing

ScenarioConfig parse_config_json(const json& doc) {
    ScenarioConfig cfg;
    cfg.raw = doc;
    reject_unknown_keys(doc,
                        {"domain", "interface", "coefficient", "density", "mesh_size",
                         "refinement_levels", "verifications", "output_dir", "tolerances"},
                        "");
    if (!doc.contains("domain")) throw ConfigError("missing key: domain");
    {
        const json& d = doc["domain"];
        std::string kind = d.value("kind", "disk");
        if (kind == "disk") {
            reject_unknown_keys(d, {"kind", "center", "radius", "boundary_resolution"}, "domain.");
            cfg.domain = Domain::disk(vec_from(d.at("center")), d.at("radius").get<double>(),
                                      d.value("boundary_resolution", 0));
        } else if (kind == "rectangle") {
            reject_unknown_keys(d, {"kind", "lo", "hi", "boundary_resolution"}, "domain.");
            cfg.domain = Domain::rectangle(vec_from(d.at("lo")), vec_from(d.at("hi")),
                                           d.value("boundary_resolution", 0));
        } else {
            throw ConfigError("domain.kind must be disk or rectangle");
        }
    }
    if (!doc.contains("interface")) throw ConfigError("missing key: interface");
    cfg.interface_curve = curve_from_json(doc["interface"]);

    try {
        cfg.coefficient = CoefficientField::parse(doc.value("coefficient", "identity"));
    } catch (const std::exception& e) {
        throw ConfigError(std::string("coefficient: ") + e.what());
    }

    if (doc.contains("density")) {
        const json& q = doc["density"];
        std::string kind = q.value("kind", "constant");
        if (kind == "constant") {
            reject_unknown_keys(q, {"kind", "q"}, "density.");
            cfg.density = DensityField::constant(q.value("q", 1.0));
        } else if (kind == "on_curve") {
            reject_unknown_keys(q, {"kind", "arclengths", "values", "alpha"}, "density.");
            std::vector<double> s = q.at("arclengths").get<std::vector<double>>();
            std::vector<double> v = q.at("values").get<std::vector<double>>();
            cfg.density = DensityField::on_curve(std::move(s), std::move(v),
                                                 cfg.interface_curve->perimeter(),
                                                 q.value("alpha", 1.0));
        } else {
            throw ConfigError("density.kind must be constant or on_curve");
        }
    }

    if (!doc.contains("mesh_size")) throw ConfigError("missing key: mesh_size");
    cfg.mesh_size = doc["mesh_size"].get<double>();
    if (!(cfg.mesh_size > 0.0)) throw ConfigError("mesh_size must be positive");

    cfg.refinement_levels = doc.value("refinement_levels", 1);
    if (cfg.refinement_levels < 1 || cfg.refinement_levels > 6)
        throw ConfigError("refinement_levels must lie in [1, 6]");

    if (!doc.contains("verifications")) throw ConfigError("missing key: verifications");
    cfg.verifications = doc["verifications"].get<std::vector<std::string>>();
    if (cfg.verifications.empty()) throw ConfigError("verifications must be nonempty");
    for (const auto& v : cfg.verifications)
        if (!kVerificationNames.count(v)) throw ConfigError("unknown verification: " + v);

    bool wants_meyers = std::find(cfg.verifications.begin(), cfg.verifications.end(), "meyers") !=
                        cfg.verifications.end();
    if (wants_meyers) {
        if (cfg.coefficient.kind() != CoefficientField::Kind::Meyers)
            throw ConfigError("verifications: meyers suite requires a meyers coefficient");
        if (cfg.refinement_levels < 3)
            throw ConfigError("verifications: meyers suite needs refinement_levels >= 3");
    }

    cfg.output_dir = doc.value("output_dir", "");

    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        reject_unknown_keys(t,
                            {"jump_mean_rel", "theta_rel", "taylor_kink_rel", "linf_cauchy_rel",
                             "l2_cauchy_rel", "growth_stability_rel", "growth_circle_rel",
                             "meyers_band_lo", "meyers_band_hi", "meyers_growth_threshold",
                             "identity_residual", "identity_min_order", "maxprinciple_tol",
                             "approx_perimeter_rel", "solver_rel_tol"},
                            "tolerances.");
        auto& o = cfg.tol;
        o.jump_mean_rel = t.value("jump_mean_rel", o.jump_mean_rel);
        o.theta_rel = t.value("theta_rel", o.theta_rel);
        o.taylor_kink_rel = t.value("taylor_kink_rel", o.taylor_kink_rel);
        o.linf_cauchy_rel = t.value("linf_cauchy_rel", o.linf_cauchy_rel);
        o.l2_cauchy_rel = t.value("l2_cauchy_rel", o.l2_cauchy_rel);
        o.growth_stability_rel = t.value("growth_stability_rel", o.growth_stability_rel);
        o.growth_circle_rel = t.value("growth_circle_rel", o.growth_circle_rel);
        o.meyers_band_lo = t.value("meyers_band_lo", o.meyers_band_lo);
        o.meyers_band_hi = t.value("meyers_band_hi", o.meyers_band_hi);
        o.meyers_growth_threshold = t.value("meyers_growth_threshold", o.meyers_growth_threshold);
        o.identity_residual = t.value("identity_residual", o.identity_residual);
        o.identity_min_order = t.value("identity_min_order", o.identity_min_order);
        o.maxprinciple_tol = t.value("maxprinciple_tol", o.maxprinciple_tol);
        o.approx_perimeter_rel = t.value("approx_perimeter_rel", o.approx_perimeter_rel);
        o.solver_rel_tol = t.value("solver_rel_tol", o.solver_rel_tol);
    }
    return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config_json(doc);
}

// ---------------------------------------------------------------------------
// Scenario runner

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct LevelData {
    std::shared_ptr<const TriangleMesh> mesh;
    std::optional<SolutionField> solution;
};

bool decreasing(const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

json to_json_vec(const std::vector<double>& v) { return json(v); }

} // namespace

RunReport run_scenario(const ScenarioConfig& cfg, const std::string& out_dir_override,
                       bool dump_mesh) {
    const InterfaceCurve& curve = *cfg.interface_curve;
    const Tolerances& tol = cfg.tol;

    json report;
    report["schema"] = "curvefem-report-v1";
    report["config_hash"] = fnv1a(cfg.raw.dump());

    auto needs_solution = [&](const std::string& v) {
        return v == "jump" || v == "theta" || v == "taylor" || v == "norms" || v == "blowup";
    };
    bool solve_needed = std::any_of(cfg.verifications.begin(), cfg.verifications.end(), needs_solution);

    // mesh hierarchy
    std::vector<LevelData> levels(cfg.refinement_levels);
    json mesh_stats = json::array();
    for (int l = 0; l < cfg.refinement_levels; ++l) {
        TriangleMesh m = (l == 0) ? triangulate(cfg.domain, curve, cfg.mesh_size)
                                  : refine(*levels[l - 1].mesh, curve);
        check_mesh(m);
        levels[l].mesh = std::make_shared<TriangleMesh>(std::move(m));
        mesh_stats.push_back({{"h", levels[l].mesh->h},
                              {"vertices", levels[l].mesh->vertices.size()},
                              {"triangles", levels[l].mesh->triangles.size()},
                              {"interface_edges", levels[l].mesh->interface_edges.size()}});
    }
    report["mesh_levels"] = mesh_stats;

    json solver_stats = json::array();
    if (solve_needed)
        for (auto& l : levels) {
            l.solution = solve_measure_problem(l.mesh, curve, cfg.coefficient, cfg.density,
                                               tol.solver_rel_tol);
            solver_stats.push_back({{"iterations", l.solution->stats.iterations},
                                    {"relative_residual", l.solution->stats.relative_residual}});
        }
    report["solver"] = solver_stats;

    const SolutionField* fine = levels.back().solution ? &*levels.back().solution : nullptr;

    json blocks = json::object();
    bool all_pass = true;
    auto run_block = [&](const std::string& name, auto&& fn) {
        if (std::find(cfg.verifications.begin(), cfg.verifications.end(), name) ==
            cfg.verifications.end())
            return;
        json block;
        bool pass = false;
        try {
            pass = fn(block);
        } catch (const std::exception& e) {
            block["error"] = e.what();
            pass = false;
        }
        block["pass"] = pass;
        blocks[name] = block;
        all_pass = all_pass && pass;
    };

    run_block("jump", [&](json& b) {
        std::vector<double> means;
        double pred_scale = 0.0;
        for (auto& l : levels) {
            auto rep = one_sided_traces(*l.solution, curve, cfg.coefficient, cfg.density);
            means.push_back(rep.mean_jump_error);
            double acc = 0.0;
            for (const auto& r : rep.records) acc += std::fabs(r.predicted_jump);
            pred_scale = acc / static_cast<double>(rep.records.size());
            b["trace_report"] = {{"records", rep.records.size()},
                                 {"max_jump_error", rep.max_jump_error},
                                 {"mean_jump_error", rep.mean_jump_error},
                                 {"max_tangential_jump", rep.max_tangential_jump}};
        }
        b["mean_jump_error_per_level"] = to_json_vec(means);
        b["predicted_scale"] = pred_scale;
        double rel = means.back() / std::max(pred_scale, 1e-30);
        b["final_relative_error"] = rel;
        b["monotone_decreasing"] = decreasing(means);
        return rel <= tol.jump_mean_rel && (means.size() < 2 || decreasing(means));
    });

    run_block("theta", [&](json& b) {
        auto rep = one_sided_traces(*fine, curve, cfg.coefficient, cfg.density);
        double h = fine->mesh->h;
        std::vector<double> radii = {3.0 * h, 4.5 * h, 6.0 * h, 7.5 * h};
        double L = curve.perimeter();
        json pts = json::array();
        bool ok = true;
        for (int k = 0; k < 8; ++k) {
            double s = L * k / 8.0;
            const TraceRecord* nearest = &rep.records.front();
            for (const auto& r : rep.records)
                if (std::fabs(r.arclength - s) < std::fabs(nearest->arclength - s)) nearest = &r;
            Vec2 ball = estimate_theta(*fine, nearest->x, radii);
            double rel = distance(ball, nearest->theta) / std::max(norm(nearest->theta), 1e-30);
            pts.push_back({{"s", nearest->arclength},
                           {"theta_trace", {nearest->theta.x, nearest->theta.y}},
                           {"theta_ball", {ball.x, ball.y}},
                           {"relative_gap", rel}});
            ok = ok && rel <= tol.theta_rel;
        }
        b["points"] = pts;
        return ok;
    });

    run_block("taylor", [&](json& b) {
        double L = curve.perimeter();
        json pts = json::array();
        bool ok = true;
        for (int k = 0; k < 8; ++k) {
            double s = L * (k + 0.5) / 8.0;
            Vec2 x0 = curve.point_at(s);
            auto fit = taylor_fit(*fine, x0, cfg.coefficient, cfg.density, curve);
            double rel = std::fabs(fit.kink_coeff - fit.expected_kink) /
                         std::max(std::fabs(fit.expected_kink), 1e-30);
            pts.push_back({{"s", s},
                           {"kink", fit.kink_coeff},
                           {"expected", fit.expected_kink},
                           {"relative_gap", rel},
                           {"rms_residual", fit.rms_residual}});
            ok = ok && rel <= tol.taylor_kink_rel;
        }
        b["points"] = pts;
        return ok;
    });

    run_block("norms", [&](json& b) {
        std::vector<double> p_grid = {2.0, 4.0, 8.0};
        std::vector<double> linfs, l2s;
        json per_level = json::array();
        for (auto& l : levels) {
            auto rep = gradient_norm_report(*l.solution, p_grid);
            linfs.push_back(rep.linf);
            l2s.push_back(rep.lp_norms[0]);
            per_level.push_back({{"p_grid", to_json_vec(rep.p_grid)},
                                 {"lp_gradient_norms", to_json_vec(rep.lp_norms)},
                                 {"linf_gradient", rep.linf},
                                 {"h", rep.h}});
        }
        b["p_grid"] = to_json_vec(p_grid);
        b["norm_report"] = per_level;
        bool ok = true;
        double worst_linf = 0.0, worst_l2 = 0.0;
        for (size_t i = 1; i < linfs.size(); ++i) {
            worst_linf = std::max(worst_linf, std::fabs(linfs[i] - linfs[i - 1]) / linfs[i]);
            worst_l2 = std::max(worst_l2, std::fabs(l2s[i] - l2s[i - 1]) / l2s[i]);
        }
        b["linf_cauchy_rel"] = worst_linf;
        b["l2_cauchy_rel"] = worst_l2;
        if (linfs.size() >= 2) ok = worst_linf <= tol.linf_cauchy_rel && worst_l2 <= tol.l2_cauchy_rel;
        return ok;
    });

    run_block("blowup", [&](json& b) {
        if (curve.kind() != InterfaceCurve::Kind::Polygon)
            throw std::invalid_argument("blowup verification needs a polygon interface");
        Vec2 corner = curve.polygon_vertices().front();
        double h = fine->mesh->h;
        double rmax = std::max(0.12, 7.6 * h);
        std::vector<double> radii;
        for (double r = rmax; r >= 3.2 * h && radii.size() < 6; r *= 0.75) radii.push_back(r);
        if (radii.size() < 4)
            throw ResolutionError("blowup verification: mesh too coarse for 4 fit radii");
        auto fit = blowup_log_fit(*fine, corner, radii);
        std::vector<double> local_linf;
        for (auto& l : levels) local_linf.push_back(local_linf_gradient(*l.solution, corner, 0.1));
        bool growing = true;
        for (size_t i = 1; i < local_linf.size(); ++i)
            growing = growing && local_linf[i] > local_linf[i - 1];
        b["blowup_fit"] = {{"radii", to_json_vec(fit.radii)},
                           {"max_grad", to_json_vec(fit.max_grad)},
                           {"slope", fit.slope},
                           {"intercept", fit.intercept},
                           {"fit_residual", fit.fit_residual}};
        b["slope"] = fit.slope;
        b["local_linf_per_level"] = to_json_vec(local_linf);
        b["linf_bounded"] = !growing;
        return fit.slope > 0.0 && growing;
    });

    run_block("meyers", [&](json& b) {
        if (cfg.coefficient.kind() != CoefficientField::Kind::Meyers)
            throw std::invalid_argument("meyers verification requires a meyers coefficient");
        if (curve.kind() != InterfaceCurve::Kind::Circle ||
            std::fabs(curve.circle_radius() - 1.0) > 1e-12 || norm(curve.circle_center()) > 1e-12)
            throw std::invalid_argument("meyers verification needs the unit-circle interface");
        double mu = cfg.coefficient.meyers_mu();
        double outer = cfg.domain.radius;
        std::vector<double> p_grid = {2.0, 2.5, 3.0, 3.25, 3.5, 3.75, 4.0, 4.25, 4.5, 5.0, 6.0, 8.0};
        std::vector<NormReport> reports;
        json per_level = json::array();
        for (auto& l : levels) {
            auto u2 = solve_dirichlet(
                l.mesh, cfg.coefficient,
                [&](Vec2 x) {
                    return norm(x) > 0.5 * (1.0 + outer) ? -x.x / std::pow(outer, 1.0 - mu) : 0.0;
                },
                Region::Annulus, tol.solver_rel_tol);
            DensityField q = meyers_density(mu, u2);
            auto u = solve_measure_problem(l.mesh, curve, cfg.coefficient, q, tol.solver_rel_tol);
            auto rep = gradient_norm_report(u, p_grid);
            reports.push_back(rep);
            per_level.push_back({{"h", rep.h}, {"lp", to_json_vec(rep.lp_norms)}, {"linf", rep.linf}});
        }
        auto res = integrability_exponent(reports, tol.meyers_growth_threshold);
        b["p_grid"] = to_json_vec(p_grid);
        b["levels"] = per_level;
        b["p_crit"] = res.p_crit;
        b["conclusive"] = res.conclusive;
        b["theory_threshold"] = 2.0 / (1.0 - mu);
        double worst_l2 = 0.0;
        for (size_t i = 1; i < reports.size(); ++i)
            worst_l2 = std::max(worst_l2, std::fabs(reports[i].lp_norms[0] - reports[i - 1].lp_norms[0]) /
                                              reports[i].lp_norms[0]);
        b["l2_cauchy_rel"] = worst_l2;
        return res.p_crit >= tol.meyers_band_lo && res.p_crit <= tol.meyers_band_hi &&
               worst_l2 <= tol.l2_cauchy_rel;
    });

    run_block("identity", [&](json& b) {
        double margin = 0.5; // distance from curve to domain boundary assumed larger
        double eps = std::min(0.3, 0.4 * margin);
        ScalarTestFunction phi;
        if (curve.kind() == InterfaceCurve::Kind::Circle) {
            double rho = curve.circle_radius();
            Vec2 c = curve.circle_center();
            auto gfun = [eps](double d) {
                double z = 1.0 - (d / eps) * (d / eps);
                return z > 0.0 ? z * z * z : 0.0;
            };
            phi.value = [=](Vec2 x) { return gfun(norm(x - c) - rho); };
            phi.hessian = [=](Vec2 x, int i, int j) {
                Vec2 u = x - c;
                double r = norm(u);
                double d = r - rho;
                double z = 1.0 - (d / eps) * (d / eps);
                if (z <= 0.0) return 0.0;
                double gp = -6.0 * d / (eps * eps) * z * z;
                double gpp = (-6.0 * z * z + 24.0 * d * d / (eps * eps) * z) / (eps * eps);
                double di = (i == 0 ? u.x : u.y) / r;
                double dj = (j == 0 ? u.x : u.y) / r;
                double hessd = ((i == j ? 1.0 : 0.0) - di * dj) / r;
                return gpp * di * dj + gp * hessd;
            };
        } else {
            auto gfun = [eps](double d) {
                double z = 1.0 - (d / eps) * (d / eps);
                return z > 0.0 ? z * z * z : 0.0;
            };
            phi.value = [&curve, gfun](Vec2 x) { return gfun(curve.signed_distance(x)); };
            const double fd = 1e-5;
            phi.hessian = [&curve, gfun, fd](Vec2 x, int i, int j) {
                auto f = [&](Vec2 y) { return gfun(curve.signed_distance(y)); };
                Vec2 ei = i == 0 ? Vec2{1, 0} : Vec2{0, 1};
                Vec2 ej = j == 0 ? Vec2{1, 0} : Vec2{0, 1};
                if (i == j) return (f(x + fd * ei) - 2.0 * f(x) + f(x - fd * ei)) / (fd * fd);
                return (f(x + fd * ei + fd * ej) - f(x + fd * ei - fd * ej) -
                        f(x - fd * ei + fd * ej) + f(x - fd * ei - fd * ej)) /
                       (4.0 * fd * fd);
            };
        }
        auto q0 = [](Vec2) { return 1.0; };
        std::vector<int> grids = {100, 200, 400};
        std::vector<double> residuals;
        for (int g : grids)
            residuals.push_back(distributional_identity_residual(curve, q0, phi, eps, 0, 0, g));
        std::vector<double> xs, ys;
        for (size_t i = 0; i < grids.size(); ++i) {
            xs.push_back(std::log(1.0 / grids[i]));
            ys.push_back(std::log(std::max(residuals[i], 1e-300)));
        }
        double order = fit_line(xs, ys).slope;
        b["grids"] = json(grids);
        b["residuals"] = to_json_vec(residuals);
        b["order"] = order;
        return residuals.back() <= tol.identity_residual && order >= tol.identity_min_order;
    });

    run_block("maxprinciple", [&](json& b) {
        auto u = solve_dirichlet(levels.back().mesh, cfg.coefficient,
                                 [](Vec2 x) { return x.x; }, Region::Whole, tol.solver_rel_tol);
        const auto& mesh = *levels.back().mesh;
        double bmax = -1e300, bmin = 1e300, imax = -1e300, imin = 1e300;
        for (size_t v = 0; v < mesh.vertices.size(); ++v) {
            if (mesh.boundary_vertex[v]) {
                bmax = std::max(bmax, u.values[v]);
                bmin = std::min(bmin, u.values[v]);
            } else {
                imax = std::max(imax, u.values[v]);
                imin = std::min(imin, u.values[v]);
            }
        }
        b["boundary_max"] = bmax;
        b["boundary_min"] = bmin;
        b["interior_max"] = imax;
        b["interior_min"] = imin;
        return imax <= bmax + tol.maxprinciple_tol && imin >= bmin - tol.maxprinciple_tol;
    });

    run_block("growth", [&](json& b) {
        std::vector<Vec2> centers;
        double L = curve.perimeter();
        Vec2 mid{0.0, 0.0};
        for (int k = 0; k < 16; ++k) mid += curve.point_at(L * k / 16.0);
        centers.push_back(mid / 16.0);
        for (int k = 0; k < 8; ++k) centers.push_back(curve.point_at(L * k / 8.0));
        std::vector<double> radii = {2.0, 0.5, 0.25, 0.1};
        double c1 = measure_growth_constant(curve, centers, radii, 8192);
        double c2 = measure_growth_constant(curve, centers, radii, 16384);
        double stability = std::fabs(c2 - c1) / std::max(c1, 1e-30);
        b["constant"] = c1;
        b["refined_constant"] = c2;
        b["stability_rel"] = stability;
        bool ok = std::isfinite(c1) && c1 > 0.0 && stability <= tol.growth_stability_rel;
        if (curve.kind() == InterfaceCurve::Kind::Circle &&
            std::fabs(curve.circle_radius() - 1.0) < 1e-12) {
            double rel = std::fabs(c1 - kPi) / kPi;
            b["unit_circle_expected"] = kPi;
            b["unit_circle_rel_gap"] = rel;
            ok = ok && rel <= tol.growth_circle_rel;
        }
        return ok;
    });

    run_block("approximation", [&](json& b) {
        std::vector<int> js = {8, 16, 32, 64};
        double base_perimeter = curve.perimeter();
        double base_x1 = integrate_on_curve(curve, 4096, [](Vec2 p) { return p.x; });
        json rows = json::array();
        std::vector<double> x1_gaps;
        double per_rel_64 = 0.0;
        for (int j : js) {
            InterfaceCurve gj = smooth_approximation(curve, j, cfg.domain);
            double pj = gj.perimeter();
            double x1 = integrate_on_curve(gj, 4096, [](Vec2 p) { return p.x; });
            double gap = std::fabs(x1 - base_x1);
            x1_gaps.push_back(gap);
            double rel = std::fabs(pj - base_perimeter) / base_perimeter;
            if (j == 64) per_rel_64 = rel;
            rows.push_back({{"j", j}, {"perimeter", pj}, {"perimeter_rel_gap", rel},
                            {"x1_integral", x1}, {"x1_gap", gap}});
        }
        b["base_perimeter"] = base_perimeter;
        b["base_x1_integral"] = base_x1;
        b["rows"] = rows;
        b["x1_gap_decreasing"] = decreasing(x1_gaps);
        b["perimeter_rel_gap_at_64"] = per_rel_64;
        return per_rel_64 <= tol.approx_perimeter_rel && decreasing(x1_gaps);
    });

    report["verifications"] = blocks;
    report["pass"] = all_pass;

    // outputs
    std::string out_dir = !out_dir_override.empty() ? out_dir_override : cfg.output_dir;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream(out_dir + "/report.json") << report.dump(2) << "\n";
        if (fine) {
            std::ofstream sol(out_dir + "/solution.csv");
            fine->write_vertex_csv(sol);
            std::ofstream grad(out_dir + "/gradients.csv");
            fine->write_element_csv(grad);
            std::ofstream traces(out_dir + "/traces.csv");
            auto rep = one_sided_traces(*fine, curve, cfg.coefficient, cfg.density);
            traces << "x,y,nx,ny,gin_x,gin_y,gout_x,gout_y,theta_x,theta_y,jump,predicted\n";
            traces.precision(17);
            for (const auto& r : rep.records)
                traces << r.x.x << "," << r.x.y << "," << r.normal.x << "," << r.normal.y << ","
                       << r.grad_inside.x << "," << r.grad_inside.y << "," << r.grad_outside.x
                       << "," << r.grad_outside.y << "," << r.theta.x << "," << r.theta.y << ","
                       << r.normal_jump << "," << r.predicted_jump << "\n";
        }
        if (dump_mesh) {
            std::ofstream mesh_out(out_dir + "/mesh.txt");
            levels.back().mesh->write_text(mesh_out);
        }
    }

    return {std::move(report), all_pass};
}

} // namespace curvefem
