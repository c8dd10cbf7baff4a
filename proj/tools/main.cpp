#include "curvefem/errors.hpp"
#include "curvefem/potentials.hpp"
#include "curvefem/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

using namespace curvefem;

namespace {

int run_solve(const std::string& config_path, const std::string& out_dir, bool dump_mesh) {
    ScenarioConfig cfg;
    try {
        cfg = parse_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        RunReport report = run_scenario(cfg, out_dir, dump_mesh);
        std::cout << report.document.dump(2) << "\n";
        return report.all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "run error: " << e.what() << "\n";
        return 1;
    }
}

int run_oracle(const std::string& name, const std::vector<double>& a) {
    std::printf("%s", "");
    auto need = [&](size_t n) {
        if (a.size() != n) throw std::invalid_argument("oracle " + name + ": wrong argument count");
    };
    if (name == "radial") {
        need(4); // R rho q r
        auto o = radial_oracle(a[0], a[1], a[2]);
        std::printf("u(%.17g) = %.17g\n", a[3], o.value(a[3]));
        std::printf("du(%.17g) = %.17g\n", a[3], o.derivative(a[3]));
        return 0;
    }
    if (name == "green") {
        need(5); // R x1 y1 x2 y2
        std::printf("G = %.17g\n", green_disk(a[0], {a[1], a[2]}, {a[3], a[4]}));
        return 0;
    }
    if (name == "segment") {
        need(2); // x y
        auto s = segment_kernel_integrals({a[0], a[1]});
        std::printf("I1 = %.17g\nI2 = %.17g\n", s.i1, s.i2);
        return 0;
    }
    if (name == "triangle_gradient") {
        need(2);
        std::printf("d1u = %.17g\n", triangle_gradient_oracle({a[0], a[1]}));
        return 0;
    }
    if (name == "meyers_u1") {
        need(3); // mu x y
        auto v = meyers_u1(a[0], {a[1], a[2]});
        std::printf("value = %.17g\ngrad = (%.17g, %.17g)\n", v.value, v.gradient.x, v.gradient.y);
        return 0;
    }
    throw std::invalid_argument("unknown oracle: " + name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite element solver for elliptic problems with curve-supported loads"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    bool dump_mesh = false;
    auto* solve_cmd = app.add_subcommand("solve", "Run a scenario from a JSON config");
    solve_cmd->add_option("--config", config_path, "Scenario config file")->required();
    solve_cmd->add_option("--out", out_dir, "Output directory (overrides config)");
    solve_cmd->add_flag("--dump-mesh", dump_mesh, "Write mesh.txt for the finest level");

    std::string oracle_name;
    std::vector<double> oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle", "Evaluate a closed-form oracle at a point");
    oracle_cmd->add_option("name", oracle_name,
                           "radial | green | segment | triangle_gradient | meyers_u1")
        ->required();
    oracle_cmd->add_option("args", oracle_args, "Numeric arguments");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return run_solve(config_path, out_dir, dump_mesh);
        if (oracle_cmd->parsed()) return run_oracle(oracle_name, oracle_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
