#include "curvefem/analysis.hpp"
#include "curvefem/mesh.hpp"
#include "curvefem/potentials.hpp"

#include <benchmark/benchmark.h>

using namespace curvefem;

namespace {

const TriangleMesh& radial_mesh(double h) {
    static auto coarse = triangulate(Domain::disk({0, 0}, 2.0), make_circle({0, 0}, 1.0), 0.04);
    static auto fine = triangulate(Domain::disk({0, 0}, 2.0), make_circle({0, 0}, 1.0), 0.02);
    return h > 0.03 ? coarse : fine;
}

void BM_TriangulateConcentric(benchmark::State& state) {
    auto dom = Domain::disk({0, 0}, 2.0);
    auto circ = make_circle({0, 0}, 1.0);
    double h = 1.0 / state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(triangulate(dom, circ, h));
}
BENCHMARK(BM_TriangulateConcentric)->Arg(20)->Arg(50);

void BM_TriangulateGeneral(benchmark::State& state) {
    auto dom = Domain::disk({0, 0}, 1.0);
    auto tri = make_triangle();
    double h = 1.0 / state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(triangulate(dom, tri, h));
}
BENCHMARK(BM_TriangulateGeneral)->Arg(20)->Arg(50);

void BM_AssembleStiffness(benchmark::State& state) {
    const auto& mesh = radial_mesh(1.0 / state.range(0));
    auto A = CoefficientField::identity();
    for (auto _ : state) benchmark::DoNotOptimize(assemble_stiffness(mesh, A));
    state.SetItemsProcessed(state.iterations() * mesh.triangles.size());
}
BENCHMARK(BM_AssembleStiffness)->Arg(25)->Arg(50);

void BM_SolveRadial(benchmark::State& state) {
    auto mesh = std::make_shared<TriangleMesh>(radial_mesh(1.0 / state.range(0)));
    auto circ = make_circle({0, 0}, 1.0);
    auto A = CoefficientField::identity();
    auto Q = DensityField::constant(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_measure_problem(mesh, circ, A, Q));
}
BENCHMARK(BM_SolveRadial)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_SignedDistanceEllipse(benchmark::State& state) {
    auto ell = make_ellipse({0, 0}, 1.2, 0.8);
    double acc = 0.0;
    int k = 0;
    for (auto _ : state) {
        Vec2 p{-1.9 + 0.001 * (k % 3800), -1.9 + 0.002 * (k % 1900)};
        acc += ell.signed_distance(p);
        ++k;
    }
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_SignedDistanceEllipse);

void BM_CurveQuadrature(benchmark::State& state) {
    auto circ = make_circle({0, 0}, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate_on_curve(circ, 512, [](Vec2 p) { return p.x * p.x; }));
}
BENCHMARK(BM_CurveQuadrature);

void BM_GreenSolution(benchmark::State& state) {
    auto inner = make_circle({0, 0}, 0.5);
    auto Q = DensityField::constant(1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(green_solution(1.0, inner, Q, {0.3, 0.1}, 1024));
}
BENCHMARK(BM_GreenSolution);

} // namespace

BENCHMARK_MAIN();
