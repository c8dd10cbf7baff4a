#include "curvefem/fem.hpp"
#include "curvefem/fields.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace curvefem;
namespace {
constexpr double kPi = std::numbers::pi;

// radial profile of the annulus solution with data -x/2^(1-mu) on the outer rim
double annulus_profile(double mu, double r) {
    double a = -std::pow(2.0, 2.0 * mu) / (std::pow(2.0, 2.0 * mu) - 1.0);
    return a * std::pow(r, mu) - a * std::pow(r, -mu);
}
} // namespace

TEST_CASE("meyers coefficient matrix values") {
    auto A = meyers_coefficient(0.5);
    Matrix2 m = A({1.0, 0.0});
    CHECK(m.a11 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.a22 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(m.a12 == doctest::Approx(0.0));
    Matrix2 m2 = A({0.0, 1.0});
    CHECK(m2.a11 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(m2.a22 == doctest::Approx(1.0).epsilon(1e-14));

    // eigenvalues are exactly {1, mu^2} away from the origin
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.9, 1.9);
    for (double mu : {0.25, 0.5, 0.9}) {
        auto B = meyers_coefficient(mu);
        for (int k = 0; k < 50; ++k) {
            Vec2 x{U(rng), U(rng)};
            if (norm(x) < 0.05) continue;
            Matrix2 a = B(x);
            CHECK(a.min_eigenvalue() == doctest::Approx(mu * mu).epsilon(1e-12));
            CHECK(a.max_eigenvalue() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(a.symmetry_defect() == 0.0);
        }
    }
    // removable point at the exact origin
    CHECK(A({0.0, 0.0}).a11 == 1.0);
    CHECK(A({0.0, 0.0}).a12 == 0.0);
    CHECK_THROWS_AS(meyers_coefficient(0.0), std::invalid_argument);
    CHECK_THROWS_AS(meyers_coefficient(1.0), std::invalid_argument);
}

TEST_CASE("coefficient validation") {
    std::vector<Vec2> samples;
    for (int k = 0; k < 32; ++k)
        samples.push_back({std::cos(2 * kPi * k / 32.0), std::sin(2 * kPi * k / 32.0)});

    auto id = CoefficientField::identity();
    auto rep = validate_coefficient(id, samples);
    CHECK(rep.min_eigenvalue == doctest::Approx(1.0));
    CHECK(rep.symmetry_defect == 0.0);
    CHECK(rep.sample_count == 32);

    auto rep2 = validate_coefficient(meyers_coefficient(0.5), samples);
    CHECK(rep2.min_eigenvalue == doctest::Approx(0.25).epsilon(1e-12));

    // injected asymmetry is flagged
    std::vector<Matrix2> grid(4, Matrix2{2.0, 0.3, -0.1, 1.0});
    auto bad = CoefficientField::tabulated({-2, -2}, {2, 2}, 2, 2, grid);
    CHECK(validate_coefficient(bad, samples).symmetry_defect == doctest::Approx(0.4));

    std::vector<Matrix2> nan_grid(4, Matrix2{std::nan(""), 0, 0, 1});
    auto nan_field = CoefficientField::tabulated({-2, -2}, {2, 2}, 2, 2, nan_grid);
    CHECK_THROWS_AS(validate_coefficient(nan_field, samples), DataError);
    CHECK_THROWS_AS(validate_coefficient(id, {}), std::invalid_argument);
}

TEST_CASE("coefficient parsing and perturbation ellipticity") {
    CHECK(CoefficientField::parse("identity").kind() == CoefficientField::Kind::Identity);
    CHECK(CoefficientField::parse("meyers:0.5").meyers_mu() == doctest::Approx(0.5));
    auto p = CoefficientField::parse("perturbation:0.3,2.0");
    CHECK(p.kind() == CoefficientField::Kind::SmoothPerturbation);
    std::vector<Vec2> samples;
    for (int i = -5; i <= 5; ++i)
        for (int j = -5; j <= 5; ++j) samples.push_back({0.3 * i, 0.3 * j});
    CHECK(validate_coefficient(p, samples).min_eigenvalue >= 0.7 - 1e-12);
    CHECK_THROWS_AS(CoefficientField::parse("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(CoefficientField::parse("perturbation:0.1"), std::invalid_argument);
    CHECK_THROWS_AS(CoefficientField::smooth_perturbation(1.5, 1.0), std::invalid_argument);
}

TEST_CASE("density interpolation") {
    auto c = DensityField::constant(2.5);
    CHECK(c(0.0) == 2.5);
    CHECK(c(100.0) == 2.5);

    std::vector<double> s{0.0, 1.0, 2.0, 3.0};
    std::vector<double> v{1.0, 2.0, -1.0, 0.5};
    auto q = DensityField::on_curve(s, v, 4.0, 0.5);
    // reproduces its samples exactly
    for (size_t i = 0; i < s.size(); ++i) CHECK(q(s[i]) == doctest::Approx(v[i]).epsilon(1e-15));
    CHECK(q(0.5) == doctest::Approx(1.5));
    // periodic wrap between s=3 and s=4==0
    CHECK(q(3.5) == doctest::Approx(0.75));
    CHECK(q(-0.5) == doctest::Approx(0.75));
    CHECK(q.holder_alpha() == doctest::Approx(0.5));
    CHECK_THROWS_AS(DensityField::on_curve({0.0}, {1.0}, 4.0), std::invalid_argument);
    CHECK_THROWS_AS(DensityField::on_curve({0.0, 1.0}, {1.0, std::nan("")}, 4.0), DataError);
}

TEST_CASE("meyers density from annulus traces") {
    const double mu = 0.5;
    auto dom = Domain::disk({0, 0}, 2.0);
    auto circ = make_circle({0, 0}, 1.0);
    auto A = meyers_coefficient(mu);
    double qamp = 2.0; // -f'(1) for the closed-form annulus profile at mu = 1/2

    double prev_max_gap = 1e300;
    double prev_maxq = 0.0;
    for (double h : {0.08, 0.04}) {
        auto mesh = std::make_shared<TriangleMesh>(triangulate(dom, circ, h));
        auto u2 = solve_dirichlet(
            mesh, A,
            [&](Vec2 x) { return norm(x) > 1.5 ? -x.x / std::pow(2.0, 1.0 - mu) : 0.0; },
            Region::Annulus);
        // the discrete annulus solution tracks the closed-form radial profile
        double u2_gap = 0.0;
        for (size_t vtx = 0; vtx < mesh->vertices.size(); ++vtx) {
            double r = norm(mesh->vertices[vtx]);
            double exact = r <= 1.0 ? 0.0 : annulus_profile(mu, r) * mesh->vertices[vtx].x / r;
            u2_gap = std::max(u2_gap, std::fabs(u2.values[vtx] - exact));
        }
        CHECK(u2_gap < 0.01);

        auto q = meyers_density(mu, u2);
        double max_gap = 0.0, maxq = 0.0;
        for (int k = 0; k < 64; ++k) {
            double th = 2.0 * kPi * (k + 0.5) / 64.0;
            max_gap = std::max(max_gap, std::fabs(q(th) - qamp * std::cos(th)));
            maxq = std::max(maxq, std::fabs(q(th)));
            // odd in x: Q(pi - th) = -Q(th)
            CHECK(q(kPi - th) == doctest::Approx(-q(th)).epsilon(0.08));
        }
        CHECK(std::isfinite(maxq));
        CHECK(max_gap < 0.1);
        CHECK(max_gap < prev_max_gap); // refinement improves the trace density
        if (prev_maxq > 0.0) CHECK(std::fabs(maxq - prev_maxq) / maxq < 0.05);
        prev_max_gap = max_gap;
        prev_maxq = maxq;
    }
    // continuity of the construction toward the smooth limit
    auto mesh = std::make_shared<TriangleMesh>(triangulate(dom, circ, 0.08));
    auto u2 = solve_dirichlet(
        mesh, CoefficientField::meyers(0.95),
        [&](Vec2 x) { return norm(x) > 1.5 ? -x.x / std::pow(2.0, 0.05) : 0.0; }, Region::Annulus);
    auto q95 = meyers_density(0.95, u2);
    for (int k = 0; k < 16; ++k) CHECK(std::isfinite(q95(2.0 * kPi * k / 16.0)));

    CHECK_THROWS_AS(meyers_density(1.5, u2), std::invalid_argument);
}
