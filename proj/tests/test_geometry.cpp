#include "curvefem/geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace curvefem;
namespace {
constexpr double kPi = std::numbers::pi;

// independent oracle: distance from a point to a segment
double point_segment_distance(Vec2 x, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double t = std::clamp(dot(x - a, ab) / norm2(ab), 0.0, 1.0);
    return distance(x, a + t * ab);
}
} // namespace

TEST_CASE("domain construction and queries") {
    auto disk = Domain::disk({0.0, 0.0}, 2.0);
    CHECK(disk.contains({1.9, 0.0}));
    CHECK(!disk.contains({2.1, 0.0}));
    CHECK(disk.boundary_distance({1.5, 0.0}) == doctest::Approx(0.5));

    auto rect = Domain::rectangle({0.0, 0.0}, {2.0, 1.0});
    CHECK(rect.contains({1.0, 0.5}));
    CHECK(rect.boundary_distance({1.0, 0.25}) == doctest::Approx(0.25));

    CHECK_THROWS_AS(Domain::disk({0, 0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::rectangle({1, 1}, {0, 0}), std::invalid_argument);
}

TEST_CASE("circle basics") {
    auto c = make_circle({0.0, 0.0}, 1.0);
    CHECK(c.perimeter() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(c.regularity_class() == RegularityClass::Smooth);
    Vec2 n = c.normal_at(c.project_arclength({1.0, 0.0}));
    CHECK(n.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.signed_distance({1.5, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.signed_distance({0.0, 0.0}) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(c.signed_distance({2.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(c.signed_distance(c.point_at(1.234))) < 1e-14);
    CHECK(c.enclosed_area() == doctest::Approx(kPi));
    CHECK_THROWS_AS(make_circle({0, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("triangle basics") {
    auto t = make_triangle();
    CHECK(t.perimeter() == doctest::Approx(0.5 + 0.5 + std::sqrt(2.0) / 2.0).epsilon(1e-14));
    CHECK(t.regularity_class() == RegularityClass::Lipschitz);
    CHECK(t.enclosed_area() == doctest::Approx(0.125).epsilon(1e-14));
    // outward normal on the bottom edge [0, 1/2] x {0}
    Vec2 n = t.normal_at(0.25);
    CHECK(n.x == doctest::Approx(0.0));
    CHECK(n.y == doctest::Approx(-1.0));
    // signed distance to nearest edge, against the segment oracle
    Vec2 x{0.1, 0.1};
    double d1 = point_segment_distance(x, {0, 0}, {0.5, 0});
    double d2 = point_segment_distance(x, {0, 0}, {0, 0.5});
    double d3 = point_segment_distance(x, {0.5, 0}, {0, 0.5});
    CHECK(t.signed_distance(x) == doctest::Approx(-std::min({d1, d2, d3})).epsilon(1e-12));
    CHECK(t.signed_distance(x) == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("polygon validity") {
    CHECK_THROWS_AS(InterfaceCurve::polygon({{0, 0}, {1, 0}}), std::invalid_argument);
    // clockwise orientation rejected
    CHECK_THROWS_AS(InterfaceCurve::polygon({{0, 0}, {0, 1}, {1, 0}}), std::invalid_argument);
    // bowtie self-intersection rejected
    CHECK_THROWS_AS(InterfaceCurve::polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
                    std::invalid_argument);
}

TEST_CASE("signed distance flips sign across the curve") {
    for (const auto& curve : {make_circle({0.2, -0.1}, 0.8), make_triangle()}) {
        auto rule = curve_quadrature(curve, 64);
        for (const auto& node : rule.nodes) {
            double eps = 1e-4;
            CHECK(curve.signed_distance(node.point - eps * node.normal) < 0.0);
            CHECK(curve.signed_distance(node.point + eps * node.normal) > 0.0);
        }
    }
}

TEST_CASE("quadrature weights sum to the perimeter") {
    auto c = make_circle({0, 0}, 1.0);
    auto rule = curve_quadrature(c, 64);
    CHECK(rule.total_weight() == doctest::Approx(2.0 * kPi).epsilon(1e-9));

    auto t = make_triangle();
    for (int n : {8, 17, 64})
        CHECK(curve_quadrature(t, n).total_weight() ==
              doctest::Approx(1.70710678118654752).epsilon(1e-14));

    auto half = make_circle({0, 0}, 0.5);
    CHECK(integrate_on_curve(half, 64, [](Vec2) { return 1.0; }) ==
          doctest::Approx(kPi).epsilon(1e-12));

    CHECK_THROWS_AS(curve_quadrature(c, 4), std::invalid_argument);
    CHECK_THROWS_AS(curve_quadrature(t, 5), std::invalid_argument);
}

TEST_CASE("measure growth constant") {
    auto c = make_circle({0, 0}, 1.0);
    // tiny radius centered on the curve: arc/chord ratio tends to 2
    double g_small = measure_growth_constant(c, {c.point_at(0.3)}, {0.01});
    CHECK(g_small == doctest::Approx(2.0).epsilon(1e-3));
    // full circle captured from the center at r = 2
    CHECK(measure_growth_constant(c, {{0, 0}}, {2.0}) == doctest::Approx(kPi).epsilon(1e-6));
    // triangle right-angle corner: two rays
    auto t = make_triangle();
    CHECK(measure_growth_constant(t, {{0, 0}}, {0.05}) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(measure_growth_constant(c, {}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(measure_growth_constant(c, {{0, 0}}, {-1.0}), std::invalid_argument);
}

TEST_CASE("chord-arc ratio") {
    auto c = make_circle({0, 0}, 1.0);
    CHECK(chord_arc_ratio(c, {{0.0, kPi}}) == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(chord_arc_ratio(c, {{0.0, 1e-4}}) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(chord_arc_ratio(c, 128) >= 1.0);
    CHECK(chord_arc_ratio(c, 128) == doctest::Approx(kPi / 2.0).epsilon(1e-3));
    // polygons stay finite
    CHECK(chord_arc_ratio(make_triangle(), 120) < 3.0);
}

TEST_CASE("normal Hoelder seminorm") {
    CHECK(normal_holder_seminorm(make_circle({0, 0}, 1.0), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(normal_holder_seminorm(make_circle({0, 0}, 2.0), 1.0) ==
          doctest::Approx(0.5).epsilon(1e-9));
    double e = normal_holder_seminorm(make_ellipse({0, 0}, 2.0, 1.0), 1.0);
    CHECK(e >= 1.0);
    CHECK(e == doctest::Approx(2.0).epsilon(0.01)); // max curvature a/b^2
    CHECK_THROWS_AS(normal_holder_seminorm(make_triangle(), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(normal_holder_seminorm(make_circle({0, 0}, 1.0), 1.5), std::invalid_argument);
}

TEST_CASE("smooth approximation of the triangle") {
    auto t = make_triangle();
    double base = t.perimeter();
    double x1_base = integrate_on_curve(t, 4096, [](Vec2 p) { return p.x; });

    double prev_perimeter_gap = 1e300, prev_x1_gap = 1e300;
    for (int j : {8, 16, 32, 64}) {
        auto gj = smooth_approximation(t, j);
        CHECK(gj.kind() == InterfaceCurve::Kind::LevelSetSmoothed);
        CHECK(gj.smoothing_level() == j);
        // enclosed region contains the base one, and stays within 2/j
        double supdist = 0.0;
        for (int k = 0; k < 256; ++k) {
            Vec2 p = gj.point_at(gj.perimeter() * k / 256.0);
            double d = t.signed_distance(p);
            CHECK(d > 0.0);
            supdist = std::max(supdist, d);
        }
        CHECK(supdist <= 2.0 / j);
        double per_gap = std::fabs(gj.perimeter() - base);
        double x1_gap =
            std::fabs(integrate_on_curve(gj, 4096, [](Vec2 p) { return p.x; }) - x1_base);
        if (j >= 16) {
            CHECK(per_gap < prev_perimeter_gap);
            CHECK(x1_gap < prev_x1_gap);
        }
        prev_perimeter_gap = per_gap;
        prev_x1_gap = x1_gap;
    }
    // the offset shrinks like 1/j, so Richardson over j=32,64 lands on the limit
    double p32 = smooth_approximation(t, 32).perimeter();
    double p64 = smooth_approximation(t, 64).perimeter();
    CHECK(2.0 * p64 - p32 == doctest::Approx(1.7071068).epsilon(2e-3));
}

TEST_CASE("smooth approximation of a circle is a larger circle") {
    auto c = make_circle({0.0, 0.0}, 0.7);
    for (int j : {8, 32}) {
        auto gj = smooth_approximation(c, j);
        CHECK(gj.perimeter() == doctest::Approx(2.0 * kPi * (0.7 + 1.0 / j)).epsilon(1e-3));
        for (int k = 0; k < 64; ++k)
            CHECK(norm(gj.point_at(gj.perimeter() * k / 64.0)) ==
                  doctest::Approx(0.7 + 1.0 / j).epsilon(1e-3));
    }
    CHECK_THROWS_AS(smooth_approximation(c, 0), std::invalid_argument);
    // level set escaping a tight domain is rejected
    CHECK_THROWS_AS(smooth_approximation(c, 4, Domain::disk({0, 0}, 0.9)),
                    std::invalid_argument);
}

TEST_CASE("perimeter bound check") {
    auto c = make_circle({0, 0}, 1.0);
    CHECK(perimeter_bound_check(c, 1.51));      // 2 pi <= 6.3001
    CHECK(!perimeter_bound_check(c, 1.2));      // 2 pi > 4.84
    auto big = make_circle({0, 0}, 10.0 / (2.0 * kPi)); // perimeter 10
    CHECK(!perimeter_bound_check(big, 1.0));
    CHECK_THROWS_AS(perimeter_bound_check(c, -0.5), std::invalid_argument);
}

TEST_CASE("parametric curve parametrization is consistent") {
    auto e = make_ellipse({0.3, -0.2}, 1.2, 0.8);
    CHECK(e.enclosed_area() == doctest::Approx(kPi * 1.2 * 0.8).epsilon(1e-4));
    for (double s : {0.1, 1.7, 4.4}) {
        Vec2 p = e.point_at(s);
        CHECK(std::fabs(e.signed_distance(p)) < 1e-10);
        CHECK(e.project_arclength(p) == doctest::Approx(s).epsilon(1e-6));
        CHECK(distance(e.closest_point(p + 0.05 * e.normal_at(s)), p) < 2e-3);
    }
    CHECK(norm(e.tangent_at(2.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("signed distance field wrapper") {
    SignedDistanceField d(make_circle({0, 0}, 1.0));
    CHECK(d({1.5, 0.0}) == doctest::Approx(0.5));
    CHECK(d({0.0, 0.0}) == doctest::Approx(-1.0));
    Vec2 g = d.gradient_direction({1.5, 0.0});
    CHECK(g.x == doctest::Approx(1.0));
    Vec2 gi = d.gradient_direction({0.5, 0.0}); // inside: still points outward
    CHECK(gi.x == doctest::Approx(1.0));
    CHECK(d.source().perimeter() == doctest::Approx(2.0 * kPi));
}

TEST_CASE("arclength sampling honors spacing and corners") {
    auto t = make_triangle();
    auto arcs = t.sample_arclengths(0.06);
    bool corner0 = false, corner1 = false, corner2 = false;
    for (double s : arcs) {
        Vec2 p = t.point_at(s);
        if (distance(p, {0, 0}) < 1e-14) corner0 = true;
        if (distance(p, {0.5, 0}) < 1e-14) corner1 = true;
        if (distance(p, {0, 0.5}) < 1e-14) corner2 = true;
    }
    CHECK(corner0);
    CHECK(corner1);
    CHECK(corner2);
    for (size_t i = 0; i + 1 < arcs.size(); ++i) CHECK(arcs[i + 1] - arcs[i] <= 0.06 + 1e-12);
}
