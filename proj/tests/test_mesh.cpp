#include "curvefem/mesh.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

using namespace curvefem;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("concentric structured mesh invariants") {
    auto dom = Domain::disk({0, 0}, 2.0);
    auto circ = make_circle({0, 0}, 1.0);
    auto mesh = triangulate(dom, circ, 0.1);
    check_mesh(mesh);
    CHECK(mesh.min_angle_deg() >= 15.0);

    // interface-edge midpoints stay within h^2 of the circle (chord sagitta)
    for (const auto& e : mesh.interface_edges) {
        Vec2 mid = 0.5 * (mesh.vertices[e.a] + mesh.vertices[e.b]);
        CHECK(std::fabs(circ.signed_distance(mid)) <= 0.1 * 0.1);
        // interface vertices lie on the circle
        CHECK(std::fabs(circ.signed_distance(mesh.vertices[e.a])) < 1e-12);
    }

    // enclosed area converges: deficit of the inscribed polygon
    auto mesh5 = triangulate(dom, circ, 0.05);
    CHECK(std::fabs(mesh5.total_area(Side::Inside) - kPi) <= 0.01);

    // boundary vertices on the outer circle
    for (size_t v = 0; v < mesh.vertices.size(); ++v)
        if (mesh.boundary_vertex[v])
            CHECK(norm(mesh.vertices[v]) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("red refinement") {
    auto dom = Domain::disk({0, 0}, 2.0);
    auto circ = make_circle({0, 0}, 1.0);
    auto mesh = triangulate(dom, circ, 0.1);
    auto fine = refine(mesh, circ);
    check_mesh(fine);

    CHECK(fine.triangles.size() == 4 * mesh.triangles.size());
    CHECK(fine.h == doctest::Approx(0.05));
    CHECK(fine.interface_edges.size() == 2 * mesh.interface_edges.size());

    // projected interface midpoints are on the curve to 1e-10
    for (const auto& e : fine.interface_edges) {
        CHECK(std::fabs(circ.signed_distance(fine.vertices[e.a])) < 1e-10);
        CHECK(std::fabs(circ.signed_distance(fine.vertices[e.b])) < 1e-10);
    }
    // snapped boundary midpoints stay on the outer circle
    for (size_t v = 0; v < fine.vertices.size(); ++v)
        if (fine.boundary_vertex[v])
            CHECK(norm(fine.vertices[v]) == doctest::Approx(2.0).epsilon(1e-12));

    // children of an inside triangle away from the interface stay inside
    std::set<int> interface_verts;
    for (const auto& e : mesh.interface_edges) {
        interface_verts.insert(e.a);
        interface_verts.insert(e.b);
    }
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        bool touches = false;
        for (int v : mesh.triangles[t]) touches = touches || interface_verts.count(v);
        if (touches) continue;
        for (int c = 0; c < 4; ++c) CHECK(fine.side[4 * t + c] == mesh.side[t]);
    }
}

TEST_CASE("fitted triangle interface") {
    auto dom = Domain::disk({0, 0}, 1.0);
    auto tri = make_triangle();
    auto mesh = triangulate(dom, tri, 0.08);
    check_mesh(mesh);
    CHECK(mesh.min_angle_deg() >= 15.0);

    // the corners appear exactly in the vertex list
    for (Vec2 corner : {Vec2{0, 0}, Vec2{0.5, 0}, Vec2{0, 0.5}}) {
        bool found = false;
        for (const auto& v : mesh.vertices)
            if (v.x == corner.x && v.y == corner.y) found = true;
        CHECK(found);
    }
    // fitted polygon: inside area is exact
    CHECK(mesh.total_area(Side::Inside) == doctest::Approx(0.125).epsilon(1e-12));

    auto fine = refine(mesh, tri);
    check_mesh(fine);
    CHECK(fine.total_area(Side::Inside) == doctest::Approx(0.125).epsilon(1e-12));
    // polygon interface midpoints already lie on the edges
    for (const auto& e : fine.interface_edges)
        CHECK(std::fabs(tri.signed_distance(fine.vertices[e.a])) < 1e-12);
}

TEST_CASE("general path quality for an off-center circle") {
    auto dom = Domain::disk({0, 0}, 2.0);
    auto circ = make_circle({0.3, -0.2}, 0.9);
    auto mesh = triangulate(dom, circ, 0.1);
    check_mesh(mesh);
    CHECK(mesh.min_angle_deg() >= 15.0);
    CHECK(std::fabs(mesh.total_area(Side::Inside) - kPi * 0.81) < 0.02);
    auto fine = refine(mesh, circ);
    check_mesh(fine);
    for (const auto& e : fine.interface_edges)
        CHECK(std::fabs(circ.signed_distance(fine.vertices[e.a])) < 1e-10);
}

TEST_CASE("rectangle domain meshing") {
    auto dom = Domain::rectangle({-1.5, -1.0}, {1.5, 1.0});
    auto circ = make_circle({0, 0}, 0.5);
    auto mesh = triangulate(dom, circ, 0.1);
    check_mesh(mesh);
    CHECK(mesh.min_angle_deg() >= 15.0);
    double full = mesh.total_area(Side::Inside) + mesh.total_area(Side::Outside);
    CHECK(full == doctest::Approx(3.0 * 2.0).epsilon(1e-12));
}

TEST_CASE("meshing error paths") {
    auto dom = Domain::disk({0, 0}, 2.0);
    CHECK_THROWS_AS(triangulate(dom, make_circle({0, 0}, 1.0), -0.1), std::invalid_argument);
    // h too coarse to separate the interface from the boundary
    CHECK_THROWS_AS(triangulate(dom, make_circle({0, 0}, 1.9), 0.1), MeshingError);
    // curve not strictly inside
    CHECK_THROWS_AS(triangulate(dom, make_circle({1.5, 0}, 0.9), 0.05), std::invalid_argument);
}

TEST_CASE("mesh text export") {
    auto dom = Domain::disk({0, 0}, 1.0);
    auto mesh = triangulate(dom, make_circle({0, 0}, 0.4), 0.15);
    std::ostringstream os;
    mesh.write_text(os);
    std::istringstream is(os.str());
    std::string word;
    is >> word;
    CHECK(word == "vertices");
    size_t nv, nt;
    is >> nv >> word >> word >> nt;
    CHECK(nv == mesh.vertices.size());
    CHECK(nt == mesh.triangles.size());
    // count remaining lines
    std::string line;
    std::getline(is, line);
    size_t lines = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++lines;
    CHECK(lines == nv + nt);
}
