#pragma once

#include "curvefem/geometry.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace curvefem {

enum class Side : int8_t { Inside = 0, Outside = 1 };

/// Conforming triangulation of the domain, fitted so the interface is a union
/// of element edges.
struct TriangleMesh {
    Domain domain;
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles; // ccw
    std::vector<uint8_t> boundary_vertex;
    std::vector<Side> side; // per triangle

    struct InterfaceEdge {
        int a = -1, b = -1;          // vertex indices, ccw along the curve
        Vec2 normal{};               // outward at the edge midpoint
        int inside_tri = -1, outside_tri = -1;
        double s_a = 0.0, s_b = 0.0; // arclength of the endpoints
        double s_mid = 0.0;
    };
    std::vector<InterfaceEdge> interface_edges;

    double h = 0.0;

    double triangle_area(int t) const;
    Vec2 centroid(int t) const;
    double min_angle_deg() const;
    double total_area(Side s) const;

    void write_text(std::ostream& os) const;
};

/// Fitted mesh: curve samples (spacing <= h) and polygon corners become mesh
/// vertices; element side labels assigned by centroid signed distance.
TriangleMesh triangulate(const Domain& domain, const InterfaceCurve& curve, double h);

/// Uniform red refinement; new interface-edge midpoints are snapped onto the
/// curve and disk-boundary midpoints onto the boundary circle. h halves.
TriangleMesh refine(const TriangleMesh& mesh, const InterfaceCurve& curve);

/// Throws MeshingError when a structural invariant is violated.
void check_mesh(const TriangleMesh& mesh);

} // namespace curvefem
