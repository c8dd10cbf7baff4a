#pragma once

#include "curvefem/vec2.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace curvefem::detail {

/// Incremental Bowyer-Watson triangulation with constraint edge recovery by
/// flipping. Intended for well-separated point sets (mesh generation).
class Delaunay {
  public:
    explicit Delaunay(const std::vector<Vec2>& points);

    /// Force segment (a,b) (point indices) to appear as an edge.
    void insert_constraint(int a, int b);

    bool edge_exists(int a, int b) const;

    /// Triangles over the real points only, ccw.
    std::vector<std::array<int, 3>> extract() const;

  private:
    struct Tri {
        std::array<int, 3> v{};
        std::array<int, 3> n{}; // n[i]: neighbor opposite v[i], -1 at the hull
    };

    double orient(int a, int b, int c) const;
    bool incircle(const Tri& t, int p) const;
    int locate(int p, int hint) const;
    void insert_point(int p, int hint);
    int index_in(const Tri& t, int v) const;
    std::vector<int> triangles_around(int v) const;
    void flip(int t1, int e1);

    std::vector<Vec2> pts_;
    int n_real_ = 0;
    std::vector<Tri> tris_;
    std::vector<uint8_t> alive_;
    mutable std::vector<int> vert2tri_;
};

} // namespace curvefem::detail
