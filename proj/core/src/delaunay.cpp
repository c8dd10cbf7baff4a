#include "delaunay.hpp"

#include "curvefem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>

namespace curvefem::detail {

namespace {
// spatially coherent insertion order: serpentine over coarse grid cells
std::vector<int> insertion_order(const std::vector<Vec2>& pts) {
    Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi{-lo.x, -lo.y};
    for (const auto& p : pts) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    int cells = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(pts.size()) / 4.0)));
    double sx = (hi.x - lo.x) / cells + 1e-300, sy = (hi.y - lo.y) / cells + 1e-300;
    std::vector<int> order(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) order[i] = static_cast<int>(i);
    auto key = [&](int i) {
        int cy = std::min(cells - 1, static_cast<int>((pts[i].y - lo.y) / sy));
        int cx = std::min(cells - 1, static_cast<int>((pts[i].x - lo.x) / sx));
        if (cy % 2) cx = cells - 1 - cx;
        return std::pair{cy * cells + cx, i};
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
    return order;
}
} // namespace

Delaunay::Delaunay(const std::vector<Vec2>& points) : pts_(points) {
    n_real_ = static_cast<int>(pts_.size());
    if (n_real_ < 3) throw MeshingError("delaunay: need at least 3 points");

    Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi{-lo.x, -lo.y};
    for (const auto& p : pts_) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    Vec2 c = 0.5 * (lo + hi);
    double ext = 64.0 * std::max({hi.x - lo.x, hi.y - lo.y, 1e-6});
    pts_.push_back({c.x - 2.0 * ext, c.y - ext});
    pts_.push_back({c.x + 2.0 * ext, c.y - ext});
    pts_.push_back({c.x, c.y + 2.0 * ext});

    tris_.push_back({{n_real_, n_real_ + 1, n_real_ + 2}, {-1, -1, -1}});
    alive_.push_back(1);
    vert2tri_.assign(pts_.size(), 0);

    int hint = 0;
    for (int p : insertion_order(points)) {
        insert_point(p, hint);
        hint = vert2tri_[p];
    }
}

double Delaunay::orient(int a, int b, int c) const {
    return cross(pts_[b] - pts_[a], pts_[c] - pts_[a]);
}

bool Delaunay::incircle(const Tri& t, int p) const {
    Vec2 pp = pts_[p];
    Vec2 a = pts_[t.v[0]] - pp, b = pts_[t.v[1]] - pp, c = pts_[t.v[2]] - pp;
    double a2 = norm2(a), b2 = norm2(b), c2 = norm2(c);
    double det = a.x * (b.y * c2 - c.y * b2) - a.y * (b.x * c2 - c.x * b2) +
                 a2 * (b.x * c.y - c.x * b.y);
    return det > 0.0;
}

int Delaunay::index_in(const Tri& t, int v) const {
    for (int i = 0; i < 3; ++i)
        if (t.v[i] == v) return i;
    return -1;
}

int Delaunay::locate(int p, int hint) const {
    int cur = (hint >= 0 && hint < static_cast<int>(tris_.size()) && alive_[hint]) ? hint : -1;
    if (cur < 0)
        for (size_t i = 0; i < tris_.size(); ++i)
            if (alive_[i]) {
                cur = static_cast<int>(i);
                break;
            }
    size_t guard = 4 * tris_.size() + 64;
    while (guard--) {
        const Tri& t = tris_[cur];
        int next = -1;
        for (int i = 0; i < 3; ++i) {
            if (orient(t.v[(i + 1) % 3], t.v[(i + 2) % 3], p) < 0.0) {
                next = t.n[i];
                break;
            }
        }
        if (next < 0) return cur;
        cur = next;
    }
    // fallback: linear scan
    for (size_t i = 0; i < tris_.size(); ++i) {
        if (!alive_[i]) continue;
        const Tri& t = tris_[i];
        bool inside = true;
        for (int e = 0; e < 3 && inside; ++e)
            inside = orient(t.v[(e + 1) % 3], t.v[(e + 2) % 3], p) >= 0.0;
        if (inside) return static_cast<int>(i);
    }
    throw MeshingError("delaunay: point location failed");
}

void Delaunay::insert_point(int p, int hint) {
    int t0 = locate(p, hint);

    // grow the cavity of circumcircles containing p
    std::vector<int> cavity{t0};
    std::vector<uint8_t> in_cavity(tris_.size(), 0);
    in_cavity[t0] = 1;
    for (size_t k = 0; k < cavity.size(); ++k) {
        const Tri t = tris_[cavity[k]];
        for (int i = 0; i < 3; ++i) {
            int nb = t.n[i];
            if (nb < 0 || in_cavity[nb]) continue;
            if (incircle(tris_[nb], p)) {
                in_cavity[nb] = 1;
                cavity.push_back(nb);
            }
        }
    }

    // boundary loop of the cavity: edges (a,b) with outside neighbor
    struct BEdge {
        int a, b, outer;
    };
    std::vector<BEdge> boundary;
    for (int ct : cavity) {
        const Tri& t = tris_[ct];
        for (int i = 0; i < 3; ++i) {
            int nb = t.n[i];
            if (nb >= 0 && in_cavity[nb]) continue;
            boundary.push_back({t.v[(i + 1) % 3], t.v[(i + 2) % 3], nb});
        }
    }
    for (int ct : cavity) alive_[ct] = 0;

    std::unordered_map<int, int> start_of, end_of; // boundary vertex -> new tri
    std::vector<int> created;
    created.reserve(boundary.size());
    for (const auto& e : boundary) {
        Tri nt;
        nt.v = {p, e.a, e.b};
        nt.n = {-1, -1, -1};
        int idx = static_cast<int>(tris_.size());
        tris_.push_back(nt);
        alive_.push_back(1);
        created.push_back(idx);
        tris_[idx].n[0] = e.outer;
        start_of[e.a] = idx;
        end_of[e.b] = idx;
        vert2tri_[p] = idx;
        vert2tri_[e.a] = idx;
        vert2tri_[e.b] = idx;
    }
    // outer neighbor pointers: locate the edge (b,a) in the outer triangle
    for (size_t k = 0; k < boundary.size(); ++k) {
        const auto& e = boundary[k];
        if (e.outer < 0) continue;
        Tri& ot = tris_[e.outer];
        for (int i = 0; i < 3; ++i)
            if (ot.v[(i + 1) % 3] == e.b && ot.v[(i + 2) % 3] == e.a) ot.n[i] = created[k];
    }
    // ring links between the new triangles
    for (size_t k = 0; k < boundary.size(); ++k) {
        const auto& e = boundary[k];
        int t = created[k];
        tris_[t].n[2] = end_of[e.a];   // across edge (p, a)
        tris_[t].n[1] = start_of[e.b]; // across edge (p, b)
    }
}

std::vector<int> Delaunay::triangles_around(int v) const {
    int t0 = vert2tri_[v];
    if (t0 < 0 || !alive_[t0] || index_in(tris_[t0], v) < 0) {
        t0 = -1;
        for (size_t i = 0; i < tris_.size(); ++i)
            if (alive_[i] && index_in(tris_[i], v) >= 0) {
                t0 = static_cast<int>(i);
                break;
            }
        if (t0 < 0) throw MeshingError("delaunay: lost vertex");
        vert2tri_[v] = t0;
    }
    std::vector<int> out;
    int cur = t0;
    size_t guard = tris_.size() + 8;
    do {
        out.push_back(cur);
        int i = index_in(tris_[cur], v);
        cur = tris_[cur].n[(i + 1) % 3]; // across edge (v, v[i+2])
        if (cur < 0) throw MeshingError("delaunay: open fan around vertex");
    } while (cur != t0 && guard--);
    return out;
}

bool Delaunay::edge_exists(int a, int b) const {
    for (int t : triangles_around(a))
        if (index_in(tris_[t], b) >= 0) return true;
    return false;
}

void Delaunay::flip(int t1, int e1) {
    // t1 = (p,u,v) with shared edge (u,v) at slot e1; t2 = (q,v,u)
    Tri& T1 = tris_[t1];
    int p = T1.v[e1], u = T1.v[(e1 + 1) % 3], v = T1.v[(e1 + 2) % 3];
    int t2 = T1.n[e1];
    Tri& T2 = tris_[t2];
    int e2 = -1;
    for (int i = 0; i < 3; ++i)
        if (T2.v[(i + 1) % 3] == v && T2.v[(i + 2) % 3] == u) e2 = i;
    if (e2 < 0) throw MeshingError("delaunay: broken adjacency in flip");
    int q = T2.v[e2];

    int n_pu = T1.n[(e1 + 2) % 3]; // across (p,u)
    int n_pv = T1.n[(e1 + 1) % 3]; // across (p,v)
    int n_qv = T2.n[(e2 + 2) % 3]; // across (q,v)
    int n_qu = T2.n[(e2 + 1) % 3]; // across (q,u)

    T1.v = {p, u, q};
    T1.n = {n_qu, t2, n_pu};
    T2.v = {p, q, v};
    T2.n = {n_qv, n_pv, t1};

    auto fix = [&](int t, int old_t, int new_t) {
        if (t < 0) return;
        for (int i = 0; i < 3; ++i)
            if (tris_[t].n[i] == old_t) tris_[t].n[i] = new_t;
    };
    fix(n_qu, t2, t1);
    fix(n_pv, t1, t2);
    vert2tri_[p] = t1;
    vert2tri_[u] = t1;
    vert2tri_[q] = t1;
    vert2tri_[v] = t2;
}

void Delaunay::insert_constraint(int a, int b) {
    if (edge_exists(a, b)) return;

    auto proper_cross = [&](int u, int v) {
        double o1 = orient(a, b, u), o2 = orient(a, b, v);
        double o3 = orient(u, v, a), o4 = orient(u, v, b);
        return o1 * o2 < 0.0 && o3 * o4 < 0.0;
    };

    // collect the run of edges crossed by segment (a, b)
    std::deque<std::pair<int, int>> crossing;
    int cur = -1;
    for (int t : triangles_around(a)) {
        const Tri& T = tris_[t];
        int i = index_in(T, a);
        int u = T.v[(i + 1) % 3], v = T.v[(i + 2) % 3];
        if (proper_cross(u, v)) {
            crossing.emplace_back(u, v);
            cur = T.n[i];
            break;
        }
    }
    if (cur < 0) throw MeshingError("delaunay: constraint start not found");
    size_t guard = 4 * tris_.size();
    while (guard--) {
        const Tri& T = tris_[cur];
        if (index_in(T, b) >= 0) break;
        int next = -1;
        for (int i = 0; i < 3; ++i) {
            int u = T.v[(i + 1) % 3], v = T.v[(i + 2) % 3];
            auto [pu, pv] = crossing.back();
            if ((u == pu && v == pv) || (u == pv && v == pu)) continue;
            if (proper_cross(u, v)) {
                crossing.emplace_back(u, v);
                next = T.n[i];
                break;
            }
        }
        if (next < 0) throw MeshingError("delaunay: constraint march failed");
        cur = next;
    }

    // flip away the crossing edges
    size_t stall = 0;
    while (!crossing.empty()) {
        if (++stall > 64 * (crossing.size() + 4))
            throw MeshingError("delaunay: constraint recovery stalled");
        auto [u, v] = crossing.front();
        crossing.pop_front();
        int t1 = -1, e1 = -1;
        for (int t : triangles_around(u)) {
            const Tri& T = tris_[t];
            for (int i = 0; i < 3; ++i)
                if (T.v[(i + 1) % 3] == u && T.v[(i + 2) % 3] == v) {
                    t1 = t;
                    e1 = i;
                }
        }
        if (t1 < 0) continue; // already flipped away
        const Tri& T1 = tris_[t1];
        int p = T1.v[e1];
        int t2 = T1.n[e1];
        const Tri& T2 = tris_[t2];
        int q = -1;
        for (int i = 0; i < 3; ++i)
            if (T2.v[(i + 1) % 3] == v && T2.v[(i + 2) % 3] == u) q = T2.v[i];
        // flip only when the quad is strictly convex
        if (orient(p, u, q) <= 0.0 || orient(p, q, v) <= 0.0) {
            crossing.emplace_back(u, v);
            continue;
        }
        flip(t1, e1);
        stall = 0;
        if (proper_cross(p, q)) crossing.emplace_back(p, q);
    }
    if (!edge_exists(a, b)) throw MeshingError("delaunay: constraint edge not recovered");
}

std::vector<std::array<int, 3>> Delaunay::extract() const {
    std::vector<std::array<int, 3>> out;
    for (size_t i = 0; i < tris_.size(); ++i) {
        if (!alive_[i]) continue;
        const Tri& t = tris_[i];
        if (t.v[0] >= n_real_ || t.v[1] >= n_real_ || t.v[2] >= n_real_) continue;
        out.push_back(t.v);
    }
    return out;
}

} // namespace curvefem::detail
