#include "curvefem/mesh.hpp"

#include "curvefem/errors.hpp"
#include "delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <unordered_map>

namespace curvefem {

namespace {

constexpr double kPi = std::numbers::pi;

uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
}

Side side_of_triangle(const TriangleMesh& mesh, int t, const InterfaceCurve& curve) {
    Vec2 c = mesh.centroid(t);
    double d = curve.signed_distance(c);
    if (std::fabs(d) < 1e-12) {
        // deterministic tie-break: nudge along the inward median
        const auto& tri = mesh.triangles[t];
        int longest = 0;
        double best = -1.0;
        for (int e = 0; e < 3; ++e) {
            double len = distance(mesh.vertices[tri[(e + 1) % 3]], mesh.vertices[tri[(e + 2) % 3]]);
            if (len > best) {
                best = len;
                longest = e;
            }
        }
        Vec2 mid = 0.5 * (mesh.vertices[tri[(longest + 1) % 3]] + mesh.vertices[tri[(longest + 2) % 3]]);
        Vec2 dir = normalized(mesh.vertices[tri[longest]] - mid);
        d = curve.signed_distance(c + 1e-9 * dir);
    }
    return d < 0.0 ? Side::Inside : Side::Outside;
}

void assign_labels(TriangleMesh& mesh, const InterfaceCurve& curve) {
    mesh.side.resize(mesh.triangles.size());
    for (size_t t = 0; t < mesh.triangles.size(); ++t)
        mesh.side[t] = side_of_triangle(mesh, static_cast<int>(t), curve);
}

std::unordered_map<uint64_t, std::pair<int, int>> build_edge_map(const TriangleMesh& mesh) {
    std::unordered_map<uint64_t, std::pair<int, int>> edges;
    edges.reserve(mesh.triangles.size() * 2);
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int e = 0; e < 3; ++e) {
            auto key = edge_key(tri[e], tri[(e + 1) % 3]);
            auto [it, fresh] = edges.try_emplace(key, static_cast<int>(t), -1);
            if (!fresh) it->second.second = static_cast<int>(t);
        }
    }
    return edges;
}

void finalize_interface_edges(TriangleMesh& mesh, const InterfaceCurve& curve) {
    auto edges = build_edge_map(mesh);
    for (auto& ie : mesh.interface_edges) {
        auto it = edges.find(edge_key(ie.a, ie.b));
        if (it == edges.end() || it->second.second < 0)
            throw MeshingError("interface edge is not shared by two triangles");
        int t1 = it->second.first, t2 = it->second.second;
        if (mesh.side[t1] == mesh.side[t2])
            throw MeshingError("interface edge does not separate inside from outside");
        if (mesh.side[t1] == Side::Inside) {
            ie.inside_tri = t1;
            ie.outside_tri = t2;
        } else {
            ie.inside_tri = t2;
            ie.outside_tri = t1;
        }
        if (norm2(ie.normal) == 0.0) ie.normal = curve.normal_at(ie.s_mid);
    }
}

// --------------------------------------------------------------------------
// Structured concentric mesh: disk domain, concentric circular interface.
// Ring m has 6m vertices; the interface and the outer boundary are exact
// ring radii. Vertex coordinates are generated mirror-exact about the
// horizontal axis through the center.

TriangleMesh build_concentric(const Domain& domain, const InterfaceCurve& curve, double h) {
    const double rho = curve.circle_radius();
    const double R = domain.radius;
    const Vec2 c = domain.center;

    const int k1 = std::max(2, static_cast<int>(std::ceil(rho / (0.95 * h))));
    const double d1 = rho / k1;
    const int k2 = std::max(2, static_cast<int>(std::ceil((R - rho) / d1)));
    const double d2 = (R - rho) / k2;
    const int rings = k1 + k2;

    TriangleMesh mesh;
    mesh.domain = domain;
    mesh.h = h;

    auto ring_radius = [&](int m) { return m <= k1 ? m * d1 : rho + (m - k1) * d2; };

    std::vector<int> base(rings + 1, 0);
    mesh.vertices.push_back(c);
    for (int m = 1; m <= rings; ++m) {
        base[m] = static_cast<int>(mesh.vertices.size());
        const int n = 6 * m;
        const double r = ring_radius(m);
        std::vector<Vec2> ring(n);
        for (int q = 0; q <= n / 2; ++q) {
            double th = 2.0 * kPi * q / n;
            ring[q] = {c.x + r * std::cos(th), c.y + r * std::sin(th)};
        }
        for (int q = n / 2 + 1; q < n; ++q)
            ring[q] = {ring[n - q].x, 2.0 * c.y - ring[n - q].y};
        mesh.vertices.insert(mesh.vertices.end(), ring.begin(), ring.end());
    }

    // center fan
    for (int q = 0; q < 6; ++q)
        mesh.triangles.push_back({0, base[1] + q, base[1] + (q + 1) % 6});
    // bands
    for (int m = 1; m < rings; ++m) {
        const int ni = 6 * m, no = 6 * (m + 1);
        for (int s = 0; s < 6; ++s) {
            auto I = [&](int t) { return base[m] + (s * m + t) % ni; };
            auto O = [&](int t) { return base[m + 1] + (s * (m + 1) + t) % no; };
            for (int t = 0; t <= m; ++t) mesh.triangles.push_back({O(t), O(t + 1), I(t)});
            for (int t = 0; t < m; ++t) mesh.triangles.push_back({I(t), O(t + 1), I(t + 1)});
        }
    }

    mesh.boundary_vertex.assign(mesh.vertices.size(), 0);
    for (int q = 0; q < 6 * rings; ++q) mesh.boundary_vertex[base[rings] + q] = 1;

    const int ni = 6 * k1;
    const double L = 2.0 * kPi * rho;
    for (int q = 0; q < ni; ++q) {
        TriangleMesh::InterfaceEdge ie;
        ie.a = base[k1] + q;
        ie.b = base[k1] + (q + 1) % ni;
        ie.s_a = L * q / ni;
        ie.s_b = L * (q + 1) / ni;
        ie.s_mid = 0.5 * (ie.s_a + ie.s_b);
        double thm = ie.s_mid / rho;
        ie.normal = {std::cos(thm), std::sin(thm)};
        mesh.interface_edges.push_back(ie);
    }

    assign_labels(mesh, curve);
    finalize_interface_edges(mesh, curve);
    return mesh;
}

// --------------------------------------------------------------------------
// General fitted mesh: protected point sets + Delaunay + constraint recovery.

struct PointHash {
    double cell;
    std::unordered_map<uint64_t, std::vector<Vec2>> bins;
    uint64_t key(int cx, int cy) const {
        return (static_cast<uint64_t>(static_cast<uint32_t>(cx)) << 32) |
               static_cast<uint32_t>(cy);
    }
    void insert(Vec2 p) {
        int cx = static_cast<int>(std::floor(p.x / cell)), cy = static_cast<int>(std::floor(p.y / cell));
        bins[key(cx, cy)].push_back(p);
    }
    double min_dist(Vec2 p) const {
        int cx = static_cast<int>(std::floor(p.x / cell)), cy = static_cast<int>(std::floor(p.y / cell));
        double best = std::numeric_limits<double>::max();
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                auto it = bins.find(key(cx + dx, cy + dy));
                if (it == bins.end()) continue;
                for (const auto& q : it->second) best = std::min(best, distance(p, q));
            }
        return best;
    }
};

TriangleMesh build_general(const Domain& domain, const InterfaceCurve& curve, double h) {
    TriangleMesh mesh;
    mesh.domain = domain;
    mesh.h = h;

    std::vector<Vec2> pts;

    // domain boundary
    int nb = 0;
    if (domain.kind == Domain::Kind::Disk) {
        nb = domain.boundary_resolution > 0
                 ? domain.boundary_resolution
                 : std::max(12, static_cast<int>(std::ceil(2.0 * kPi * domain.radius / h)));
        for (int i = 0; i < nb; ++i) {
            double th = 2.0 * kPi * i / nb;
            pts.push_back(domain.center + Vec2{domain.radius * std::cos(th), domain.radius * std::sin(th)});
        }
    } else {
        Vec2 corners[4] = {domain.lo,
                           {domain.hi.x, domain.lo.y},
                           domain.hi,
                           {domain.lo.x, domain.hi.y}};
        for (int s = 0; s < 4; ++s) {
            Vec2 a = corners[s], b = corners[(s + 1) % 4];
            int m = std::max(1, static_cast<int>(std::ceil(distance(a, b) / h)));
            for (int j = 0; j < m; ++j) pts.push_back(a + (static_cast<double>(j) / m) * (b - a));
        }
        nb = static_cast<int>(pts.size());
    }

    // interface samples
    auto arcs = curve.sample_arclengths(h);
    const int m_g = static_cast<int>(arcs.size());
    const int g0 = static_cast<int>(pts.size());
    double min_sep = std::numeric_limits<double>::max();
    for (double s : arcs) {
        Vec2 p = curve.point_at(s);
        min_sep = std::min(min_sep, domain.boundary_distance(p));
        pts.push_back(p);
    }
    if (!(min_sep > 0.0)) throw std::invalid_argument("triangulate: curve not strictly inside the domain");
    if (min_sep < 2.0 * h)
        throw MeshingError("triangulate: h too coarse to separate the interface from the boundary");

    PointHash hash{h, {}};
    for (const auto& p : pts) hash.insert(p);

    auto try_accept = [&](Vec2 p) {
        if (!(domain.boundary_distance(p) > 0.62 * h)) return;
        if (std::fabs(curve.signed_distance(p)) < 0.72 * h) return;
        if (hash.min_dist(p) < 0.52 * h) return;
        hash.insert(p);
        pts.push_back(p);
    };

    // offset layers flanking the interface
    const double off = 0.866 * h;
    for (int i = 0; i < m_g; ++i) {
        double s0 = arcs[i];
        double s1 = (i + 1 < m_g) ? arcs[i + 1] : curve.perimeter();
        double sm = 0.5 * (s0 + s1);
        Vec2 p = curve.point_at(sm), n = curve.normal_at(sm);
        try_accept(p + off * n);
        try_accept(p - off * n);
    }

    // background fill
    const double row = 0.866 * h;
    if (domain.kind == Domain::Kind::Disk) {
        try_accept(domain.center);
        int rings = static_cast<int>((domain.radius - 0.55 * h) / row);
        for (int k = 1; k <= rings; ++k) {
            double r = k * row;
            int n = std::max(6, static_cast<int>(std::round(2.0 * kPi * r / h)));
            double offset = (k % 2) ? kPi / n : 0.0;
            for (int q = 0; q < n; ++q) {
                double th = offset + 2.0 * kPi * q / n;
                try_accept(domain.center + Vec2{r * std::cos(th), r * std::sin(th)});
            }
        }
    } else {
        int nrows = static_cast<int>((domain.hi.y - domain.lo.y) / row);
        for (int r = 1; r < nrows; ++r) {
            double y = domain.lo.y + r * row;
            double x0 = domain.lo.x + ((r % 2) ? 0.5 * h : h);
            for (double x = x0; x < domain.hi.x - 0.45 * h; x += h) try_accept({x, y});
        }
    }

    detail::Delaunay dt(pts);
    for (int i = 0; i < m_g; ++i) dt.insert_constraint(g0 + i, g0 + (i + 1) % m_g);

    mesh.vertices = pts;
    mesh.triangles = dt.extract();
    for (auto& t : mesh.triangles) {
        double a2 = cross(mesh.vertices[t[1]] - mesh.vertices[t[0]],
                          mesh.vertices[t[2]] - mesh.vertices[t[0]]);
        if (a2 < 0.0) std::swap(t[1], t[2]);
    }

    mesh.boundary_vertex.assign(mesh.vertices.size(), 0);
    for (int i = 0; i < nb; ++i) mesh.boundary_vertex[i] = 1;

    const double L = curve.perimeter();
    for (int i = 0; i < m_g; ++i) {
        TriangleMesh::InterfaceEdge ie;
        ie.a = g0 + i;
        ie.b = g0 + (i + 1) % m_g;
        ie.s_a = arcs[i];
        ie.s_b = (i + 1 < m_g) ? arcs[i + 1] : L;
        ie.s_mid = 0.5 * (ie.s_a + ie.s_b);
        ie.normal = curve.normal_at(ie.s_mid);
        mesh.interface_edges.push_back(ie);
    }

    assign_labels(mesh, curve);
    finalize_interface_edges(mesh, curve);
    return mesh;
}

Vec2 snap_to_curve(const InterfaceCurve& curve, Vec2 p, double h) {
    if (curve.kind() == InterfaceCurve::Kind::Circle) {
        Vec2 u = p - curve.circle_center();
        return curve.circle_center() + (curve.circle_radius() / norm(u)) * u;
    }
    double d0 = curve.signed_distance(p);
    if (std::fabs(d0) < 1e-13) return p;
    Vec2 n = curve.normal_at(curve.project_arclength(p));
    double lo = -0.75 * h, hi = 0.75 * h;
    auto f = [&](double t) { return curve.signed_distance(p + t * n); };
    if (!(f(lo) < 0.0 && f(hi) > 0.0)) {
        lo *= 2.0;
        hi *= 2.0;
        if (!(f(lo) < 0.0 && f(hi) > 0.0))
            throw MeshingError("refine: interface projection failed to bracket");
    }
    for (int it = 0; it < 64; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return p + 0.5 * (lo + hi) * n;
}

} // namespace

double TriangleMesh::triangle_area(int t) const {
    const auto& tr = triangles[t];
    return 0.5 * cross(vertices[tr[1]] - vertices[tr[0]], vertices[tr[2]] - vertices[tr[0]]);
}

Vec2 TriangleMesh::centroid(int t) const {
    const auto& tr = triangles[t];
    return (vertices[tr[0]] + vertices[tr[1]] + vertices[tr[2]]) / 3.0;
}

double TriangleMesh::min_angle_deg() const {
    double worst = 180.0;
    for (const auto& tr : triangles) {
        for (int i = 0; i < 3; ++i) {
            Vec2 a = vertices[tr[i]], b = vertices[tr[(i + 1) % 3]], c = vertices[tr[(i + 2) % 3]];
            double ang = std::acos(std::clamp(dot(normalized(b - a), normalized(c - a)), -1.0, 1.0));
            worst = std::min(worst, ang * 180.0 / kPi);
        }
    }
    return worst;
}

double TriangleMesh::total_area(Side s) const {
    double a = 0.0;
    for (size_t t = 0; t < triangles.size(); ++t)
        if (side[t] == s) a += triangle_area(static_cast<int>(t));
    return a;
}

void TriangleMesh::write_text(std::ostream& os) const {
    os << "vertices " << vertices.size() << " / triangles " << triangles.size() << "\n";
    os.precision(17);
    for (const auto& v : vertices) os << v.x << " " << v.y << "\n";
    for (const auto& t : triangles) os << t[0] << " " << t[1] << " " << t[2] << "\n";
}

TriangleMesh triangulate(const Domain& domain, const InterfaceCurve& curve, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("triangulate: h must be positive");
    if (domain.kind == Domain::Kind::Disk && curve.kind() == InterfaceCurve::Kind::Circle &&
        distance(domain.center, curve.circle_center()) < 1e-14 &&
        curve.circle_radius() < domain.radius) {
        if (domain.radius - curve.circle_radius() < 2.0 * h)
            throw MeshingError("triangulate: h too coarse to separate the interface from the boundary");
        return build_concentric(domain, curve, h);
    }
    return build_general(domain, curve, h);
}

TriangleMesh refine(const TriangleMesh& mesh, const InterfaceCurve& curve) {
    TriangleMesh out;
    out.domain = mesh.domain;
    out.h = 0.5 * mesh.h;
    out.vertices = mesh.vertices;
    out.boundary_vertex = mesh.boundary_vertex;

    // adjacency counts decide which edges lie on the outer boundary
    std::unordered_map<uint64_t, int> edge_count;
    for (const auto& tr : mesh.triangles)
        for (int e = 0; e < 3; ++e) edge_count[edge_key(tr[e], tr[(e + 1) % 3])]++;

    std::unordered_map<uint64_t, int> interface_parent;
    for (size_t i = 0; i < mesh.interface_edges.size(); ++i)
        interface_parent[edge_key(mesh.interface_edges[i].a, mesh.interface_edges[i].b)] =
            static_cast<int>(i);

    const double L = curve.perimeter();
    std::unordered_map<uint64_t, int> midpoint;
    std::unordered_map<uint64_t, double> mid_arc;
    auto midpoint_of = [&](int a, int b) {
        auto key = edge_key(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        Vec2 m = 0.5 * (mesh.vertices[a] + mesh.vertices[b]);
        bool is_interface = interface_parent.count(key) > 0;
        bool is_boundary = edge_count[key] == 1;
        if (is_interface) {
            m = snap_to_curve(curve, m, mesh.h);
            double pe_sa = mesh.interface_edges[interface_parent[key]].s_a;
            double s = curve.project_arclength(m);
            if (s < pe_sa - 0.5 * L) s += L;
            mid_arc[key] = s;
        } else if (is_boundary && mesh.domain.kind == Domain::Kind::Disk) {
            Vec2 u = m - mesh.domain.center;
            m = mesh.domain.center + (mesh.domain.radius / norm(u)) * u;
        }
        int idx = static_cast<int>(out.vertices.size());
        out.vertices.push_back(m);
        out.boundary_vertex.push_back(is_boundary ? 1 : 0);
        midpoint[key] = idx;
        return idx;
    };

    out.triangles.reserve(mesh.triangles.size() * 4);
    for (const auto& tr : mesh.triangles) {
        int mab = midpoint_of(tr[0], tr[1]);
        int mbc = midpoint_of(tr[1], tr[2]);
        int mca = midpoint_of(tr[2], tr[0]);
        out.triangles.push_back({tr[0], mab, mca});
        out.triangles.push_back({mab, tr[1], mbc});
        out.triangles.push_back({mca, mbc, tr[2]});
        out.triangles.push_back({mab, mbc, mca});
    }

    for (const auto& pe : mesh.interface_edges) {
        auto key = edge_key(pe.a, pe.b);
        int m = midpoint[key];
        double sm = mid_arc[key];
        TriangleMesh::InterfaceEdge e1, e2;
        e1.a = pe.a;
        e1.b = m;
        e1.s_a = pe.s_a;
        e1.s_b = sm;
        e1.s_mid = 0.5 * (pe.s_a + sm);
        e1.normal = curve.normal_at(e1.s_mid);
        e2.a = m;
        e2.b = pe.b;
        e2.s_a = sm;
        e2.s_b = pe.s_b;
        e2.s_mid = 0.5 * (sm + pe.s_b);
        e2.normal = curve.normal_at(e2.s_mid);
        out.interface_edges.push_back(e1);
        out.interface_edges.push_back(e2);
    }

    assign_labels(out, curve);
    finalize_interface_edges(out, curve);
    return out;
}

void check_mesh(const TriangleMesh& mesh) {
    const int nv = static_cast<int>(mesh.vertices.size());
    std::unordered_map<uint64_t, int> edge_count;
    for (const auto& tr : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            if (tr[e] < 0 || tr[e] >= nv) throw MeshingError("check: vertex index out of range");
            edge_count[edge_key(tr[e], tr[(e + 1) % 3])]++;
        }
    }
    for (const auto& [k, c] : edge_count)
        if (c != 1 && c != 2) throw MeshingError("check: non-conforming edge");
    for (size_t t = 0; t < mesh.triangles.size(); ++t)
        if (!(mesh.triangle_area(static_cast<int>(t)) > 1e-14))
            throw MeshingError("check: degenerate triangle");

    // Euler characteristic of a disk: V - E + F = 1
    long long euler = nv - static_cast<long long>(edge_count.size()) +
                      static_cast<long long>(mesh.triangles.size());
    if (euler != 1) throw MeshingError("check: Euler characteristic mismatch");

    // interface edges form one closed ccw cycle
    if (!mesh.interface_edges.empty()) {
        std::unordered_map<int, int> next;
        for (const auto& ie : mesh.interface_edges) {
            if (next.count(ie.a)) throw MeshingError("check: interface cycle branches");
            next[ie.a] = ie.b;
        }
        double area2 = 0.0;
        int start = mesh.interface_edges.front().a, cur = start;
        size_t steps = 0;
        do {
            auto it = next.find(cur);
            if (it == next.end()) throw MeshingError("check: interface cycle broken");
            area2 += cross(mesh.vertices[cur], mesh.vertices[it->second]);
            cur = it->second;
            if (++steps > mesh.interface_edges.size()) throw MeshingError("check: interface cycle too long");
        } while (cur != start);
        if (steps != mesh.interface_edges.size())
            throw MeshingError("check: interface edges form more than one cycle");
        if (!(area2 > 0.0)) throw MeshingError("check: interface cycle not ccw");
        for (const auto& ie : mesh.interface_edges) {
            if (ie.inside_tri < 0 || ie.outside_tri < 0)
                throw MeshingError("check: interface edge missing adjacency");
            if (mesh.side[ie.inside_tri] != Side::Inside ||
                mesh.side[ie.outside_tri] != Side::Outside)
                throw MeshingError("check: interface edge labels inconsistent");
        }
    }
}

} // namespace curvefem
