#include "curvefem/fem.hpp"

#include "curvefem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <tuple>

namespace curvefem {

double& SparseSystem::coeff(int i, int j) {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (col[k] == j) return val[k];
    throw SolverError("sparse: missing entry");
}

std::vector<double> SparseSystem::multiply(const std::vector<double>& x) const {
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
        y[i] = s;
    }
    return y;
}

namespace {

struct P1Gradients {
    Vec2 g[3];
    double area;
};

P1Gradients element_gradients(const TriangleMesh& mesh, int t) {
    const auto& tr = mesh.triangles[t];
    Vec2 p0 = mesh.vertices[tr[0]], p1 = mesh.vertices[tr[1]], p2 = mesh.vertices[tr[2]];
    double a2 = cross(p1 - p0, p2 - p0);
    if (!(a2 > 2e-14)) throw SolverError("assembly: singular element geometry");
    P1Gradients out;
    out.area = 0.5 * a2;
    out.g[0] = Vec2{p1.y - p2.y, p2.x - p1.x} / a2;
    out.g[1] = Vec2{p2.y - p0.y, p0.x - p2.x} / a2;
    out.g[2] = Vec2{p0.y - p1.y, p1.x - p0.x} / a2;
    return out;
}

} // namespace

SparseSystem assemble_stiffness(const TriangleMesh& mesh, const CoefficientField& A,
                                std::optional<Side> restrict_side) {
    const int n = static_cast<int>(mesh.vertices.size());
    std::vector<std::tuple<int, int, double>> trips;
    trips.reserve(mesh.triangles.size() * 9);
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        if (restrict_side && mesh.side[t] != *restrict_side) continue;
        auto eg = element_gradients(mesh, static_cast<int>(t));
        Matrix2 a = A(mesh.centroid(static_cast<int>(t)));
        const auto& tr = mesh.triangles[t];
        for (int i = 0; i < 3; ++i) {
            Vec2 agj[3] = {a * eg.g[0], a * eg.g[1], a * eg.g[2]};
            for (int j = 0; j < 3; ++j)
                trips.emplace_back(tr[i], tr[j], eg.area * dot(agj[j], eg.g[i]));
        }
    }
    std::sort(trips.begin(), trips.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });

    SparseSystem sys;
    sys.n = n;
    sys.row_ptr.assign(n + 1, 0);
    sys.rhs.assign(n, 0.0);
    sys.dirichlet.assign(n, 0);
    sys.dirichlet_value.assign(n, 0.0);
    for (size_t k = 0; k < trips.size();) {
        auto [i, j, v] = trips[k];
        double sum = v;
        size_t k2 = k + 1;
        while (k2 < trips.size() && std::get<0>(trips[k2]) == i && std::get<1>(trips[k2]) == j)
            sum += std::get<2>(trips[k2++]);
        sys.col.push_back(j);
        sys.val.push_back(sum);
        sys.row_ptr[i + 1]++;
        k = k2;
    }
    for (int i = 0; i < n; ++i) sys.row_ptr[i + 1] += sys.row_ptr[i];
    return sys;
}

std::vector<double> assemble_surface_load(const TriangleMesh& mesh, const InterfaceCurve& curve,
                                          const DensityField& Q) {
    if (mesh.interface_edges.empty())
        throw std::invalid_argument("surface load: mesh is not fitted to an interface");
    for (size_t k = 0; k < mesh.interface_edges.size(); k += std::max<size_t>(1, mesh.interface_edges.size() / 8))
        if (std::fabs(curve.signed_distance(mesh.vertices[mesh.interface_edges[k].a])) > 1e-8)
            throw std::invalid_argument("surface load: mesh is not fitted to this curve");
    std::vector<double> b(mesh.vertices.size(), 0.0);
    const double t1 = 0.5 - 0.5 / std::sqrt(3.0), t2 = 0.5 + 0.5 / std::sqrt(3.0);
    for (const auto& e : mesh.interface_edges) {
        double len = distance(mesh.vertices[e.a], mesh.vertices[e.b]);
        double w = 0.5 * len;
        for (double t : {t1, t2}) {
            double q = Q(e.s_a + t * (e.s_b - e.s_a));
            b[e.a] += w * q * (1.0 - t);
            b[e.b] += w * q * t;
        }
    }
    return b;
}

void apply_dirichlet(SparseSystem& sys, const std::vector<uint8_t>& mask,
                     const std::vector<double>& values) {
    sys.dirichlet = mask;
    sys.dirichlet_value = values;
    for (int i = 0; i < sys.n; ++i) {
        if (mask[i]) {
            for (int k = sys.row_ptr[i]; k < sys.row_ptr[i + 1]; ++k)
                sys.val[k] = (sys.col[k] == i) ? 1.0 : 0.0;
            sys.rhs[i] = values[i];
        } else {
            for (int k = sys.row_ptr[i]; k < sys.row_ptr[i + 1]; ++k) {
                int j = sys.col[k];
                if (mask[j]) {
                    sys.rhs[i] -= sys.val[k] * values[j];
                    sys.val[k] = 0.0;
                }
            }
        }
    }
}

void apply_dirichlet_zero(SparseSystem& sys, const TriangleMesh& mesh) {
    std::vector<uint8_t> mask(mesh.boundary_vertex.begin(), mesh.boundary_vertex.end());
    apply_dirichlet(sys, mask, std::vector<double>(sys.n, 0.0));
}

std::vector<double> cg_solve(const SparseSystem& sys, double rel_tol, SolveStats* stats) {
    const int n = sys.n;
    std::vector<double> x(n, 0.0);
    for (int i = 0; i < n; ++i)
        if (sys.dirichlet[i]) x[i] = sys.dirichlet_value[i];

    std::vector<double> diag(n, 1.0);
    for (int i = 0; i < n; ++i)
        for (int k = sys.row_ptr[i]; k < sys.row_ptr[i + 1]; ++k)
            if (sys.col[k] == i && sys.val[k] != 0.0) diag[i] = sys.val[k];

    auto dot_v = [](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };

    std::vector<double> r = sys.multiply(x);
    for (int i = 0; i < n; ++i) r[i] = sys.rhs[i] - r[i];
    double bnorm = std::sqrt(dot_v(sys.rhs, sys.rhs));
    if (bnorm == 0.0) {
        if (stats) *stats = {0, 0.0};
        return x;
    }
    std::vector<double> z(n), p(n), ap(n);
    for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    p = z;
    double rz = dot_v(r, z);
    const int max_iter = static_cast<int>(50.0 * std::sqrt(static_cast<double>(n))) + 16;
    int it = 0;
    double rel = std::sqrt(dot_v(r, r)) / bnorm;
    while (rel > rel_tol) {
        if (++it > max_iter) throw SolverError("cg: no convergence within iteration budget");
        ap = sys.multiply(p);
        double alpha = rz / dot_v(p, ap);
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        rel = std::sqrt(dot_v(r, r)) / bnorm;
        for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
        double rz_new = dot_v(r, z);
        double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    if (stats) *stats = {it, rel};
    return x;
}

std::vector<Vec2> compute_gradients(const TriangleMesh& mesh, const std::vector<double>& u) {
    std::vector<Vec2> g(mesh.triangles.size());
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        auto eg = element_gradients(mesh, static_cast<int>(t));
        const auto& tr = mesh.triangles[t];
        g[t] = u[tr[0]] * eg.g[0] + u[tr[1]] * eg.g[1] + u[tr[2]] * eg.g[2];
    }
    return g;
}

SolutionField solve(const SparseSystem& sys, std::shared_ptr<const TriangleMesh> mesh,
                    double rel_tol) {
    SolutionField f;
    f.mesh = std::move(mesh);
    f.values = cg_solve(sys, rel_tol, &f.stats);
    f.gradient = compute_gradients(*f.mesh, f.values);
    return f;
}

SolutionField solve_measure_problem(std::shared_ptr<const TriangleMesh> mesh,
                                    const InterfaceCurve& curve, const CoefficientField& A,
                                    const DensityField& Q, double rel_tol) {
    SparseSystem sys = assemble_stiffness(*mesh, A);
    sys.rhs = assemble_surface_load(*mesh, curve, Q);
    apply_dirichlet_zero(sys, *mesh);
    return solve(sys, std::move(mesh), rel_tol);
}

SolutionField solve_dirichlet(std::shared_ptr<const TriangleMesh> mesh_ptr,
                              const CoefficientField& A,
                              const std::function<double(Vec2)>& boundary_values,
                              Region region, double rel_tol) {
    const TriangleMesh& mesh = *mesh_ptr;
    const int n = static_cast<int>(mesh.vertices.size());
    std::optional<Side> restrict_side;
    std::vector<uint8_t> mask(mesh.boundary_vertex.begin(), mesh.boundary_vertex.end());
    std::vector<double> values(n, 0.0);

    std::vector<uint8_t> pinned_zero(n, 0);
    if (region == Region::Annulus) {
        if (mesh.interface_edges.empty())
            throw std::invalid_argument("solve_dirichlet: annulus region needs an interface-fitted mesh");
        restrict_side = Side::Outside;
        std::vector<uint8_t> active(n, 0);
        for (size_t t = 0; t < mesh.triangles.size(); ++t)
            if (mesh.side[t] == Side::Outside)
                for (int v : mesh.triangles[t]) active[v] = 1;
        if (std::count(active.begin(), active.end(), 1) == 0)
            throw std::invalid_argument("solve_dirichlet: region does not match mesh labels");
        for (const auto& e : mesh.interface_edges) mask[e.a] = mask[e.b] = 1;
        for (int v = 0; v < n; ++v)
            if (!active[v] && !mask[v]) {
                mask[v] = 1; // pinned to zero inside the enclosed region
                pinned_zero[v] = 1;
            }
    }
    for (int v = 0; v < n; ++v) {
        if (!mask[v] || pinned_zero[v]) continue;
        values[v] = boundary_values(mesh.vertices[v]);
        if (!std::isfinite(values[v]))
            throw std::invalid_argument("solve_dirichlet: non-finite boundary value");
    }

    SparseSystem sys = assemble_stiffness(mesh, A, restrict_side);
    apply_dirichlet(sys, mask, values);
    return solve(sys, std::move(mesh_ptr), rel_tol);
}

double bilinear_energy(const TriangleMesh& mesh, const CoefficientField& A,
                       const std::vector<double>& u) {
    auto g = compute_gradients(mesh, u);
    double e = 0.0;
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        Matrix2 a = A(mesh.centroid(static_cast<int>(t)));
        e += mesh.triangle_area(static_cast<int>(t)) * dot(a * g[t], g[t]);
    }
    return e;
}

void SolutionField::write_vertex_csv(std::ostream& os) const {
    os << "x,y,u\n";
    os.precision(17);
    for (size_t v = 0; v < values.size(); ++v)
        os << mesh->vertices[v].x << "," << mesh->vertices[v].y << "," << values[v] << "\n";
}

void SolutionField::write_element_csv(std::ostream& os) const {
    os << "cx,cy,gx,gy,label\n";
    os.precision(17);
    for (size_t t = 0; t < gradient.size(); ++t) {
        Vec2 c = mesh->centroid(static_cast<int>(t));
        os << c.x << "," << c.y << "," << gradient[t].x << "," << gradient[t].y << ","
           << (mesh->side[t] == Side::Inside ? "inside" : "outside") << "\n";
    }
}

} // namespace curvefem
