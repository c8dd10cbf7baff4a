#include "curvefem/analysis.hpp"

#include "curvefem/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace curvefem {

namespace {

constexpr double kPi = std::numbers::pi;

// degree-5 rule on the reference triangle (barycentric points, weights sum 1)
struct TriQuadPoint {
    double l1, l2, l3, w;
};
const std::array<TriQuadPoint, 7>& tri_quad7() {
    static const std::array<TriQuadPoint, 7> q = [] {
        const double a = 0.059715871789770, b = 0.470142064105115;
        const double c = 0.797426985353087, d = 0.101286507323456;
        const double w1 = 0.225, w2 = 0.132394152788506, w3 = 0.125939180544827;
        return std::array<TriQuadPoint, 7>{{{1.0 / 3, 1.0 / 3, 1.0 / 3, w1},
                                            {a, b, b, w2},
                                            {b, a, b, w2},
                                            {b, b, a, w2},
                                            {c, d, d, w3},
                                            {d, c, d, w3},
                                            {d, d, c, w3}}};
    }();
    return q;
}

double tube_curvature(const InterfaceCurve& curve, double s) {
    if (curve.kind() == InterfaceCurve::Kind::Circle) return 1.0 / curve.circle_radius();
    double ds = 1e-4 * curve.perimeter();
    Vec2 t0 = curve.tangent_at(s - ds), t1 = curve.tangent_at(s + ds);
    return cross(curve.tangent_at(s), (t1 - t0) / (2.0 * ds));
}

void solve4(double m[4][5]) { // gaussian elimination with partial pivoting
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        if (std::fabs(m[piv][c]) < 1e-14) throw ResolutionError("taylor_fit: rank-deficient fit");
        std::swap_ranges(m[c], m[c] + 5, m[piv]);
        for (int r = 0; r < 4; ++r) {
            if (r == c) continue;
            double f = m[r][c] / m[c][c];
            for (int k = c; k < 5; ++k) m[r][k] -= f * m[c][k];
        }
    }
    for (int c = 0; c < 4; ++c) m[c][4] /= m[c][c];
}

} // namespace

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double det = n * sxx - sx * sx;
    LineFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
        double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

TraceReport one_sided_traces(const SolutionField& u, const InterfaceCurve& curve,
                             const CoefficientField& A, const DensityField& Q) {
    const TriangleMesh& mesh = *u.mesh;
    if (mesh.interface_edges.empty())
        throw MeshingError("one_sided_traces: mesh carries no interface");
    TraceReport rep;
    rep.records.reserve(mesh.interface_edges.size());
    double sum_err = 0.0;
    for (const auto& e : mesh.interface_edges) {
        if (e.inside_tri < 0 || e.outside_tri < 0)
            throw MeshingError("one_sided_traces: missing adjacent element");
        TraceRecord r;
        r.arclength = e.s_mid;
        r.x = curve.point_at(e.s_mid);
        r.normal = e.normal;
        r.grad_inside = u.gradient[e.inside_tri];
        r.grad_outside = u.gradient[e.outside_tri];
        r.theta = 0.5 * (r.grad_inside + r.grad_outside);
        r.normal_jump = dot(r.grad_inside - r.grad_outside, r.normal);
        r.predicted_jump = Q(e.s_mid) / A(r.x).quad(r.normal);
        rep.records.push_back(r);
        double err = std::fabs(r.normal_jump - r.predicted_jump);
        sum_err += err;
        rep.max_jump_error = std::max(rep.max_jump_error, err);
        Vec2 tau = rotate_ccw(r.normal);
        rep.max_tangential_jump =
            std::max(rep.max_tangential_jump, std::fabs(dot(r.grad_inside - r.grad_outside, tau)));
    }
    rep.mean_jump_error = sum_err / static_cast<double>(rep.records.size());
    return rep;
}

Vec2 estimate_theta(const SolutionField& u, Vec2 x0, const std::vector<double>& radii) {
    const TriangleMesh& mesh = *u.mesh;
    if (radii.size() < 2) throw std::invalid_argument("estimate_theta: need at least 2 radii");
    for (double r : radii) {
        if (!(r >= 3.0 * mesh.h))
            throw std::invalid_argument("estimate_theta: radius below mesh resolution");
        if (!(r < mesh.domain.boundary_distance(x0)))
            throw std::invalid_argument("estimate_theta: radius reaches the domain boundary");
    }
    std::vector<double> rx, ax, ay;
    for (double r : radii) {
        double area = 0.0;
        Vec2 acc{0.0, 0.0};
        int count = 0;
        for (size_t t = 0; t < mesh.triangles.size(); ++t) {
            if (distance(mesh.centroid(static_cast<int>(t)), x0) >= r) continue;
            double a = mesh.triangle_area(static_cast<int>(t));
            acc += a * u.gradient[t];
            area += a;
            ++count;
        }
        if (count < 10) throw ResolutionError("estimate_theta: fewer than 10 elements in ball");
        rx.push_back(r);
        ax.push_back(acc.x / area);
        ay.push_back(acc.y / area);
    }
    return {fit_line(rx, ax).intercept, fit_line(rx, ay).intercept};
}

TaylorFit taylor_fit(const SolutionField& u, Vec2 x0, const CoefficientField& A,
                     const DensityField& Q, const InterfaceCurve& curve, double fit_radius) {
    const TriangleMesh& mesh = *u.mesh;
    double r = fit_radius > 0.0 ? fit_radius : 5.0 * mesh.h;
    double s0 = curve.project_arclength(x0);
    Vec2 nu = curve.normal_at(s0);

    // model: u = c0 + c1 dx + c2 dy + k |(d, nu)|
    double m[4][5] = {};
    std::vector<std::array<double, 4>> rows;
    std::vector<double> rhs;
    for (size_t v = 0; v < mesh.vertices.size(); ++v) {
        Vec2 d = mesh.vertices[v] - x0;
        if (norm(d) > r) continue;
        std::array<double, 4> basis{1.0, d.x, d.y, std::fabs(dot(d, nu))};
        rows.push_back(basis);
        rhs.push_back(u.values[v]);
    }
    if (rows.size() < 12) throw ResolutionError("taylor_fit: too few vertices in fit ball");
    for (size_t q = 0; q < rows.size(); ++q)
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) m[i][j] += rows[q][i] * rows[q][j];
            m[i][4] += rows[q][i] * rhs[q];
        }
    solve4(m);
    TaylorFit fit;
    fit.theta_fit = {m[1][4], m[2][4]};
    fit.kink_coeff = m[3][4];
    fit.expected_kink = -0.5 * Q(s0) / A(x0).quad(nu);
    double ss = 0.0;
    for (size_t q = 0; q < rows.size(); ++q) {
        double pred = 0.0;
        for (int i = 0; i < 4; ++i) pred += rows[q][i] * m[i][4];
        ss += (rhs[q] - pred) * (rhs[q] - pred);
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(rows.size()));
    return fit;
}

double lp_gradient_norm(const SolutionField& u, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_gradient_norm: p >= 1 required");
    const TriangleMesh& mesh = *u.mesh;
    double acc = 0.0;
    for (size_t t = 0; t < mesh.triangles.size(); ++t)
        acc += mesh.triangle_area(static_cast<int>(t)) * std::pow(norm(u.gradient[t]), p);
    return std::pow(acc, 1.0 / p);
}

double linf_gradient_norm(const SolutionField& u) {
    double m = 0.0;
    for (const auto& g : u.gradient) m = std::max(m, norm(g));
    return m;
}

double local_linf_gradient(const SolutionField& u, Vec2 center, double radius) {
    const TriangleMesh& mesh = *u.mesh;
    double m = 0.0;
    for (size_t t = 0; t < mesh.triangles.size(); ++t)
        if (distance(mesh.centroid(static_cast<int>(t)), center) < radius)
            m = std::max(m, norm(u.gradient[t]));
    return m;
}

NormReport gradient_norm_report(const SolutionField& u, std::vector<double> p_grid) {
    NormReport rep;
    rep.p_grid = std::move(p_grid);
    rep.h = u.mesh->h;
    rep.linf = linf_gradient_norm(u);
    rep.lp_norms.reserve(rep.p_grid.size());
    for (double p : rep.p_grid) rep.lp_norms.push_back(lp_gradient_norm(u, p));
    return rep;
}

BlowupFit blowup_log_fit(const SolutionField& u, Vec2 corner, const std::vector<double>& radii) {
    if (radii.size() < 4) throw std::invalid_argument("blowup_log_fit: need at least 4 radii");
    for (size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] < radii[i - 1]))
            throw std::invalid_argument("blowup_log_fit: radii must be strictly decreasing");
    const TriangleMesh& mesh = *u.mesh;
    BlowupFit fit;
    for (double r : radii) {
        if (!(r >= 3.0 * mesh.h)) throw ResolutionError("blowup_log_fit: radius below resolution");
        double m = 0.0;
        int count = 0;
        for (size_t t = 0; t < mesh.triangles.size(); ++t) {
            double d = distance(mesh.centroid(static_cast<int>(t)), corner);
            if (d > 0.5 * r && d <= r) {
                m = std::max(m, std::fabs(u.gradient[t].x));
                ++count;
            }
        }
        if (count == 0) throw ResolutionError("blowup_log_fit: empty annulus");
        fit.radii.push_back(r);
        fit.max_grad.push_back(m);
    }
    std::vector<double> xs(fit.radii.size());
    for (size_t i = 0; i < xs.size(); ++i) xs[i] = std::log(1.0 / fit.radii[i]);
    auto line = fit_line(xs, fit.max_grad);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.fit_residual = line.rms;
    return fit;
}

IntegrabilityResult integrability_exponent(const std::vector<NormReport>& levels,
                                           double growth_threshold) {
    if (levels.size() < 3)
        throw std::invalid_argument("integrability_exponent: need >= 3 refinement levels");
    const auto& grid = levels.front().p_grid;
    for (const auto& l : levels)
        if (l.p_grid != grid)
            throw std::invalid_argument("integrability_exponent: inconsistent p grids");
    IntegrabilityResult res;
    res.growth_threshold = growth_threshold;
    const size_t L = levels.size();
    for (size_t ip = 0; ip < grid.size(); ++ip) {
        bool monotone = true;
        for (size_t l = 1; l < L; ++l)
            if (levels[l].lp_norms[ip] < levels[l - 1].lp_norms[ip] * 0.999) monotone = false;
        IntegrabilityRow row;
        row.p = grid[ip];
        // a convergent norm has a decaying increment; a divergent one settles
        // at a fixed per-halving rate, so the finest pair separates them
        row.growth_rate = std::log(levels[L - 1].lp_norms[ip] / levels[L - 2].lp_norms[ip]) /
                          std::log(levels[L - 2].h / levels[L - 1].h);
        row.diverging = row.growth_rate > growth_threshold;
        row.monotone = monotone;
        res.table.push_back(row);
    }
    for (const auto& row : res.table)
        if (!row.monotone) res.conclusive = false;
    for (const auto& row : res.table) {
        if (row.diverging) {
            res.p_crit = row.p;
            break;
        }
    }
    return res;
}

double prototype_residual(const SolutionField& u, const InterfaceCurve& curve,
                          const CoefficientField& A, const DensityField& Q) {
    auto rep = one_sided_traces(u, curve, A, Q);
    double worst = 0.0;
    for (const auto& r : rep.records)
        worst = std::max(worst, std::fabs(r.normal_jump - r.predicted_jump));
    return worst;
}

double distributional_identity_residual(const InterfaceCurve& curve,
                                        const std::function<double(Vec2)>& Q0,
                                        const ScalarTestFunction& phi, double tube_eps,
                                        int deriv_i, int deriv_j, int grid_n) {
    if (deriv_i < 0 || deriv_i > 1 || deriv_j < 0 || deriv_j > 1)
        throw std::invalid_argument("distributional_identity_residual: indices must be 0 or 1");
    if (!(tube_eps > 0.0) || grid_n < 8)
        throw std::invalid_argument("distributional_identity_residual: bad tube or grid");
    const double L = curve.perimeter();

    // the test function must vanish (with margin) near the tube boundary
    double scale = 0.0;
    for (int k = 0; k < 16; ++k) scale = std::max(scale, std::fabs(phi.value(curve.point_at(L * k / 16.0))));
    for (int k = 0; k < 32; ++k) {
        double s = L * k / 32.0;
        Vec2 p = curve.point_at(s), nu = curve.normal_at(s);
        for (double t : {-0.999 * tube_eps, 0.999 * tube_eps})
            if (std::fabs(phi.value(p + t * nu)) > 1e-5 * std::max(scale, 1e-30))
                throw std::invalid_argument(
                    "distributional_identity_residual: test function does not vanish near tube boundary");
    }

    const double fd = 1e-5;
    auto g = [&](Vec2 x) { return 0.5 * Q0(x) * curve.signed_distance(x); };
    auto hess_g = [&](Vec2 x) {
        Vec2 ei = deriv_i == 0 ? Vec2{1, 0} : Vec2{0, 1};
        Vec2 ej = deriv_j == 0 ? Vec2{1, 0} : Vec2{0, 1};
        if (deriv_i == deriv_j)
            return (g(x + fd * ei) - 2.0 * g(x) + g(x - fd * ei)) / (fd * fd);
        return (g(x + fd * ei + fd * ej) - g(x + fd * ei - fd * ej) - g(x - fd * ei + fd * ej) +
                g(x - fd * ei - fd * ej)) /
               (4.0 * fd * fd);
    };

    // tube-fitted quadrature: midpoint in arclength, Simpson in the normal
    // offset split at the interface
    const int ns = grid_n;
    int nt = std::max(2, grid_n / 2);
    if (nt % 2) ++nt;
    auto simpson_w = [&](int k) { return (k == 0 || k == nt) ? 1.0 : (k % 2 ? 4.0 : 2.0); };

    double lhs = 0.0, rhs_vol = 0.0;
    for (int is = 0; is < ns; ++is) {
        double s = L * (is + 0.5) / ns;
        Vec2 p = curve.point_at(s), nu = curve.normal_at(s);
        double kappa = tube_curvature(curve, s);
        double ds = L / ns;
        for (int side = -1; side <= 1; side += 2) {
            double ht = tube_eps / nt;
            for (int k = 0; k <= nt; ++k) {
                double t = side * (k * ht);
                Vec2 x = p + t * nu;
                double jac = (1.0 + t * kappa) * ds * (ht / 3.0) * simpson_w(k);
                double dval = curve.signed_distance(x);
                lhs += jac * 0.5 * Q0(x) * std::fabs(dval) * phi.hessian(x, deriv_i, deriv_j);
                double sign = side > 0 ? 1.0 : -1.0; // chi_outside - chi_inside, one-sided at t=0
                rhs_vol += jac * sign * hess_g(x) * phi.value(x);
            }
        }
    }

    double rhs_curve = 0.0;
    {
        auto rule = curve_quadrature(curve, std::max(64, 4 * grid_n));
        for (const auto& node : rule.nodes) {
            double ni = deriv_i == 0 ? node.normal.x : node.normal.y;
            double nj = deriv_j == 0 ? node.normal.x : node.normal.y;
            rhs_curve += node.weight * Q0(node.point) * ni * nj * phi.value(node.point);
        }
    }
    return std::fabs(lhs - (rhs_curve + rhs_vol));
}

namespace {

template <typename F>
double element_integral(const TriangleMesh& mesh, int t, const F& f) {
    const auto& tr = mesh.triangles[t];
    Vec2 p0 = mesh.vertices[tr[0]], p1 = mesh.vertices[tr[1]], p2 = mesh.vertices[tr[2]];
    double area = mesh.triangle_area(t);
    double acc = 0.0;
    for (const auto& q : tri_quad7()) {
        Vec2 x = q.l1 * p0 + q.l2 * p1 + q.l3 * p2;
        acc += q.w * f(x, q.l1, q.l2, q.l3);
    }
    return area * acc;
}

double curve_load(const InterfaceCurve& curve, const DensityField& Q,
                  const AnalyticTestFunction& phi, int nodes) {
    auto rule = curve_quadrature(curve, nodes);
    double acc = 0.0;
    for (const auto& node : rule.nodes) acc += node.weight * Q(node.arclength) * phi.value(node.point);
    return acc;
}

} // namespace

double very_weak_residual(const SolutionField& u, const InterfaceCurve& curve,
                          const DensityField& Q, const AnalyticTestFunction& phi,
                          int curve_quad_nodes) {
    const TriangleMesh& mesh = *u.mesh;
    double vol = 0.0;
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tr = mesh.triangles[t];
        vol += element_integral(mesh, static_cast<int>(t), [&](Vec2 x, double l1, double l2, double l3) {
            double uh = l1 * u.values[tr[0]] + l2 * u.values[tr[1]] + l3 * u.values[tr[2]];
            return uh * phi.div_A_grad(x);
        });
    }
    return std::fabs(-vol - curve_load(curve, Q, phi, curve_quad_nodes));
}

double weak_residual(const SolutionField& u, const InterfaceCurve& curve,
                     const CoefficientField& A, const DensityField& Q,
                     const AnalyticTestFunction& phi, int curve_quad_nodes) {
    const TriangleMesh& mesh = *u.mesh;
    double vol = 0.0;
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        Vec2 g = u.gradient[t];
        vol += element_integral(mesh, static_cast<int>(t),
                                [&](Vec2 x, double, double, double) { return dot(A(x) * g, phi.grad(x)); });
    }
    return std::fabs(vol - curve_load(curve, Q, phi, curve_quad_nodes));
}

} // namespace curvefem
