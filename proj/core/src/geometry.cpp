#include "curvefem/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace curvefem {

namespace {

constexpr double kPi = std::numbers::pi;

// 4-point Gauss-Legendre on [0,1].
constexpr std::array<double, 4> kGauss4X = {
    0.069431844202973712388, 0.330009478207571867598,
    0.669990521792428132402, 0.930568155797026287612};
constexpr std::array<double, 4> kGauss4W = {
    0.173927422568726928687, 0.326072577431273071313,
    0.326072577431273071313, 0.173927422568726928687};

double point_segment_dist2(Vec2 x, Vec2 a, Vec2 b, double* t_out) {
    Vec2 ab = b - a;
    double len2 = norm2(ab);
    double t = len2 > 0.0 ? std::clamp(dot(x - a, ab) / len2, 0.0, 1.0) : 0.0;
    Vec2 c = a + t * ab;
    if (t_out) *t_out = t;
    return norm2(x - c);
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
        double v = cross(q - p, r - p);
        return (v > 0.0) - (v < 0.0);
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4;
}

} // namespace

Domain Domain::disk(Vec2 center, double radius, int boundary_resolution) {
    if (!(radius > 0.0)) throw std::invalid_argument("domain disk: radius must be positive");
    Domain d;
    d.kind = Kind::Disk;
    d.center = center;
    d.radius = radius;
    d.boundary_resolution = boundary_resolution;
    return d;
}

Domain Domain::rectangle(Vec2 lo, Vec2 hi, int boundary_resolution) {
    if (!(hi.x > lo.x && hi.y > lo.y))
        throw std::invalid_argument("domain rectangle: corners must span positive area");
    Domain d;
    d.kind = Kind::Rectangle;
    d.lo = lo;
    d.hi = hi;
    d.boundary_resolution = boundary_resolution;
    return d;
}

bool Domain::contains(Vec2 x) const {
    if (kind == Kind::Disk) return distance(x, center) < radius;
    return x.x > lo.x && x.x < hi.x && x.y > lo.y && x.y < hi.y;
}

double Domain::boundary_distance(Vec2 x) const {
    if (kind == Kind::Disk) return radius - distance(x, center);
    double dx = std::min(x.x - lo.x, hi.x - x.x);
    double dy = std::min(x.y - lo.y, hi.y - x.y);
    return std::min(dx, dy);
}

// ---------------------------------------------------------------------------
// InterfaceCurve construction

InterfaceCurve InterfaceCurve::circle(Vec2 center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("circle: radius must be positive");
    InterfaceCurve c;
    c.kind_ = Kind::Circle;
    c.regularity_ = RegularityClass::Smooth;
    c.center_ = center;
    c.radius_ = radius;
    c.length_ = 2.0 * kPi * radius;
    return c;
}

InterfaceCurve InterfaceCurve::polygon(std::vector<Vec2> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
    InterfaceCurve c;
    c.kind_ = Kind::Polygon;
    c.regularity_ = RegularityClass::Lipschitz;
    c.points_ = std::move(vertices);
    c.build_polyline_tables();
    return c;
}

InterfaceCurve InterfaceCurve::parametric(std::vector<CurveSample> samples) {
    if (samples.size() < 8) throw std::invalid_argument("parametric curve: need at least 8 samples");
    InterfaceCurve c;
    c.kind_ = Kind::Parametric;
    c.regularity_ = RegularityClass::Smooth;
    c.points_.reserve(samples.size());
    c.tangents_.reserve(samples.size());
    for (const auto& s : samples) {
        c.points_.push_back(s.point);
        c.tangents_.push_back(normalized(s.tangent));
    }
    c.build_polyline_tables();
    return c;
}

void InterfaceCurve::build_polyline_tables() {
    const int n = static_cast<int>(points_.size());
    cum_.assign(n + 1, 0.0);
    seg_len_.assign(n, 0.0);
    double area2 = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec2 a = points_[i], b = points_[(i + 1) % n];
        seg_len_[i] = distance(a, b);
        cum_[i + 1] = cum_[i] + seg_len_[i];
        area2 += cross(a, b);
    }
    length_ = cum_[n];
    if (!(length_ > 0.0)) throw std::invalid_argument("curve: degenerate (zero length)");
    if (!(area2 > 0.0)) throw std::invalid_argument("curve: orientation must be ccw");

    // nearest-segment acceleration grid
    Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi{-lo.x, -lo.y};
    for (const auto& p : points_) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    double max_seg = *std::max_element(seg_len_.begin(), seg_len_.end());
    double diag = std::hypot(hi.x - lo.x, hi.y - lo.y);
    grid_.cell = std::max(2.0 * max_seg, diag / 48.0);
    grid_.origin = lo;
    grid_.nx = std::max(1, static_cast<int>((hi.x - lo.x) / grid_.cell) + 1);
    grid_.ny = std::max(1, static_cast<int>((hi.y - lo.y) / grid_.cell) + 1);
    grid_.bins.assign(static_cast<size_t>(grid_.nx) * grid_.ny, {});
    auto cell_of = [&](Vec2 p) {
        int cx = std::clamp(static_cast<int>((p.x - grid_.origin.x) / grid_.cell), 0, grid_.nx - 1);
        int cy = std::clamp(static_cast<int>((p.y - grid_.origin.y) / grid_.cell), 0, grid_.ny - 1);
        return std::pair{cx, cy};
    };
    for (int i = 0; i < n; ++i) {
        auto [ax, ay] = cell_of(points_[i]);
        auto [bx, by] = cell_of(points_[(i + 1) % n]);
        for (int cx = std::min(ax, bx); cx <= std::max(ax, bx); ++cx)
            for (int cy = std::min(ay, by); cy <= std::max(ay, by); ++cy)
                grid_.bins[static_cast<size_t>(cy) * grid_.nx + cx].push_back(i);
    }

    // simplicity check at sample resolution
    for (int i = 0; i < n; ++i) {
        Vec2 a = points_[i], b = points_[(i + 1) % n];
        auto [ax, ay] = cell_of(a);
        auto [bx, by] = cell_of(b);
        for (int cx = std::max(0, std::min(ax, bx) - 1); cx <= std::min(grid_.nx - 1, std::max(ax, bx) + 1); ++cx)
            for (int cy = std::max(0, std::min(ay, by) - 1); cy <= std::min(grid_.ny - 1, std::max(ay, by) + 1); ++cy)
                for (int k : grid_.bins[static_cast<size_t>(cy) * grid_.nx + cx]) {
                    if (k <= i) continue;
                    int gap = std::min(k - i, n - (k - i));
                    if (gap <= 1) continue; // adjacent segments share a vertex
                    if (segments_intersect(a, b, points_[k], points_[(k + 1) % n]))
                        throw std::invalid_argument("curve: self-intersection detected");
                }
    }
}

int InterfaceCurve::nearest_segment(Vec2 x, double* t_out, double* dist2_out) const {
    const int n = static_cast<int>(points_.size());
    int cx = std::clamp(static_cast<int>((x.x - grid_.origin.x) / grid_.cell), 0, grid_.nx - 1);
    int cy = std::clamp(static_cast<int>((x.y - grid_.origin.y) / grid_.cell), 0, grid_.ny - 1);
    double best = std::numeric_limits<double>::max();
    double best_t = 0.0;
    int best_k = -1;
    int max_ring = std::max(grid_.nx, grid_.ny);
    for (int ring = 0; ring <= max_ring; ++ring) {
        // once a hit exists, stop when remaining rings cannot improve it
        if (best_k >= 0) {
            double ring_min = (ring - 1) * grid_.cell;
            if (ring_min > 0.0 && ring_min * ring_min > best) break;
        }
        for (int gy = cy - ring; gy <= cy + ring; ++gy) {
            if (gy < 0 || gy >= grid_.ny) continue;
            for (int gx = cx - ring; gx <= cx + ring; ++gx) {
                if (gx < 0 || gx >= grid_.nx) continue;
                if (std::max(std::abs(gx - cx), std::abs(gy - cy)) != ring) continue;
                for (int k : grid_.bins[static_cast<size_t>(gy) * grid_.nx + gx]) {
                    double t;
                    double d2 = point_segment_dist2(x, points_[k], points_[(k + 1) % n], &t);
                    if (d2 < best) {
                        best = d2;
                        best_t = t;
                        best_k = k;
                    }
                }
            }
        }
    }
    if (t_out) *t_out = best_t;
    if (dist2_out) *dist2_out = best;
    return best_k;
}

double InterfaceCurve::enclosed_area() const {
    if (kind_ == Kind::Circle) return kPi * radius_ * radius_;
    const int n = static_cast<int>(points_.size());
    double area2 = 0.0;
    for (int i = 0; i < n; ++i) area2 += cross(points_[i], points_[(i + 1) % n]);
    return 0.5 * area2;
}

double InterfaceCurve::signed_distance(Vec2 x) const {
    if (kind_ == Kind::Circle) return distance(x, center_) - radius_;
    const int n = static_cast<int>(points_.size());
    double t, d2;
    int k = nearest_segment(x, &t, &d2);
    double d = std::sqrt(d2);
    if (d == 0.0) return 0.0;
    Vec2 a = points_[k], b = points_[(k + 1) % n];
    Vec2 c = a + t * (b - a);
    Vec2 edge_n = rotate_cw(normalized(b - a));
    Vec2 nrm = edge_n;
    constexpr double eps = 1e-12;
    if (t <= eps || t >= 1.0 - eps) {
        // vertex case: bisector pseudo-normal decides the side
        int kprev = (t <= eps) ? (k + n - 1) % n : k;
        int knext = (t <= eps) ? k : (k + 1) % n;
        Vec2 n1 = rotate_cw(normalized(points_[(kprev + 1) % n] - points_[kprev]));
        Vec2 n2 = rotate_cw(normalized(points_[(knext + 1) % n] - points_[knext]));
        nrm = n1 + n2;
    }
    return dot(x - c, nrm) >= 0.0 ? d : -d;
}

Vec2 InterfaceCurve::closest_point(Vec2 x) const {
    if (kind_ == Kind::Circle) {
        Vec2 u = x - center_;
        double r = norm(u);
        if (r == 0.0) return center_ + Vec2{radius_, 0.0};
        return center_ + (radius_ / r) * u;
    }
    double t;
    int k = nearest_segment(x, &t, nullptr);
    const int n = static_cast<int>(points_.size());
    return points_[k] + t * (points_[(k + 1) % n] - points_[k]);
}

double InterfaceCurve::project_arclength(Vec2 x) const {
    if (kind_ == Kind::Circle) {
        Vec2 u = x - center_;
        double a = std::atan2(u.y, u.x);
        if (a < 0.0) a += 2.0 * kPi;
        return radius_ * a;
    }
    double t;
    int k = nearest_segment(x, &t, nullptr);
    return cum_[k] + t * seg_len_[k];
}

Vec2 InterfaceCurve::point_at(double s) const {
    s = std::fmod(s, length_);
    if (s < 0.0) s += length_;
    if (kind_ == Kind::Circle) {
        double a = s / radius_;
        return center_ + Vec2{radius_ * std::cos(a), radius_ * std::sin(a)};
    }
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    int k = std::clamp(static_cast<int>(it - cum_.begin()) - 1, 0,
                       static_cast<int>(points_.size()) - 1);
    double t = seg_len_[k] > 0.0 ? (s - cum_[k]) / seg_len_[k] : 0.0;
    const int n = static_cast<int>(points_.size());
    return points_[k] + t * (points_[(k + 1) % n] - points_[k]);
}

Vec2 InterfaceCurve::tangent_at(double s) const {
    s = std::fmod(s, length_);
    if (s < 0.0) s += length_;
    if (kind_ == Kind::Circle) {
        double a = s / radius_;
        return {-std::sin(a), std::cos(a)};
    }
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    int k = std::clamp(static_cast<int>(it - cum_.begin()) - 1, 0,
                       static_cast<int>(points_.size()) - 1);
    const int n = static_cast<int>(points_.size());
    if (kind_ == Kind::Polygon) return normalized(points_[(k + 1) % n] - points_[k]);
    double t = seg_len_[k] > 0.0 ? (s - cum_[k]) / seg_len_[k] : 0.0;
    return normalized((1.0 - t) * tangents_[k] + t * tangents_[(k + 1) % n]);
}

Vec2 InterfaceCurve::normal_at(double s) const { return rotate_cw(tangent_at(s)); }

std::vector<double> InterfaceCurve::sample_arclengths(double max_spacing) const {
    if (!(max_spacing > 0.0)) throw std::invalid_argument("sample spacing must be positive");
    std::vector<double> out;
    if (kind_ == Kind::Polygon) {
        const int n = static_cast<int>(points_.size());
        for (int k = 0; k < n; ++k) {
            int m = std::max(1, static_cast<int>(std::ceil(seg_len_[k] / max_spacing)));
            for (int j = 0; j < m; ++j) out.push_back(cum_[k] + seg_len_[k] * j / m);
        }
        return out;
    }
    int n = std::max(8, static_cast<int>(std::ceil(length_ / max_spacing)));
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(length_ * i / n);
    return out;
}

Vec2 SignedDistanceField::gradient_direction(Vec2 x) const {
    Vec2 c = source_.closest_point(x);
    double d = source_.signed_distance(x);
    if (std::fabs(d) < 1e-14) return source_.normal_at(source_.project_arclength(x));
    return (d > 0.0 ? 1.0 : -1.0) * normalized(x - c);
}

InterfaceCurve make_circle(Vec2 center, double radius) {
    return InterfaceCurve::circle(center, radius);
}

InterfaceCurve make_triangle() {
    return InterfaceCurve::polygon({{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}});
}

InterfaceCurve make_ellipse(Vec2 center, double a, double b, int samples) {
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("ellipse: semi-axes must be positive");
    std::vector<CurveSample> s(samples);
    for (int i = 0; i < samples; ++i) {
        double th = 2.0 * kPi * i / samples;
        s[i].point = center + Vec2{a * std::cos(th), b * std::sin(th)};
        s[i].tangent = normalized({-a * std::sin(th), b * std::cos(th)});
    }
    return InterfaceCurve::parametric(std::move(s));
}

// ---------------------------------------------------------------------------
// Quadrature and measure ops

double QuadratureRule1D::total_weight() const {
    double s = 0.0;
    for (const auto& n : nodes) s += n.weight;
    return s;
}

QuadratureRule1D curve_quadrature(const InterfaceCurve& curve, int n) {
    QuadratureRule1D rule;
    auto add_panel = [&](double s0, double s1) {
        for (int g = 0; g < 4; ++g) {
            double s = s0 + kGauss4X[g] * (s1 - s0);
            rule.nodes.push_back({curve.point_at(s), kGauss4W[g] * (s1 - s0),
                                  curve.normal_at(s), s});
        }
    };
    if (curve.kind() == InterfaceCurve::Kind::Polygon) {
        const auto& verts = curve.polygon_vertices();
        const int ne = static_cast<int>(verts.size());
        if (n < 2 * ne)
            throw std::invalid_argument("curve_quadrature: polygons need at least 2 nodes per edge");
        double L = curve.perimeter();
        double s0 = 0.0;
        for (int k = 0; k < ne; ++k) {
            double len = distance(verts[k], verts[(k + 1) % ne]);
            int nk = std::max(2, static_cast<int>(std::round(n * len / L)));
            int panels = (nk + 3) / 4;
            for (int p = 0; p < panels; ++p)
                add_panel(s0 + len * p / panels, s0 + len * (p + 1) / panels);
            s0 += len;
        }
        return rule;
    }
    if (n < 8) throw std::invalid_argument("curve_quadrature: need at least 8 nodes");
    int panels = std::max(2, (n + 3) / 4);
    double L = curve.perimeter();
    for (int p = 0; p < panels; ++p) add_panel(L * p / panels, L * (p + 1) / panels);
    return rule;
}

double integrate_on_curve(const InterfaceCurve& curve, int n,
                          const std::function<double(Vec2)>& f) {
    auto rule = curve_quadrature(curve, n);
    double s = 0.0;
    for (const auto& node : rule.nodes) s += node.weight * f(node.point);
    return s;
}

namespace {

double arc_inside_ball(const InterfaceCurve& curve, Vec2 c, double r, double s0,
                       double s1, int depth) {
    Vec2 p0 = curve.point_at(s0), p1 = curve.point_at(s1);
    double sm = 0.5 * (s0 + s1);
    Vec2 pm = curve.point_at(sm);
    bool in0 = distance(p0, c) < r, in1 = distance(p1, c) < r, inm = distance(pm, c) < r;
    if (depth >= 48) {
        int cnt = int(in0) + int(inm) + int(in1);
        return (s1 - s0) * cnt / 3.0;
    }
    if (in0 == in1 && in1 == inm && depth >= 2) return in0 ? (s1 - s0) : 0.0;
    return arc_inside_ball(curve, c, r, s0, sm, depth + 1) +
           arc_inside_ball(curve, c, r, sm, s1, depth + 1);
}

} // namespace

double measure_growth_constant(const InterfaceCurve& curve,
                               const std::vector<Vec2>& centers,
                               const std::vector<double>& radii, int base_segments) {
    if (centers.empty() || radii.empty())
        throw std::invalid_argument("measure_growth_constant: empty sample lists");
    for (double r : radii)
        if (!(r > 0.0)) throw std::invalid_argument("measure_growth_constant: radii must be positive");
    double L = curve.perimeter();
    double sup = 0.0;
    for (const auto& c : centers) {
        for (double r : radii) {
            double len = 0.0;
            for (int i = 0; i < base_segments; ++i)
                len += arc_inside_ball(curve, c, r, L * i / base_segments,
                                       L * (i + 1) / base_segments, 0);
            sup = std::max(sup, len / r);
        }
    }
    return sup;
}

double chord_arc_ratio(const InterfaceCurve& curve,
                       const std::vector<std::pair<double, double>>& arc_pairs) {
    double L = curve.perimeter();
    double worst = 1.0;
    for (auto [s1, s2] : arc_pairs) {
        double ds = std::fabs(s2 - s1);
        ds = std::fmod(ds, L);
        double intrinsic = std::min(ds, L - ds);
        double euclid = distance(curve.point_at(s1), curve.point_at(s2));
        if (euclid < 1e-12) continue;
        worst = std::max(worst, intrinsic / euclid);
    }
    return worst;
}

double chord_arc_ratio(const InterfaceCurve& curve, int n_samples) {
    double L = curve.perimeter();
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(static_cast<size_t>(n_samples) * (n_samples - 1) / 2);
    for (int i = 0; i < n_samples; ++i)
        for (int j = i + 1; j < n_samples; ++j)
            pairs.emplace_back(L * i / n_samples, L * j / n_samples);
    return chord_arc_ratio(curve, pairs);
}

double normal_holder_seminorm(const InterfaceCurve& curve, double alpha, int n_samples) {
    if (curve.kind() == InterfaceCurve::Kind::Polygon)
        throw std::invalid_argument("normal_holder_seminorm: normal is discontinuous on polygons");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("normal_holder_seminorm: alpha must lie in (0,1]");
    double L = curve.perimeter();
    std::vector<Vec2> pts(n_samples), nrm(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        double s = L * (i + 0.5) / n_samples;
        pts[i] = curve.point_at(s);
        nrm[i] = curve.normal_at(s);
    }
    double sup = 0.0;
    for (int i = 0; i < n_samples; ++i)
        for (int j = i + 1; j < n_samples; ++j) {
            double e = distance(pts[i], pts[j]);
            if (e < 1e-12) continue;
            sup = std::max(sup, distance(nrm[i], nrm[j]) / std::pow(e, alpha));
        }
    return sup;
}

// ---------------------------------------------------------------------------
// Smooth approximation via mollified signed distance level sets

namespace {

struct MollifierNode {
    Vec2 z;
    double w;
};

// fixed quadrature of a radial bump on the unit disk; first moments vanish by
// the symmetric angular layout, so locally linear fields mollify exactly.
const std::vector<MollifierNode>& mollifier_nodes() {
    static const std::vector<MollifierNode> nodes = [] {
        std::vector<MollifierNode> out;
        const int nr = 5, na = 16;
        double wsum = 0.0;
        for (int i = 0; i < nr; ++i) {
            double rho = (i + 0.5) / nr;
            double psi = std::exp(-1.0 / (1.0 - rho * rho));
            for (int a = 0; a < na; ++a) {
                double th = 2.0 * kPi * (a + 0.5) / na;
                double w = psi * rho;
                out.push_back({{rho * std::cos(th), rho * std::sin(th)}, w});
                wsum += w;
            }
        }
        for (auto& n : out) n.w /= wsum;
        return out;
    }();
    return nodes;
}

} // namespace

InterfaceCurve smooth_approximation(const InterfaceCurve& base, int j,
                                    const std::optional<Domain>& within) {
    if (j <= 0) throw std::invalid_argument("smooth_approximation: j must be positive");
    const double sigma = 0.5 / j;
    const double level = 1.0 / j;

    auto mollified = [&](Vec2 x) {
        double v = 0.0;
        for (const auto& n : mollifier_nodes()) v += n.w * base.signed_distance(x + sigma * n.z);
        return v;
    };

    Vec2 anchor;
    double reach;
    if (base.kind() == InterfaceCurve::Kind::Circle) {
        anchor = base.circle_center();
        reach = base.circle_radius();
    } else {
        const auto& pts = base.polyline_points();
        double area2 = 0.0;
        Vec2 csum{0.0, 0.0};
        const int n = static_cast<int>(pts.size());
        for (int i = 0; i < n; ++i) {
            double c = cross(pts[i], pts[(i + 1) % n]);
            area2 += c;
            csum += c * (pts[i] + pts[(i + 1) % n]);
        }
        anchor = csum / (3.0 * area2);
        reach = 0.0;
        for (const auto& p : pts) reach = std::max(reach, distance(p, anchor));
    }
    if (!(mollified(anchor) < level))
        throw std::invalid_argument("smooth_approximation: anchor not inside the level set");

    const int m = std::max(512, 16 * j);
    std::vector<Vec2> traced(m);
    double t_hi0 = reach + level + 4.0 * sigma + 0.1;
    for (int i = 0; i < m; ++i) {
        double phi = 2.0 * kPi * i / m;
        Vec2 u{std::cos(phi), std::sin(phi)};
        double lo = 0.0, hi = t_hi0;
        double ghi = mollified(anchor + hi * u) - level;
        int guard = 0;
        while (ghi <= 0.0 && guard++ < 8) {
            hi *= 1.5;
            ghi = mollified(anchor + hi * u) - level;
        }
        if (ghi <= 0.0) throw MeshingError("smooth_approximation: failed to bracket level set");
        for (int it = 0; it < 64 && hi - lo > 1e-11; ++it) {
            double mid = 0.5 * (lo + hi);
            if (mollified(anchor + mid * u) - level < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        traced[i] = anchor + 0.5 * (lo + hi) * u;
        if (within && !(within->boundary_distance(traced[i]) > 0.0))
            throw std::invalid_argument("smooth_approximation: level set touches the domain boundary");
    }

    std::vector<CurveSample> samples(m);
    for (int i = 0; i < m; ++i) {
        samples[i].point = traced[i];
        samples[i].tangent = normalized(traced[(i + 1) % m] - traced[(i + m - 1) % m]);
    }
    InterfaceCurve out = InterfaceCurve::parametric(std::move(samples));
    out.kind_ = InterfaceCurve::Kind::LevelSetSmoothed;
    out.smoothing_j_ = j;
    return out;
}

bool perimeter_bound_check(const InterfaceCurve& curve, double seminorm_estimate) {
    if (!(seminorm_estimate >= 0.0))
        throw std::invalid_argument("perimeter_bound_check: estimate must be nonnegative");
    double bound = (1.0 + seminorm_estimate) * (1.0 + seminorm_estimate);
    return curve.perimeter() <= bound;
}

} // namespace curvefem
