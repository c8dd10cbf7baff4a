#pragma once

#include "curvefem/errors.hpp"
#include "curvefem/vec2.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curvefem {

/// Computational domain Omega. The interface curve lives strictly inside it.
struct Domain {
    enum class Kind { Disk, Rectangle };

    Kind kind = Kind::Disk;
    Vec2 center{};
    double radius = 0.0;
    Vec2 lo{}, hi{};
    int boundary_resolution = 0; // 0: derive from mesh size

    static Domain disk(Vec2 center, double radius, int boundary_resolution = 0);
    static Domain rectangle(Vec2 lo, Vec2 hi, int boundary_resolution = 0);

    bool contains(Vec2 x) const;
    /// Distance from x to the domain boundary (positive inside).
    double boundary_distance(Vec2 x) const;
};

enum class RegularityClass { Lipschitz, C1Alpha, Smooth };

struct CurveSample {
    Vec2 point;
    Vec2 tangent; // unit, ccw orientation
};

/// Closed, simple, ccw-oriented curve; the outward normal points away from
/// the enclosed region.
class InterfaceCurve {
  public:
    enum class Kind { Circle, Polygon, Parametric, LevelSetSmoothed };

    static InterfaceCurve circle(Vec2 center, double radius);
    static InterfaceCurve polygon(std::vector<Vec2> vertices);
    static InterfaceCurve parametric(std::vector<CurveSample> samples);

    Kind kind() const { return kind_; }
    RegularityClass regularity_class() const { return regularity_; }
    double holder_alpha() const { return alpha_; }

    double perimeter() const { return length_; }
    double enclosed_area() const;

    /// Negative inside the enclosed region, positive outside.
    double signed_distance(Vec2 x) const;
    Vec2 closest_point(Vec2 x) const;
    /// Arclength coordinate of the closest curve point.
    double project_arclength(Vec2 x) const;

    Vec2 point_at(double s) const;
    Vec2 tangent_at(double s) const;
    Vec2 normal_at(double s) const; // outward unit normal

    /// Arclength coordinates with spacing <= max_spacing; polygon corners are
    /// always included exactly.
    std::vector<double> sample_arclengths(double max_spacing) const;

    Vec2 circle_center() const { return center_; }
    double circle_radius() const { return radius_; }
    const std::vector<Vec2>& polygon_vertices() const { return points_; }
    int smoothing_level() const { return smoothing_j_; }

    const std::vector<Vec2>& polyline_points() const { return points_; }

  private:
    InterfaceCurve() = default;
    void build_polyline_tables();
    int nearest_segment(Vec2 x, double* t_out, double* dist2_out) const;

    Kind kind_ = Kind::Circle;
    RegularityClass regularity_ = RegularityClass::Smooth;
    double alpha_ = 1.0;

    Vec2 center_{};
    double radius_ = 0.0;

    // closed polyline (polygon vertices or parametric sample points)
    std::vector<Vec2> points_;
    std::vector<Vec2> tangents_;  // per sample (parametric only)
    std::vector<double> cum_;     // cumulative arclength at points_[i]
    std::vector<double> seg_len_;
    double length_ = 0.0;
    int smoothing_j_ = 0;

    // uniform grid over segment indices for nearest-point queries
    struct SegmentGrid {
        double cell = 0.0;
        Vec2 origin{};
        int nx = 0, ny = 0;
        std::vector<std::vector<int>> bins;
    };
    SegmentGrid grid_;

    friend InterfaceCurve smooth_approximation(const InterfaceCurve&, int,
                                               const std::optional<Domain>&);
};

/// Signed distance induced by a curve: negative inside, zero on the curve.
class SignedDistanceField {
  public:
    explicit SignedDistanceField(InterfaceCurve source) : source_(std::move(source)) {}
    double operator()(Vec2 x) const { return source_.signed_distance(x); }
    Vec2 gradient_direction(Vec2 x) const; // unit, outward
    const InterfaceCurve& source() const { return source_; }

  private:
    InterfaceCurve source_;
};

InterfaceCurve make_circle(Vec2 center, double radius);
/// The canonical right-angle triangle (0,0), (1/2,0), (0,1/2).
InterfaceCurve make_triangle();
/// Axis-aligned ellipse traced ccw.
InterfaceCurve make_ellipse(Vec2 center, double a, double b, int samples = 2048);

struct QuadratureNode {
    Vec2 point;
    double weight;
    Vec2 normal;
    double arclength;
};

struct QuadratureRule1D {
    std::vector<QuadratureNode> nodes;
    double total_weight() const;
};

/// Composite Gauss-Legendre rule along the curve with roughly n nodes
/// (polygons: nodes distributed per edge, at least 2 per edge).
QuadratureRule1D curve_quadrature(const InterfaceCurve& curve, int n);

double integrate_on_curve(const InterfaceCurve& curve, int n,
                          const std::function<double(Vec2)>& f);

/// sup over the given centers/radii of (curve length inside B_r(c)) / r.
double measure_growth_constant(const InterfaceCurve& curve,
                               const std::vector<Vec2>& centers,
                               const std::vector<double>& radii,
                               int base_segments = 8192);

/// max over the arclength pairs of intrinsic distance / Euclidean distance.
double chord_arc_ratio(const InterfaceCurve& curve,
                       const std::vector<std::pair<double, double>>& arc_pairs);

/// Convenience: all pairs over n uniformly spaced arclength samples.
double chord_arc_ratio(const InterfaceCurve& curve, int n_samples);

/// max over sampled pairs of |nu(x)-nu(y)| / |x-y|^alpha. Rejects polygons.
double normal_holder_seminorm(const InterfaceCurve& curve, double alpha,
                              int n_samples = 512);

/// Level set {mollified signed distance = 1/j}, mollification radius 1/(2j),
/// traced as a parametric curve. The enclosed region contains the base one.
InterfaceCurve smooth_approximation(const InterfaceCurve& base, int j,
                                    const std::optional<Domain>& within = std::nullopt);

/// true iff measured perimeter <= (1 + seminorm_estimate)^2.
bool perimeter_bound_check(const InterfaceCurve& curve, double seminorm_estimate);

} // namespace curvefem
