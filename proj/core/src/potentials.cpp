#include "curvefem/potentials.hpp"

#include "curvefem/errors.hpp"

#include <cmath>
#include <numbers>

namespace curvefem {

namespace {
constexpr double kPi = std::numbers::pi;
}

GreenDisk::GreenDisk(double radius) : R(radius) {
    if (!(R > 0.0)) throw std::invalid_argument("green_disk: R must be positive");
}

double GreenDisk::operator()(Vec2 x, Vec2 y) const { return green_disk(R, x, y); }

double green_disk(double R, Vec2 x, Vec2 y) {
    if (!(R > 0.0)) throw std::invalid_argument("green_disk: R must be positive");
    double d = distance(x, y);
    if (d < 1e-300) throw SingularityError("green_disk: x == y");
    double ry = norm(y);
    if (ry < 1e-14) return -(std::log(norm(x)) - std::log(R)) / (2.0 * kPi);
    Vec2 y_image = (R * R / (ry * ry)) * y;
    double image_term = (ry / R) * distance(x, y_image);
    return -(std::log(d) - std::log(image_term)) / (2.0 * kPi);
}

double green_solution(double R, const InterfaceCurve& curve, const DensityField& Q, Vec2 x,
                      int quad_nodes) {
    auto rule = curve_quadrature(curve, quad_nodes);
    double u = 0.0;
    for (const auto& node : rule.nodes) u += node.weight * Q(node.arclength) * green_disk(R, x, node.point);
    return u;
}

double RadialOracle::value(double r) const {
    r = std::fabs(r);
    if (r <= rho) return q * rho * std::log(R / rho);
    if (r >= R) return 0.0;
    return q * rho * std::log(R / r);
}

double RadialOracle::derivative(double r) const {
    r = std::fabs(r);
    if (r < rho) return 0.0;
    if (r > R) return 0.0;
    return -q * rho / r;
}

RadialOracle radial_oracle(double R, double rho, double q_const) {
    if (!(rho > 0.0 && rho < R)) throw std::invalid_argument("radial_oracle: need 0 < rho < R");
    if (!std::isfinite(q_const)) throw std::invalid_argument("radial_oracle: density must be finite");
    return {R, rho, q_const};
}

SegmentIntegrals segment_kernel_integrals(Vec2 x) {
    auto on_segment = [](double along, double perp) {
        return std::fabs(perp) < 1e-14 && along > -1e-14 && along < 0.5 + 1e-14;
    };
    if (on_segment(x.x, x.y) || on_segment(x.y, x.x))
        throw SingularityError("segment_kernel_integrals: point on a segment");
    SegmentIntegrals out;
    double a = (x.x - 0.5) * (x.x - 0.5) + x.y * x.y;
    double b = x.x * x.x + x.y * x.y;
    out.i1 = -0.5 * std::log(a) + 0.5 * std::log(b);
    if (x.x == 0.0)
        out.i2 = 0.0; // limit of the arctan difference off the segment
    else
        out.i2 = -std::atan((x.y - 0.5) / x.x) + std::atan(x.y / x.x);
    return out;
}

double triangle_gradient_oracle(Vec2 x) {
    double r = norm(x);
    if (!(r > 0.0 && r < 0.2))
        throw std::invalid_argument("triangle_gradient_oracle: need 0 < |x| < 0.2");
    auto s = segment_kernel_integrals(x);
    return -(s.i1 + s.i2) / (2.0 * kPi);
}

ValueGrad meyers_u1(double mu, Vec2 x) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("meyers_u1: mu in (0,1)");
    double r2 = norm2(x);
    if (r2 < 1e-300) throw SingularityError("meyers_u1: origin");
    double r = std::sqrt(r2);
    double rp = std::pow(r, mu - 1.0); // r^(mu-1)
    ValueGrad out;
    out.value = x.x * rp;
    out.gradient.x = rp * (1.0 + (mu - 1.0) * x.x * x.x / r2);
    out.gradient.y = rp * (mu - 1.0) * x.x * x.y / r2;
    return out;
}

namespace {
double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, flm, m, fm);
    double right = simpson(m, fm, frm, b, fb);
    if (depth > 60 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}
} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    double m = 0.5 * (a + b), fa = f(a), fb = f(b), fm = f(m);
    return adaptive_step(f, a, fa, b, fb, m, fm, simpson(a, fa, fm, b, fb), tol, 0);
}

} // namespace curvefem
