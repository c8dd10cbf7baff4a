#pragma once

#include "curvefem/fields.hpp"
#include "curvefem/geometry.hpp"
#include "curvefem/vec2.hpp"

#include <functional>

namespace curvefem {

/// Dirichlet Green's function of -Laplace on the disk B_R(0), image form.
struct GreenDisk {
    double R = 1.0;
    explicit GreenDisk(double radius);
    double operator()(Vec2 x, Vec2 y) const;
};

double green_disk(double R, Vec2 x, Vec2 y);

/// u(x) = integral over the curve of green_disk(R, x, y) Q(y) ds(y).
double green_solution(double R, const InterfaceCurve& curve, const DensityField& Q, Vec2 x,
                      int quad_nodes = 2048);

/// Closed form for the concentric configuration: domain B_R(0), source on the
/// circle of radius rho with constant density q, zero boundary data.
struct RadialOracle {
    double R = 1.0, rho = 0.5, q = 1.0;

    double value(double r) const;
    double derivative(double r) const; // r != rho
    double derivative_inside() const { return 0.0; }
    double derivative_outside() const { return -q; } // at r = rho+
};

RadialOracle radial_oracle(double R, double rho, double q_const);

struct SegmentIntegrals {
    double i1 = 0.0; // kernel along [0,1/2] x {0}
    double i2 = 0.0; // kernel along {0} x [0,1/2]
};

SegmentIntegrals segment_kernel_integrals(Vec2 x);

/// Dominant part -(1/2pi)(i1+i2) of the first derivative near the right-angle
/// corner; equals the true derivative up to a bounded remainder.
double triangle_gradient_oracle(Vec2 x);

struct ValueGrad {
    double value = 0.0;
    Vec2 gradient{};
};

/// u1(x,y) = x / (x^2+y^2)^((1-mu)/2) with its analytic gradient.
ValueGrad meyers_u1(double mu, Vec2 x);

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12);

} // namespace curvefem
