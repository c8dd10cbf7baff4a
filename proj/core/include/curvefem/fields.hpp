#pragma once

#include "curvefem/geometry.hpp"
#include "curvefem/vec2.hpp"

#include <string>
#include <vector>

namespace curvefem {

struct SolutionField; // fem.hpp

/// Symmetric uniformly elliptic coefficient matrix field A(x).
class CoefficientField {
  public:
    enum class Kind { Identity, Meyers, SmoothPerturbation, Tabulated };

    static CoefficientField identity();
    static CoefficientField meyers(double mu);
    static CoefficientField smooth_perturbation(double amplitude, double frequency);
    static CoefficientField tabulated(Vec2 lo, Vec2 hi, int nx, int ny,
                                      std::vector<Matrix2> values);

    /// Parse "identity" | "meyers:<mu>" | "perturbation:<amp>,<freq>".
    static CoefficientField parse(const std::string& spec);

    Matrix2 operator()(Vec2 x) const;

    Kind kind() const { return kind_; }
    double meyers_mu() const { return mu_; }
    std::string name() const;

  private:
    Kind kind_ = Kind::Identity;
    double mu_ = 0.0;
    double amplitude_ = 0.0, frequency_ = 0.0;
    Vec2 lo_{}, hi_{};
    int nx_ = 0, ny_ = 0;
    std::vector<Matrix2> table_;
};

/// Density Q along the interface, addressed by arclength.
class DensityField {
  public:
    enum class Kind { Constant, OnCurve };

    static DensityField constant(double q);
    /// Periodic linear interpolation in arclength of (s_i, q_i) samples.
    static DensityField on_curve(std::vector<double> arclengths, std::vector<double> values,
                                 double period, double holder_alpha = 1.0);

    double operator()(double arclength) const;
    double at_point(const InterfaceCurve& curve, Vec2 x_on_curve) const;

    Kind kind() const { return kind_; }
    double constant_value() const { return q_; }
    double holder_alpha() const { return alpha_; }

  private:
    Kind kind_ = Kind::Constant;
    double q_ = 0.0;
    double alpha_ = 1.0;
    double period_ = 0.0;
    std::vector<double> s_, v_;
};

struct EllipticityReport {
    double min_eigenvalue = 0.0;
    double max_norm = 0.0;
    double symmetry_defect = 0.0;
    int sample_count = 0;
};

CoefficientField meyers_coefficient(double mu);

EllipticityReport validate_coefficient(const CoefficientField& field,
                                       const std::vector<Vec2>& sample_points);

/// Density on the unit circle from one-sided conormal traces of an A-harmonic
/// annulus solution, taken from outside: Q = -(A grad u2, nu) on |x| = 1.
DensityField meyers_density(double mu, const SolutionField& u2_solution);

} // namespace curvefem
