#pragma once

#include "curvefem/fem.hpp"

#include <functional>
#include <vector>

namespace curvefem {

struct TraceRecord {
    Vec2 x{};
    double arclength = 0.0;
    Vec2 normal{};
    Vec2 grad_inside{}, grad_outside{};
    Vec2 theta{};
    double normal_jump = 0.0;
    double predicted_jump = 0.0;
};

struct TraceReport {
    std::vector<TraceRecord> records;
    double max_jump_error = 0.0;
    double mean_jump_error = 0.0;
    double max_tangential_jump = 0.0;
};

/// One-sided gradients read from the elements flanking each interface edge;
/// predicted_jump = Q / (A nu, nu) at the edge midpoint.
TraceReport one_sided_traces(const SolutionField& u, const InterfaceCurve& curve,
                             const CoefficientField& A, const DensityField& Q);

/// Ball averages of the gradient extrapolated linearly to r -> 0.
Vec2 estimate_theta(const SolutionField& u, Vec2 x0, const std::vector<double>& radii);

struct TaylorFit {
    Vec2 theta_fit{};
    double kink_coeff = 0.0;
    double expected_kink = 0.0; // -Q/(2 (A nu, nu)) at x0
    double rms_residual = 0.0;
};

/// Least-squares fit of nodal values near x0 on the interface to
/// c0 + (c, x-x0) + k |(x-x0, nu)|; k approximates -Q/(2 (A nu, nu)).
TaylorFit taylor_fit(const SolutionField& u, Vec2 x0, const CoefficientField& A,
                     const DensityField& Q, const InterfaceCurve& curve,
                     double fit_radius = 0.0);

double lp_gradient_norm(const SolutionField& u, double p);
double linf_gradient_norm(const SolutionField& u);
double local_linf_gradient(const SolutionField& u, Vec2 center, double radius);

struct NormReport {
    std::vector<double> p_grid;
    std::vector<double> lp_norms;
    double linf = 0.0;
    double h = 0.0;
};

NormReport gradient_norm_report(const SolutionField& u, std::vector<double> p_grid);

struct BlowupFit {
    std::vector<double> radii;
    std::vector<double> max_grad; // max |d1 u| over the dyadic annulus at each radius
    double slope = 0.0;           // against log(1/r)
    double intercept = 0.0;
    double fit_residual = 0.0;
};

BlowupFit blowup_log_fit(const SolutionField& u, Vec2 corner, const std::vector<double>& radii);

struct IntegrabilityRow {
    double p = 0.0;
    double growth_rate = 0.0; // d log||grad u||_p / d log(1/h), finest pair
    bool diverging = false;
    bool monotone = true;
};

struct IntegrabilityResult {
    double p_crit = 0.0; // 0 when no divergence was detected on the grid
    bool conclusive = true;
    double growth_threshold = 0.0;
    std::vector<IntegrabilityRow> table;
};

/// Detects the integrability threshold from norm reports over >= 3 levels.
IntegrabilityResult integrability_exponent(const std::vector<NormReport>& levels,
                                           double growth_threshold = 0.047);

/// Across-interface conormal jump of w = u + (Q/(2 (A nu,nu))) |d|; vanishes
/// under refinement when the solution has the predicted kink.
double prototype_residual(const SolutionField& u, const InterfaceCurve& curve,
                          const CoefficientField& A, const DensityField& Q);

struct ScalarTestFunction {
    std::function<double(Vec2)> value;
    std::function<double(Vec2, int, int)> hessian;
};

/// |LHS - RHS| of the distributional identity for 0.5 Q0 |d| on a tube of
/// width 2*tube_eps, with an N x N tube-fitted quadrature grid. Second
/// derivatives of the signed distance are taken by central differences.
double distributional_identity_residual(const InterfaceCurve& curve,
                                        const std::function<double(Vec2)>& Q0,
                                        const ScalarTestFunction& phi, double tube_eps,
                                        int deriv_i, int deriv_j, int grid_n);

struct AnalyticTestFunction {
    std::function<double(Vec2)> value;
    std::function<Vec2(Vec2)> grad;
    std::function<double(Vec2)> div_A_grad;
};

/// | -int u_h div(A grad phi) - int_Gamma Q phi |, element-wise degree-5 quadrature.
double very_weak_residual(const SolutionField& u, const InterfaceCurve& curve,
                          const DensityField& Q, const AnalyticTestFunction& phi,
                          int curve_quad_nodes = 2048);

/// | int (A grad u_h, grad phi) - int_Gamma Q phi |.
double weak_residual(const SolutionField& u, const InterfaceCurve& curve,
                     const CoefficientField& A, const DensityField& Q,
                     const AnalyticTestFunction& phi, int curve_quad_nodes = 2048);

/// Least-squares line y = slope*x + intercept.
struct LineFit {
    double slope = 0.0, intercept = 0.0, rms = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace curvefem
