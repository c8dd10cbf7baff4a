#pragma once

#include "curvefem/fields.hpp"
#include "curvefem/mesh.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace curvefem {

/// Symmetric sparse system in CSR storage with a Dirichlet mask.
struct SparseSystem {
    int n = 0;
    std::vector<int> row_ptr, col;
    std::vector<double> val;
    std::vector<double> rhs;
    std::vector<uint8_t> dirichlet;
    std::vector<double> dirichlet_value;

    double& coeff(int i, int j); // existing entry only
    std::vector<double> multiply(const std::vector<double>& x) const;
};

struct SolveStats {
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Nodal P1 solution with its piecewise-constant gradient.
struct SolutionField {
    std::shared_ptr<const TriangleMesh> mesh;
    std::vector<double> values;
    std::vector<Vec2> gradient; // per triangle
    SolveStats stats;

    double value_at_vertex(int v) const { return values[v]; }
    void write_vertex_csv(std::ostream& os) const;  // x,y,u
    void write_element_csv(std::ostream& os) const; // cx,cy,gx,gy,label
};

enum class Region { Whole, Annulus };

/// Element matrices use one-point (centroid) coefficient quadrature against
/// exact P1 gradients. Restrict to one side's elements for region solves.
SparseSystem assemble_stiffness(const TriangleMesh& mesh, const CoefficientField& A,
                                std::optional<Side> restrict_side = std::nullopt);

/// Surface load along the fitted interface: 2-point Gauss per interface edge.
std::vector<double> assemble_surface_load(const TriangleMesh& mesh,
                                          const InterfaceCurve& curve,
                                          const DensityField& Q);

/// Symmetric elimination of the constrained rows/columns; after the call the
/// constrained diagonal is 1 and the rhs carries the boundary values.
void apply_dirichlet(SparseSystem& system, const std::vector<uint8_t>& mask,
                     const std::vector<double>& values);
void apply_dirichlet_zero(SparseSystem& system, const TriangleMesh& mesh);

/// Jacobi-preconditioned conjugate gradients, deterministic.
std::vector<double> cg_solve(const SparseSystem& system, double rel_tol, SolveStats* stats);

SolutionField solve(const SparseSystem& system, std::shared_ptr<const TriangleMesh> mesh,
                    double rel_tol = 1e-10);

/// End-to-end solve of the measure problem on a fitted mesh.
SolutionField solve_measure_problem(std::shared_ptr<const TriangleMesh> mesh,
                                    const InterfaceCurve& curve, const CoefficientField& A,
                                    const DensityField& Q, double rel_tol = 1e-10);

/// A-harmonic solve with inhomogeneous Dirichlet data (by lifting). For the
/// annulus region the interface vertices are constrained as well and the
/// solution is extended by its interface values (zero for zero data) inside.
SolutionField solve_dirichlet(std::shared_ptr<const TriangleMesh> mesh,
                              const CoefficientField& A,
                              const std::function<double(Vec2)>& boundary_values,
                              Region region = Region::Whole, double rel_tol = 1e-10);

std::vector<Vec2> compute_gradients(const TriangleMesh& mesh, const std::vector<double>& u);

/// Element-wise energy sum area * (A grad u, grad u).
double bilinear_energy(const TriangleMesh& mesh, const CoefficientField& A,
                       const std::vector<double>& u);

} // namespace curvefem
