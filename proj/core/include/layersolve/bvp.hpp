#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "layersolve/composite.hpp"

namespace layersolve {

/// A converged solution of 2u'' = u^2 - A(1-x^2), u(+-1) = 0, together with
/// the correction phi = u - u_ap and Newton diagnostics.
struct BvpSolution {
    double A = 0.0;
    Branch left = Branch::Plus;
    Branch right = Branch::Plus;
    Mesh mesh;
    std::vector<double> u;
    std::vector<double> phi;
    std::vector<double> u_ap;
    int newton_iters = 0;
    double final_residual = 0.0;
    std::vector<double> residual_history;

    double phi_sup() const;
    /// max over the final iterations of ||F_{k+1}|| / ||F_k||^2; bounded
    /// values certify the quadratic tail.
    double quadratic_ratio() const;
};

struct NewtonOptions {
    double tol = -1.0;  // <0: use 1e-8 * A
    int max_iters = 50;
    int max_halvings = 6;
};

/// Damped Newton on the discretized equation, seeded by the composite (or by
/// an explicit seed). The Jacobian 2 d^2/dx^2 - 2u is the linearization the
/// linear theory studies, discretized with the same stencil.
BvpSolution newton_solve(const CompositeSolution& comp, const NewtonOptions& opts = {});
BvpSolution newton_solve(const CompositeSolution& comp, const std::vector<double>& seed,
                         const NewtonOptions& opts = {});

/// Discrete sup-norm residual of 2u'' - u^2 + A(1-x^2) on the mesh interior.
double discrete_residual_sup(double A, const Mesh& mesh, const std::vector<double>& u);

/// Residual after cubic interpolation of u onto the once-halved mesh.
double doubled_mesh_residual_sup(const BvpSolution& sol);

/// Normalized correction suprema: boundary zones weight A^{2/5}(1-x^2),
/// interior weight (1-x^2)^{-1}, and the boundary derivative bound A^{2/5}.
struct CorrectionRegionReport {
    double boundary_sup = 0.0;    // sup |phi| / (A^{2/5} (1-x^2))
    double middle_sup = 0.0;      // sup |phi| (1-x^2)
    double derivative_sup = 0.0;  // sup |phi'| / A^{2/5} on the boundary core
};

CorrectionRegionReport correction_region_report(const BvpSolution& sol);

/// The five region-normalized suprema of the main convergence statement:
/// boundary cores (r1/r3), matching zones (r2/r4), and the outer region.
struct TheoremRegionReport {
    double r1 = 0.0;   // sup |u - u_in| / (A^{2/5} (x+1)), s <= D
    double r2 = 0.0;   // sup |u - u_in| / (A^{1/2} (x+1)^{3/2}), D <= s <= S2
    double r3 = 0.0;   // mirrored r1
    double r4 = 0.0;   // mirrored r2
    double mid = 0.0;  // sup (1-x^2)^2 |u - sqrt(A(1-x^2))|, core-to-core
};

TheoremRegionReport theorem_region_report(const BvpSolution& sol, const PainleveSolution& left,
                                          const PainleveSolution& right);

void export_solution_csv(const BvpSolution& sol, const std::string& path);

}  // namespace layersolve
