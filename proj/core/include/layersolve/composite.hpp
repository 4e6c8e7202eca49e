#pragma once

#include <string>
#include <utility>
#include <vector>

#include "layersolve/grid.hpp"
#include "layersolve/painleve.hpp"

namespace layersolve {

enum class Side { Left, Right };

/// Geometry knobs of the glued approximation. The paper's windows are
/// asymptotic (inner region up to 1/delta stretched units, cutoff fade over
/// an x-interval of width delta); at the A values this library targets those
/// windows do not fit inside the channel, so the matching window is pinned
/// in stretched units per branch and the cutoff plateau is clamped to start
/// where the matching window ends. The x-scale windows take over verbatim
/// once delta*(2A)^{1/5} exceeds the clamps (A around 1e8 at the defaults).
struct CompositeConfig {
    double A = 1e4;
    Branch left = Branch::Plus;
    Branch right = Branch::Plus;
    double delta = 0.1;          // outer-correction fade half-width in x
    double big_d = 4.0;          // boundary-core width in stretched units
    double s_max = 40.0;
    double s_match_plus = 1.8;   // matching window start, Plus profile
    double s_match_minus = 4.2;  // matching window start, Minus profile

    double layer_width() const;  // (2A)^{-1/5}
    double stretch() const;      // (2A)^{1/5}
    double s_match(Branch b) const;
    double s_glue(Side side) const;
    /// Plateau of the outer-correction cutoffs in stretched units:
    /// max(delta * (2A)^{1/5}, 2 * max matching window).
    double s_outer() const;

    void validate() const;  // throws ConfigInfeasible
};

struct TripleValue {
    double u = 0.0;
    double up = 0.0;
    double upp = 0.0;
};

/// Pointwise evaluator for the glued approximation.
class Composite {
public:
    Composite(CompositeConfig cfg, const PainleveSolution* left, const PainleveSolution* right);

    const CompositeConfig& config() const { return cfg_; }

    /// Rescaled boundary-layer profile: u = (2A)^{2/5} Y((2A)^{1/5}(1 -+ x)).
    TripleValue inner(Side side, double x) const;

    /// Modified outer approximation (square root of the corrected radicand).
    /// Throws NegativeRadicand where the correction overwhelms A(1-x^2).
    TripleValue outer(double x) const;

    /// Glued value at one point.
    TripleValue value(double x) const;

private:
    double stretched(Side side, double x) const;

    CompositeConfig cfg_;
    const PainleveSolution* yl_;
    const PainleveSolution* yr_;
    double c1_, c2_, c3_, c4_;  // powers (2A)^{k/5}
};

/// Glued approximate solution on a boundary-refined mesh, with analytic
/// first/second derivatives and the defect E = 2u'' - u^2 + A(1-x^2).
struct CompositeSolution {
    CompositeConfig config;
    Mesh mesh;
    std::vector<double> u;
    std::vector<double> up;
    std::vector<double> upp;
    std::vector<double> E;

    double e_sup() const;
};

/// Region-normalized residual suprema (boundary zones vs interior), the
/// matching-window closeness sups of the outer/inner pair, and the measured
/// lower-bound constant of u_ap.
struct ResidualRegionReport {
    double A = 0.0;
    double boundary_norm_sup = 0.0;  // sup |E| / (A (1-x^2)^2), pure-inner zones
    double middle_norm_sup = 0.0;    // sup |E| (1-x^2)^{1/2} / A^{1/2}, rest
    double matching_sup_0 = 0.0;     // |u_out - u_in| / (A^{1/2} (1-x^2)^{3/2})
    double matching_sup_1 = 0.0;     // derivative analogue, weight (1-x^2)^{1/2}
    double matching_sup_2 = 0.0;     // second derivative, weight (1-x^2)^{-1/2}
    double lower_bound_c = 0.0;      // min u_ap / (sqrt(A/2) sqrt(1-x^2)) on the core
};

/// The scaled form eps^2 v'' = v^2 - (1-x^2) with v = u / sqrt(A). The
/// substitution forces eps^2 = 2 / sqrt(A); the scaled residual is then
/// exactly (original residual)/A.
struct ScaledProblem {
    double epsilon = 0.0;
    std::vector<double> x;
    std::vector<double> v;
    double residual_sup = 0.0;
};

/// Assemble u_ap on a mesh (boundary-refined default). Throws
/// NegativeRadicand / ConfigInfeasible; the feasibility margin is the
/// outer lower bound u_out^2 >= A(1-x^2)/2 on the evaluated set.
CompositeSolution assemble(const CompositeConfig& cfg, const PainleveSolution& left,
                           const PainleveSolution& right);
CompositeSolution assemble(const CompositeConfig& cfg, const PainleveSolution& left,
                           const PainleveSolution& right, const Mesh& mesh);

ResidualRegionReport residual_region_report(const CompositeSolution& sol,
                                            const PainleveSolution& left,
                                            const PainleveSolution& right);

ScaledProblem to_singular_form(double A, const std::vector<double>& x, const std::vector<double>& u,
                               const std::vector<double>& residual);

void export_composite_csv(const CompositeSolution& sol, const std::string& path);
void export_region_report_json(const ResidualRegionReport& rep, const CompositeConfig& cfg,
                               const std::string& path);

}  // namespace layersolve
