#pragma once

#include <string>
#include <vector>

#include "layersolve/grid.hpp"
#include "layersolve/rk.hpp"

namespace layersolve {

/// The half-line problem 2y'' = y^2 - s, y(0) = 0, y - sqrt(s) -> 0 has
/// exactly two solutions: Plus is strictly increasing, Minus starts with
/// negative slope and has a unique interior minimum.
enum class Branch { Plus, Minus };

std::string to_string(Branch b);

/// Fate of a shooting trajectory. Overshoot: y exceeds sqrt(s) + 1 (blows
/// up). Undershoot: past the gate, y drops below sqrt(s) - 1 and is captured
/// by the oscillator family around -sqrt(s) (the blow-down side).
enum class TrajectoryFate { Overshoot, Undershoot };

struct ShootOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    double s_gate = 6.0;       // undershoot detection starts here
    double s_classify = 25.0;  // classification horizon
    double slope_tol = 1e-12;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Default shooting brackets. The Plus bracket matches the problem
/// statement; the Minus slope sits near -3.3, so its bracket is [-4, -2].
Interval default_bracket(Branch b);

/// Boundary-layer profile on [0, s_max]: values and first derivatives on a
/// graded grid, C^1 cubic between nodes, second derivative from the ODE.
struct PainleveSolution {
    Branch branch = Branch::Plus;
    HalfLineGrid grid;
    std::vector<double> y;
    std::vector<double> yp;
    double slope_at_origin = 0.0;  // from the producing method (see shoot/refine)
    double tail_coefficient = 0.0; // fitted limit of (y - sqrt(s)) s^2
    double residual_sup = 0.0;     // interpolant ODE defect, off-collocation points

    double s_max() const { return grid.s_max(); }
};

struct PointValue {
    double y = 0.0;
    double yp = 0.0;
    double ypp = 0.0;  // always (y^2 - s)/2
};

/// Classify one shooting trajectory.
TrajectoryFate classify_slope(double sigma, const ShootOptions& opts = {});

/// Bisection shooting for the connecting slope, followed by a global
/// collocation polish so the returned profile is accurate out to s_max.
/// slope_at_origin records the bisected slope (the collocation estimate is
/// yp[0]; the two agree to ~1e-9 and tests cross-check them).
PainleveSolution shoot(Branch branch, double s_max, Interval slope_bracket, double tol,
                       const ShootOptions& opts = {});
PainleveSolution shoot(Branch branch, double s_max = 40.0);

/// Global Newton collocation (Lobatto IIIA, fourth order) on [0, s_max] with
/// far-field boundary value sqrt(s) - s^-2/4 (far_field_order >= 1; order 2
/// adds the next tail term). Stabilises the tail where shooting loses
/// accuracy. slope_at_origin is the collocation derivative at 0.
PainleveSolution refine_collocation(const PainleveSolution& seed, double s_max,
                                    int far_field_order = 1);

/// Pointwise evaluation: cubic Hermite for y and yp, ypp = (y^2 - s)/2.
PointValue evaluate(const PainleveSolution& sol, double s);

/// phi = Y+ - Y-, the unique ground state of 2u'' - 2 Y+ u + u^2 = 0.
struct DifferenceProfile {
    HalfLineGrid grid;
    std::vector<double> phi;
    std::vector<double> phip;

    /// Last index with phi > floor; beyond it the subtraction is rounding
    /// noise (the profile decays super-exponentially).
    std::size_t valid_end(double floor = 1e-12) const;
};

DifferenceProfile difference_profile(const PainleveSolution& plus, const PainleveSolution& minus);

/// Sup of the ground-state equation residual 2 phi'' - 2 Y+ phi + phi^2 with
/// phi'' reconstructed from the two Painleve ODEs.
double difference_residual_sup(const DifferenceProfile& d, const PainleveSolution& plus,
                               const PainleveSolution& minus);

struct SlopeScan {
    std::vector<double> connecting_slopes;  // verified, ascending
    int raw_transitions = 0;                // classification sign changes seen by the grid
};

/// Classify n equally spaced slopes in [lo, hi]; each classification
/// transition is bisected and kept only if the refined trajectory actually
/// tracks sqrt(s) (band-hold check), which filters threshold-graze
/// artifacts. Both connecting slopes lie in the default window.
SlopeScan scan_connecting_slopes(double lo = -4.5, double hi = 3.0, int n = 2000,
                                 const ShootOptions& opts = {});

/// CSV (s,Y,Yp) and JSON metadata export.
void export_profile_csv(const PainleveSolution& sol, const std::string& path);
void export_profile_json(const PainleveSolution& sol, const std::string& path);

}  // namespace layersolve
