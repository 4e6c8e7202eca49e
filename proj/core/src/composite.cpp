#include "layersolve/composite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <iomanip>

#include "layersolve/cutoff.hpp"
#include "layersolve/errors.hpp"

#include "json.hpp"

namespace layersolve {

double CompositeConfig::layer_width() const { return std::pow(2.0 * A, -0.2); }
double CompositeConfig::stretch() const { return std::pow(2.0 * A, 0.2); }

double CompositeConfig::s_match(Branch b) const {
    return b == Branch::Plus ? s_match_plus : s_match_minus;
}

double CompositeConfig::s_glue(Side side) const {
    return s_match(side == Side::Left ? left : right);
}

double CompositeConfig::s_outer() const {
    return std::max(delta * stretch(), 2.0 * std::max(s_match(left), s_match(right)));
}

void CompositeConfig::validate() const {
    if (A <= 0.0) throw ConfigInfeasible("A must be positive");
    if (delta <= 0.0 || delta >= 0.5) throw ConfigInfeasible("delta must lie in (0, 1/2)");
    if (big_d <= 0.0) throw ConfigInfeasible("D must be positive");
    if (2.0 * s_outer() > s_max)
        throw ConfigInfeasible("cutoff support exceeds the Painleve domain: raise s_max");
    if (2.0 * stretch() > s_max)
        throw ConfigInfeasible("channel spans more stretched units than the profiles cover");
}

Composite::Composite(CompositeConfig cfg, const PainleveSolution* left,
                     const PainleveSolution* right)
    : cfg_(cfg), yl_(left), yr_(right) {
    cfg_.validate();
    c1_ = cfg_.stretch();
    c2_ = c1_ * c1_;
    c3_ = c2_ * c1_;
    c4_ = c2_ * c2_;
}

double Composite::stretched(Side side, double x) const {
    return side == Side::Left ? c1_ * (1.0 + x) : c1_ * (1.0 - x);
}

TripleValue Composite::inner(Side side, double x) const {
    const double s = stretched(side, x);
    const PainleveSolution& prof = (side == Side::Left) ? *yl_ : *yr_;
    const PointValue p = evaluate(prof, s);
    const double sgn = (side == Side::Left) ? 1.0 : -1.0;
    return {c2_ * p.y, sgn * c3_ * p.yp, c4_ * p.ypp};
}

TripleValue Composite::outer(double x) const {
    const double A = cfg_.A;
    const double s = stretched(Side::Left, x);
    const double t = stretched(Side::Right, x);
    const double s_out = cfg_.s_outer();

    // correction terms (2A)^{4/5} [s - Y^2(s)] n(s) from each boundary,
    // evaluated in stretched units so the cutoffs and the profiles share a
    // coordinate. Beyond the cutoff support the profile is not evaluated.
    double Q = A * (1.0 - x * x);
    double Qp = -2.0 * A * x;
    double Qpp = -2.0 * A;
    for (Side side : {Side::Left, Side::Right}) {
        const double sc = (side == Side::Left) ? s : t;
        if (sc >= 2.0 * s_out) continue;
        const CutoffValue n = cutoff_eval(s_out, sc);
        const PainleveSolution& prof = (side == Side::Left) ? *yl_ : *yr_;
        const PointValue p = evaluate(prof, sc);
        const double dsdx = (side == Side::Left) ? c1_ : -c1_;
        const double corr = sc - p.y * p.y;             // s - Y^2
        const double corr_s = 1.0 - 2.0 * p.y * p.yp;   // d/ds
        const double corr_ss = -2.0 * (p.yp * p.yp + p.y * p.ypp);
        const double f = corr * n.n;
        const double f_s = corr_s * n.n + corr * n.np;
        const double f_ss = corr_ss * n.n + 2.0 * corr_s * n.np + corr * n.npp;
        Q -= c4_ * f;
        Qp -= c4_ * f_s * dsdx;
        Qpp -= c4_ * f_ss * c2_;  // (ds/dx)^2 = c1^2 either side
    }
    if (Q <= 0.0)
        throw NegativeRadicand("outer radicand non-positive at x = " + std::to_string(x));
    const double u = std::sqrt(Q);
    const double up = Qp / (2.0 * u);
    const double upp = Qpp / (2.0 * u) - Qp * Qp / (4.0 * Q * u);
    return {u, up, upp};
}

TripleValue Composite::value(double x) const {
    const double s = stretched(Side::Left, x);
    const double t = stretched(Side::Right, x);
    const double sgl = cfg_.s_glue(Side::Left);
    const double sgr = cfg_.s_glue(Side::Right);
    if (s <= sgl) return inner(Side::Left, x);
    if (t <= sgr) return inner(Side::Right, x);

    TripleValue out = outer(x);
    TripleValue acc = out;
    for (Side side : {Side::Left, Side::Right}) {
        const double sc = (side == Side::Left) ? s : t;
        const double sg = (side == Side::Left) ? sgl : sgr;
        if (sc >= 2.0 * sg) continue;
        const CutoffValue n = cutoff_eval(sg, sc);
        const double dsdx = (side == Side::Left) ? c1_ : -c1_;
        const double chi = n.n;
        const double chip = n.np * dsdx;
        const double chipp = n.npp * c2_;
        const TripleValue ui = inner(side, x);
        const double d = ui.u - out.u;
        const double dp = ui.up - out.up;
        const double dpp = ui.upp - out.upp;
        acc.u += chi * d;
        acc.up += chip * d + chi * dp;
        acc.upp += chipp * d + 2.0 * chip * dp + chi * dpp;
    }
    return acc;
}

double CompositeSolution::e_sup() const {
    double sup = 0.0;
    for (double e : E) sup = std::max(sup, std::abs(e));
    return sup;
}

CompositeSolution assemble(const CompositeConfig& cfg, const PainleveSolution& left,
                           const PainleveSolution& right) {
    return assemble(cfg, left, right, Mesh::boundary_refined(cfg.A));
}

CompositeSolution assemble(const CompositeConfig& cfg, const PainleveSolution& left,
                           const PainleveSolution& right, const Mesh& mesh) {
    Composite comp(cfg, &left, &right);
    CompositeSolution sol;
    sol.config = cfg;
    sol.mesh = mesh;
    const std::size_t n = mesh.size();
    sol.u.resize(n);
    sol.up.resize(n);
    sol.upp.resize(n);
    sol.E.resize(n);

    // outer lower-bound margin: u_out^2 >= A(1-x^2)/2 wherever the outer
    // representation is used. Violations mean the branch-pair layers do not
    // fit inside the channel at this A.
    const double c1 = cfg.stretch();
    double margin = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = mesh.nodes[i];
        const double s = c1 * (1.0 + x), t = c1 * (1.0 - x);
        const TripleValue v = comp.value(x);
        sol.u[i] = v.u;
        sol.up[i] = v.up;
        sol.upp[i] = v.upp;
        sol.E[i] = 2.0 * v.upp - v.u * v.u + cfg.A * (1.0 - x * x);
        if (s > cfg.s_glue(Side::Left) && t > cfg.s_glue(Side::Right)) {
            const TripleValue o = comp.outer(x);
            const double denom = cfg.A * (1.0 - x * x);
            if (denom > 0.0) margin = std::min(margin, o.u * o.u / denom);
        }
    }
    sol.u.front() = 0.0;
    sol.u.back() = 0.0;
    if (margin < 0.5)
        throw ConfigInfeasible("outer lower-bound margin " + std::to_string(margin) +
                               " below 1/2: A too small for this branch pair");
    return sol;
}

ResidualRegionReport residual_region_report(const CompositeSolution& sol,
                                            const PainleveSolution& left,
                                            const PainleveSolution& right) {
    const CompositeConfig& cfg = sol.config;
    Composite comp(cfg, &left, &right);
    ResidualRegionReport rep;
    rep.A = cfg.A;
    const double c1 = cfg.stretch();
    const double sgl = cfg.s_glue(Side::Left), sgr = cfg.s_glue(Side::Right);
    double lower_c = std::numeric_limits<double>::max();
    for (std::size_t i = 1; i + 1 < sol.mesh.size(); ++i) {
        const double x = sol.mesh.nodes[i];
        const double om2 = 1.0 - x * x;
        const double s = c1 * (1.0 + x), t = c1 * (1.0 - x);
        const double e = std::abs(sol.E[i]);
        if (s <= sgl || t <= sgr) {
            rep.boundary_norm_sup = std::max(rep.boundary_norm_sup, e / (cfg.A * om2 * om2));
        } else {
            rep.middle_norm_sup =
                std::max(rep.middle_norm_sup, e * std::sqrt(om2) / std::sqrt(cfg.A));
        }
        if (s >= cfg.big_d && t >= cfg.big_d) {
            lower_c = std::min(lower_c, sol.u[i] / (std::sqrt(cfg.A / 2.0) * std::sqrt(om2)));
        }
    }
    rep.lower_bound_c = lower_c;

    // matching-window sups of u_out - u_in on each side
    for (Side side : {Side::Left, Side::Right}) {
        const double sg = (side == Side::Left) ? sgl : sgr;
        const double s_hi = std::min(cfg.s_outer(), 0.95 * c1);
        const int samples = 400;
        for (int k = 0; k <= samples; ++k) {
            const double s = sg + (s_hi - sg) * static_cast<double>(k) / samples;
            if (s <= 0.0 || s >= s_hi) continue;
            const double x = (side == Side::Left) ? -1.0 + s / c1 : 1.0 - s / c1;
            const double om2 = 1.0 - x * x;
            if (om2 <= 0.0) continue;
            TripleValue uo, ui;
            try {
                uo = comp.outer(x);
            } catch (const NegativeRadicand&) {
                continue;
            }
            ui = comp.inner(side, x);
            const double root_a = std::sqrt(cfg.A);
            rep.matching_sup_0 = std::max(
                rep.matching_sup_0, std::abs(uo.u - ui.u) / (root_a * std::pow(om2, 1.5)));
            rep.matching_sup_1 = std::max(
                rep.matching_sup_1, std::abs(uo.up - ui.up) / (root_a * std::sqrt(om2)));
            rep.matching_sup_2 = std::max(
                rep.matching_sup_2, std::abs(uo.upp - ui.upp) * std::sqrt(om2) / root_a);
        }
    }
    return rep;
}

ScaledProblem to_singular_form(double A, const std::vector<double>& x, const std::vector<double>& u,
                               const std::vector<double>& residual) {
    if (x.size() != u.size() || x.size() != residual.size())
        throw GridMismatch("to_singular_form: size mismatch");
    ScaledProblem out;
    out.epsilon = std::sqrt(2.0 / std::sqrt(A));
    out.x = x;
    out.v.resize(u.size());
    const double root_a = std::sqrt(A);
    for (std::size_t i = 0; i < u.size(); ++i) out.v[i] = u[i] / root_a;
    // eps^2 v'' - v^2 + (1 - x^2) = (2u'' A^{-1/2} A^{-1/2} ... ) = R/A exactly
    double sup = 0.0;
    for (double r : residual) sup = std::max(sup, std::abs(r) / A);
    out.residual_sup = sup;
    return out;
}

void export_composite_csv(const CompositeSolution& sol, const std::string& path) {
    std::ofstream os(path);
    os << "x,u_ap,up,upp,E\n" << std::setprecision(17);
    for (std::size_t i = 0; i < sol.mesh.size(); ++i)
        os << sol.mesh.nodes[i] << ',' << sol.u[i] << ',' << sol.up[i] << ',' << sol.upp[i] << ','
           << sol.E[i] << '\n';
}

void export_region_report_json(const ResidualRegionReport& rep, const CompositeConfig& cfg,
                               const std::string& path) {
    nlohmann::ordered_json j;
    j["A"] = rep.A;
    j["delta"] = cfg.delta;
    j["D"] = cfg.big_d;
    j["boundary_norm_sup"] = rep.boundary_norm_sup;
    j["middle_norm_sup"] = rep.middle_norm_sup;
    j["matching_sup_0"] = rep.matching_sup_0;
    j["matching_sup_1"] = rep.matching_sup_1;
    j["matching_sup_2"] = rep.matching_sup_2;
    j["lower_bound_c"] = rep.lower_bound_c;
    std::ofstream os(path);
    os << j.dump(2) << '\n';
}

}  // namespace layersolve
