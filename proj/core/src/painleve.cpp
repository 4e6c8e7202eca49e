#include "layersolve/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <iomanip>

#include "layersolve/errors.hpp"
#include "layersolve/linalg.hpp"

#include "json.hpp"

namespace layersolve {

namespace {

double rhs(double s, double y) { return 0.5 * (y * y - s); }

/// Far-field expansion sqrt(s) + w(s); w = -s^-2/4 - (49/32) s^-9/2 + ...
double far_field(double s, int order) {
    double v = std::sqrt(s);
    if (order >= 1) v -= 0.25 / (s * s);
    if (order >= 2) v -= (49.0 / 32.0) * std::pow(s, -4.5);
    return v;
}

double far_field_slope(double s, int order) {
    double v = 0.5 / std::sqrt(s);
    if (order >= 1) v += 0.5 * std::pow(s, -3.0);
    if (order >= 2) v += (441.0 / 64.0) * std::pow(s, -5.5);
    return v;
}

struct HermiteCell {
    double s0, h, y0, v0, y1, v1;

    void eval(double s, double& y, double& yp) const {
        const double t = (s - s0) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        y = h00 * y0 + h * h10 * v0 + h01 * y1 + h * h11 * v1;
        const double g00 = (6 * t2 - 6 * t) / h, g10 = 3 * t2 - 4 * t + 1;
        const double g01 = (-6 * t2 + 6 * t) / h, g11 = 3 * t2 - 2 * t;
        yp = g00 * y0 + g10 * v0 + g01 * y1 + g11 * v1;
    }

    double second(double s) const {
        const double t = (s - s0) / h;
        return ((12 * t - 6) * y0 + h * (6 * t - 4) * v0 + (6 - 12 * t) * y1 + h * (6 * t - 2) * v1) /
               (h * h);
    }
};

HermiteCell cell_of(const PainleveSolution& sol, std::size_t i) {
    return HermiteCell{sol.grid.nodes[i], sol.grid.nodes[i + 1] - sol.grid.nodes[i], sol.y[i],
                       sol.yp[i], sol.y[i + 1], sol.yp[i + 1]};
}

/// Newton collocation on a fixed grid: Lobatto IIIA (Simpson) pair on
/// (y, y'), boundary values y(0) = 0 and the far-field tail value.
void collocate(const HalfLineGrid& grid, std::vector<double>& y, std::vector<double>& v,
               int far_field_order) {
    const std::size_t n = grid.size();
    const std::size_t m = 2 * n;  // unknowns
    const double s_end = grid.s_max();
    const double bc1 = far_field(s_end, std::max(1, far_field_order));

    std::vector<double> F(m), dz(m);
    const auto assemble = [&](std::vector<double>& out) {
        out[0] = y[0];
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double s0 = grid.nodes[i], s1 = grid.nodes[i + 1];
            const double h = s1 - s0, sm = 0.5 * (s0 + s1);
            const double g0 = rhs(s0, y[i]), g1 = rhs(s1, y[i + 1]);
            const double ym = 0.5 * (y[i] + y[i + 1]) + h * (v[i] - v[i + 1]) / 8.0;
            const double vm = 0.5 * (v[i] + v[i + 1]) + h * (g0 - g1) / 8.0;
            const double gm = rhs(sm, ym);
            out[2 * i + 1] = y[i + 1] - y[i] - h * (v[i] + 4.0 * vm + v[i + 1]) / 6.0;
            out[2 * i + 2] = v[i + 1] - v[i] - h * (g0 + 4.0 * gm + g1) / 6.0;
        }
        out[m - 1] = y[n - 1] - bc1;
    };

    double best = std::numeric_limits<double>::max();
    int stall = 0;
    for (int iter = 0; iter < 40; ++iter) {
        assemble(F);
        double fn = 0.0;
        for (double f : F) fn = std::max(fn, std::abs(f));
        if (!std::isfinite(fn)) throw NewtonDiverged("collocation residual is non-finite");
        if (fn < 1e-12) break;
        if (fn < best * 0.9999) { best = fn; stall = 0; }
        else if (++stall > 6) throw NewtonDiverged("collocation Newton stalled; seed too far from the connecting orbit");

        BandedMatrix J(m, 2, 2);
        J.at(0, 0) = 1.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double s0 = grid.nodes[i], s1 = grid.nodes[i + 1];
            const double h = s1 - s0;
            const double gp0 = y[i], gp1 = y[i + 1];
            const double ym = 0.5 * (y[i] + y[i + 1]) + h * (v[i] - v[i + 1]) / 8.0;
            const double gpm = ym;
            const std::size_t r1 = 2 * i + 1, r2 = 2 * i + 2;
            const std::size_t cy0 = 2 * i, cv0 = 2 * i + 1, cy1 = 2 * i + 2, cv1 = 2 * i + 3;
            J.at(r1, cy0) = -1.0 - h * h / 12.0 * gp0;
            J.at(r1, cy1) = 1.0 + h * h / 12.0 * gp1;
            J.at(r1, cv0) = -0.5 * h;
            J.at(r1, cv1) = -0.5 * h;
            J.at(r2, cy0) = -h / 6.0 * (gp0 + 2.0 * gpm);
            J.at(r2, cy1) = -h / 6.0 * (gp1 + 2.0 * gpm);
            J.at(r2, cv0) = -1.0 - h * h / 12.0 * gpm;
            J.at(r2, cv1) = 1.0 + h * h / 12.0 * gpm;
        }
        J.at(m - 1, m - 2) = 1.0;

        dz = F;
        for (double& d : dz) d = -d;
        J.solve(dz);

        double lambda = 1.0;
        std::vector<double> ytry(n), vtry(n), Ftry(m);
        for (int cut = 0; cut < 8; ++cut) {
            for (std::size_t i = 0; i < n; ++i) {
                ytry[i] = y[i] + lambda * dz[2 * i];
                vtry[i] = v[i] + lambda * dz[2 * i + 1];
            }
            std::swap(y, ytry);
            std::swap(v, vtry);
            assemble(Ftry);
            double fn_try = 0.0;
            for (double f : Ftry) fn_try = std::max(fn_try, std::abs(f));
            if (std::isfinite(fn_try) && fn_try < fn) break;
            std::swap(y, ytry);
            std::swap(v, vtry);
            lambda *= 0.5;
        }
    }
    assemble(F);
    double fn = 0.0;
    for (double f : F) fn = std::max(fn, std::abs(f));
    if (fn > 1e-10) throw NewtonDiverged("collocation Newton did not reach tolerance");
}

double defect_sup(const PainleveSolution& sol) {
    double sup = 0.0;
    for (std::size_t i = 0; i + 1 < sol.grid.size(); ++i) {
        const HermiteCell c = cell_of(sol, i);
        for (double frac : {0.25, 0.75}) {
            const double s = c.s0 + frac * c.h;
            double yv, vv;
            c.eval(s, yv, vv);
            sup = std::max(sup, std::abs(2.0 * c.second(s) - yv * yv + s));
        }
    }
    return sup;
}

double fit_tail_coefficient(const PainleveSolution& sol) {
    // least squares of (y - sqrt(s)) s^2 = c + d s^{-5/2} over the tail window
    const double s_hi = sol.s_max();
    const double s_lo = std::max(20.0, s_hi - 15.0);
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double s = sol.grid.nodes[i];
        if (s < s_lo) continue;
        const double w = (sol.y[i] - std::sqrt(s)) * s * s;
        const double u = std::pow(s, -2.5);
        a11 += 1.0; a12 += u; a22 += u * u;
        b1 += w; b2 += w * u;
    }
    const double det = a11 * a22 - a12 * a12;
    return (b1 * a22 - b2 * a12) / det;
}

PainleveSolution build_solution(Branch branch, const HalfLineGrid& grid, std::vector<double> y,
                                std::vector<double> v, double slope_at_origin) {
    PainleveSolution sol;
    sol.branch = branch;
    sol.grid = grid;
    sol.y = std::move(y);
    sol.yp = std::move(v);
    sol.y[0] = 0.0;  // Dirichlet condition holds exactly
    sol.slope_at_origin = slope_at_origin;
    sol.tail_coefficient = fit_tail_coefficient(sol);
    sol.residual_sup = defect_sup(sol);
    return sol;
}

std::vector<PhasePoint> integrate_connecting(double sigma, double s_trust, const ShootOptions& opts) {
    RkOptions ro;
    ro.rel_tol = opts.rel_tol;
    ro.abs_tol = opts.abs_tol;
    RungeKutta rk(rhs, ro);
    return rk.integrate({0.0, 0.0, sigma}, s_trust, {}, true).path;
}

double seed_from_path(const std::vector<PhasePoint>& path, double s, bool deriv) {
    // linear interpolation is enough; Newton polishes the seed
    auto it = std::lower_bound(path.begin(), path.end(), s,
                               [](const PhasePoint& p, double v) { return p.s < v; });
    if (it == path.begin()) return deriv ? it->yp : it->y;
    if (it == path.end()) return deriv ? path.back().yp : path.back().y;
    const PhasePoint &a = *(it - 1), &b = *it;
    const double t = (s - a.s) / (b.s - a.s);
    return deriv ? a.yp + t * (b.yp - a.yp) : a.y + t * (b.y - a.y);
}

}  // namespace

std::string to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

Interval default_bracket(Branch b) {
    return b == Branch::Plus ? Interval{0.0, 2.0} : Interval{-4.0, -2.0};
}

TrajectoryFate classify_slope(double sigma, const ShootOptions& opts) {
    RkOptions ro;
    ro.rel_tol = opts.rel_tol;
    ro.abs_tol = opts.abs_tol;
    RungeKutta rk(rhs, ro);
    const double gate = opts.s_gate;
    std::vector<RungeKutta::Event> events = {
        [](double s, double y, double) { return y - (std::sqrt(std::max(s, 0.0)) + 1.0); },
        [gate](double s, double y, double) {
            if (s < gate) return 1.0;
            return y - (std::sqrt(s) - 1.0);
        },
    };
    const RkResult res = rk.integrate({0.0, 0.0, sigma}, opts.s_classify, events, false);
    if (res.event == 0) return TrajectoryFate::Overshoot;
    if (res.event == 1) return TrajectoryFate::Undershoot;
    throw BlowupBeforeClassification(
        "trajectory reached the classification horizon unclassified; widen s_classify or tighten the bracket");
}

PainleveSolution shoot(Branch branch, double s_max, Interval slope_bracket, double tol,
                       const ShootOptions& opts) {
    if (tol <= 0.0) throw SolverError("shoot: tol must be positive");
    double lo = slope_bracket.lo, hi = slope_bracket.hi;
    const TrajectoryFate flo = classify_slope(lo, opts);
    const TrajectoryFate fhi = classify_slope(hi, opts);
    if (flo == fhi)
        throw BracketNotSeparating("both bracket endpoints classify as " +
                                   std::string(flo == TrajectoryFate::Overshoot ? "overshoot" : "undershoot"));
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at rounding resolution
        if (classify_slope(mid, opts) == flo) lo = mid;
        else hi = mid;
    }
    const double sigma = 0.5 * (lo + hi);

    const double s_trust = std::min(12.0, 0.45 * s_max);
    const auto path = integrate_connecting(sigma, s_trust, opts);

    HalfLineGrid grid = HalfLineGrid::graded(s_max);
    const std::size_t n = grid.size();
    std::vector<double> y(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = grid.nodes[i];
        if (s <= s_trust) {
            y[i] = seed_from_path(path, s, false);
            v[i] = seed_from_path(path, s, true);
        } else {
            y[i] = far_field(s, 1);
            v[i] = far_field_slope(s, 1);
        }
    }
    collocate(grid, y, v, 1);
    return build_solution(branch, grid, std::move(y), std::move(v), sigma);
}

PainleveSolution shoot(Branch branch, double s_max) {
    return shoot(branch, s_max, default_bracket(branch), 1e-12);
}

PainleveSolution refine_collocation(const PainleveSolution& seed, double s_max,
                                    int far_field_order) {
    HalfLineGrid grid = HalfLineGrid::graded(s_max);
    const std::size_t n = grid.size();
    std::vector<double> y(n), v(n);
    const double s_seed = std::min(seed.s_max(), std::min(15.0, s_max));
    for (std::size_t i = 0; i < n; ++i) {
        const double s = grid.nodes[i];
        if (s <= s_seed) {
            const PointValue p = evaluate(seed, s);
            y[i] = p.y;
            v[i] = p.yp;
        } else {
            y[i] = far_field(s, std::max(1, far_field_order));
            v[i] = far_field_slope(s, std::max(1, far_field_order));
        }
    }
    collocate(grid, y, v, far_field_order);
    const double slope = v[0];
    return build_solution(seed.branch, grid, std::move(y), std::move(v), slope);
}

PointValue evaluate(const PainleveSolution& sol, double s) {
    if (s < 0.0 || s > sol.s_max()) throw OutOfDomain("evaluate: s outside [0, s_max]");
    const std::size_t i = sol.grid.locate(s);
    const HermiteCell c = cell_of(sol, i);
    PointValue out;
    c.eval(s, out.y, out.yp);
    out.ypp = 0.5 * (out.y * out.y - s);
    return out;
}

std::size_t DifferenceProfile::valid_end(double floor) const {
    std::size_t last = 0;
    for (std::size_t i = 1; i < phi.size(); ++i)
        if (phi[i] > floor) last = i;
    return last;
}

DifferenceProfile difference_profile(const PainleveSolution& plus, const PainleveSolution& minus) {
    if (plus.grid.size() != minus.grid.size() || plus.grid.nodes != minus.grid.nodes)
        throw GridMismatch("difference_profile: branch solutions live on different grids");
    DifferenceProfile d;
    d.grid = plus.grid;
    const std::size_t n = plus.grid.size();
    d.phi.resize(n);
    d.phip.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.phi[i] = plus.y[i] - minus.y[i];
        d.phip[i] = plus.yp[i] - minus.yp[i];
    }
    d.phi[0] = 0.0;
    return d;
}

double difference_residual_sup(const DifferenceProfile& d, const PainleveSolution& plus,
                               const PainleveSolution& minus) {
    if (d.grid.nodes != plus.grid.nodes || d.grid.nodes != minus.grid.nodes)
        throw GridMismatch("difference_residual_sup: grid mismatch");
    double sup = 0.0;
    for (std::size_t i = 0; i < d.grid.size(); ++i) {
        // 2 phi'' = (y+^2 - s) - (y-^2 - s) from the two ODEs
        const double two_phipp = plus.y[i] * plus.y[i] - minus.y[i] * minus.y[i];
        const double r = two_phipp - 2.0 * plus.y[i] * d.phi[i] + d.phi[i] * d.phi[i];
        sup = std::max(sup, std::abs(r));
    }
    return sup;
}

SlopeScan scan_connecting_slopes(double lo, double hi, int n, const ShootOptions& opts) {
    SlopeScan out;
    std::vector<TrajectoryFate> fates(static_cast<std::size_t>(n));
    std::vector<double> sigmas(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        sigmas[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        fates[i] = classify_slope(sigmas[i], opts);
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (fates[i] == fates[i + 1]) continue;
        ++out.raw_transitions;
        // bisect the transition
        double a = sigmas[i], b = sigmas[i + 1];
        const TrajectoryFate fa = fates[i];
        while (b - a > opts.slope_tol) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (classify_slope(mid, opts) == fa) a = mid;
            else b = mid;
        }
        const double sigma = 0.5 * (a + b);
        // verify the refined trajectory genuinely tracks sqrt(s): hold the
        // band |y - sqrt(s)| <= 1/2 on s in [8, 15]
        RkOptions ro;
        ro.rel_tol = opts.rel_tol;
        ro.abs_tol = opts.abs_tol;
        RungeKutta rk(rhs, ro);
        std::vector<RungeKutta::Event> band = {[](double s, double y, double) {
            if (s < 8.0) return 1.0;
            return 0.5 - std::abs(y - std::sqrt(s));
        }};
        try {
            const RkResult res = rk.integrate({0.0, 0.0, sigma}, 15.0, band, false);
            if (res.event == -1) out.connecting_slopes.push_back(sigma);
        } catch (const BlowupBeforeClassification&) {
            // left the band violently; not a connecting orbit
        }
    }
    return out;
}

void export_profile_csv(const PainleveSolution& sol, const std::string& path) {
    std::ofstream os(path);
    os << "s,Y,Yp\n" << std::setprecision(17);
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
        os << sol.grid.nodes[i] << ',' << sol.y[i] << ',' << sol.yp[i] << '\n';
}

void export_profile_json(const PainleveSolution& sol, const std::string& path) {
    nlohmann::ordered_json j;
    j["branch"] = to_string(sol.branch);
    j["slope_at_origin"] = sol.slope_at_origin;
    j["tail_coefficient"] = sol.tail_coefficient;
    j["residual_sup"] = sol.residual_sup;
    j["s_max"] = sol.s_max();
    std::ofstream os(path);
    os << j.dump(2) << '\n';
}

}  // namespace layersolve
