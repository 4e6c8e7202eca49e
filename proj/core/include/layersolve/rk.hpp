#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "layersolve/errors.hpp"

namespace layersolve {

/// State of the planar systems integrated here (y, y').
struct PhasePoint {
    double s = 0.0;
    double y = 0.0;
    double yp = 0.0;
};

struct RkOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13;
    double max_step = 0.25;
    double min_step = 1e-14;
    std::size_t max_steps = 2'000'000;
};

/// Outcome of an event-terminated integration.
struct RkResult {
    std::vector<PhasePoint> path;   // accepted steps, including endpoints
    int event = -1;                 // index of the event that fired, -1 if none
    PhasePoint stop;                // state at the event (or at s_end)
};

/// Adaptive Cash-Karp 4(5) for y'' = f(s, y), integrated as a first-order
/// pair. Events are scalar functions g(s, y, y'); integration stops when any
/// event changes sign from its initial sign, with the crossing located by
/// bisection on the accepted step.
class RungeKutta {
public:
    using Rhs = std::function<double(double, double)>;       // f(s, y) -> y''
    using Event = std::function<double(double, double, double)>;

    explicit RungeKutta(Rhs f, RkOptions opts = {}) : f_(std::move(f)), opts_(opts) {}

    RkResult integrate(PhasePoint start, double s_end, const std::vector<Event>& events,
                       bool store_path = true) const {
        RkResult out;
        PhasePoint p = start;
        if (store_path) out.path.push_back(p);
        std::vector<double> g0(events.size());
        for (std::size_t k = 0; k < events.size(); ++k) g0[k] = events[k](p.s, p.y, p.yp);

        double h = std::min(opts_.max_step, (s_end - p.s) / 16.0 + 1e-8);
        std::size_t steps = 0;
        while (p.s < s_end) {
            if (++steps > opts_.max_steps)
                throw BlowupBeforeClassification("step budget exhausted before any event fired");
            h = std::min(h, s_end - p.s);
            PhasePoint q;
            double err = step(p, h, q);
            const double tol = opts_.abs_tol +
                               opts_.rel_tol * std::max(std::abs(p.y), std::abs(q.y));
            if (err > tol && h > opts_.min_step) {
                h = std::max(opts_.min_step, 0.9 * h * std::pow(tol / err, 0.2));
                continue;
            }
            // accepted; check events on [p, q]
            for (std::size_t k = 0; k < events.size(); ++k) {
                const double gk = events[k](q.s, q.y, q.yp);
                if (g0[k] != 0.0 && gk != 0.0 && std::signbit(gk) != std::signbit(g0[k])) {
                    out.event = static_cast<int>(k);
                    out.stop = locate(p, q, events[k]);
                    if (store_path) out.path.push_back(out.stop);
                    return out;
                }
                g0[k] = gk;
            }
            p = q;
            if (store_path) out.path.push_back(p);
            if (err > 0.0) h = std::min(opts_.max_step, 0.9 * h * std::pow(tol / err, 0.2));
            else h = opts_.max_step;
            if (!std::isfinite(p.y) || !std::isfinite(p.yp))
                throw BlowupBeforeClassification("non-finite state before classification");
        }
        out.stop = p;
        return out;
    }

    /// Single Cash-Karp step; returns the embedded error estimate.
    double step(const PhasePoint& p, double h, PhasePoint& out) const {
        constexpr double b21 = 1.0 / 5;
        constexpr double b31 = 3.0 / 40, b32 = 9.0 / 40;
        constexpr double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
        constexpr double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
        constexpr double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                         b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
        constexpr double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594, c6 = 512.0 / 1771;
        constexpr double d1 = 2825.0 / 27648, d3 = 18575.0 / 48384, d4 = 13525.0 / 55296,
                         d5 = 277.0 / 14336, d6 = 1.0 / 4;

        const auto eval = [&](double ds, double y, double yp, double& ky, double& kyp) {
            ky = yp;
            kyp = f_(p.s + ds, y);
        };
        double k1y, k1v, k2y, k2v, k3y, k3v, k4y, k4v, k5y, k5v, k6y, k6v;
        eval(0.0, p.y, p.yp, k1y, k1v);
        eval(h * b21, p.y + h * b21 * k1y, p.yp + h * b21 * k1v, k2y, k2v);
        eval(h * (b31 + b32), p.y + h * (b31 * k1y + b32 * k2y), p.yp + h * (b31 * k1v + b32 * k2v), k3y, k3v);
        eval(h * (b41 + b42 + b43), p.y + h * (b41 * k1y + b42 * k2y + b43 * k3y),
             p.yp + h * (b41 * k1v + b42 * k2v + b43 * k3v), k4y, k4v);
        eval(h * (b51 + b52 + b53 + b54), p.y + h * (b51 * k1y + b52 * k2y + b53 * k3y + b54 * k4y),
             p.yp + h * (b51 * k1v + b52 * k2v + b53 * k3v + b54 * k4v), k5y, k5v);
        eval(h * (b61 + b62 + b63 + b64 + b65),
             p.y + h * (b61 * k1y + b62 * k2y + b63 * k3y + b64 * k4y + b65 * k5y),
             p.yp + h * (b61 * k1v + b62 * k2v + b63 * k3v + b64 * k4v + b65 * k5v), k6y, k6v);

        out.s = p.s + h;
        out.y = p.y + h * (c1 * k1y + c3 * k3y + c4 * k4y + c6 * k6y);
        out.yp = p.yp + h * (c1 * k1v + c3 * k3v + c4 * k4v + c6 * k6v);
        const double ey = h * ((c1 - d1) * k1y + (c3 - d3) * k3y + (c4 - d4) * k4y - d5 * k5y + (c6 - d6) * k6y);
        const double ev = h * ((c1 - d1) * k1v + (c3 - d3) * k3v + (c4 - d4) * k4v - d5 * k5v + (c6 - d6) * k6v);
        return std::max(std::abs(ey), std::abs(ev));
    }

private:
    /// Bisect the event crossing inside an accepted step. Sub-steps reuse the
    /// integrator itself, so the located point sits on the trajectory.
    PhasePoint locate(PhasePoint lo, const PhasePoint& hi, const Event& g) const {
        double a = 0.0, b = hi.s - lo.s;
        PhasePoint best = hi;
        for (int it = 0; it < 60 && (b - a) > 1e-13 * (1.0 + std::abs(lo.s)); ++it) {
            const double mid = 0.5 * (a + b);
            PhasePoint q;
            step(lo, mid, q);
            const double gm = g(q.s, q.y, q.yp);
            if (gm == 0.0) return q;
            if (std::signbit(gm) == std::signbit(g(lo.s, lo.y, lo.yp))) a = mid;
            else { b = mid; best = q; }
        }
        return best;
    }

    Rhs f_;
    RkOptions opts_;
};

}  // namespace layersolve
