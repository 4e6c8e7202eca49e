#pragma once

#include <cmath>

namespace layersolve {

struct CutoffValue {
    double n = 0.0;    // value
    double np = 0.0;   // d/dr
    double npp = 0.0;  // d^2/dr^2
};

/// Smooth cutoff: 1 for |r| <= d, 0 for |r| >= 2d, quintic smoothstep in
/// between. C^2 everywhere; only two derivatives enter the residual ledger.
inline CutoffValue cutoff_eval(double d, double r) {
    CutoffValue out;
    const double a = std::abs(r);
    if (a <= d) {
        out.n = 1.0;
        return out;
    }
    if (a >= 2.0 * d) return out;
    const double t = (a - d) / d;
    const double f = ((6.0 * t - 15.0) * t + 10.0) * t * t * t;
    const double fp = ((30.0 * t - 60.0) * t + 30.0) * t * t / d;
    const double fpp = ((120.0 * t - 180.0) * t + 60.0) * t / (d * d);
    const double sgn = (r >= 0.0) ? 1.0 : -1.0;
    out.n = 1.0 - f;
    out.np = -fp * sgn;
    out.npp = -fpp;
    return out;
}

}  // namespace layersolve
