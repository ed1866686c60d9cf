#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace isoperim::num {

// Brent's method on a bracketing interval [a,b] with f(a)*f(b) <= 0.
// Bisection-safeguarded inverse quadratic interpolation.
template <typename F>
double brent_root(F&& f, double a, double b, double tol = 1e-14, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw std::runtime_error("brent_root: root not bracketed");

    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (fb * fc > 0.0) { c = a; fc = fa; e = d = b - a; }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * 2.2204460492503131e-16 * std::fabs(b) + 0.5 * tol;
        double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double r = fb / fc;
                q = fa / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::fmin(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d; d = p / q;
            } else {
                d = xm; e = d;
            }
        } else {
            d = xm; e = d;
        }
        a = b; fa = fb;
        if (std::fabs(d) > tol1) b += d;
        else b += (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

// Golden-section minimization on [a,b]; returns (xmin, fmin).
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, double tol = 1e-10) {
    constexpr double R = 0.6180339887498949, C = 1.0 - R;
    double x1 = R * a + C * b;
    double x2 = C * a + R * b;
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * (1.0 + std::fabs(x1) + std::fabs(x2))) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = R * a + C * b;
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = C * a + R * b;
            f2 = f(x2);
        }
    }
    return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

// Expand [a,b] until it brackets a minimum of f: f(mid) below both ends.
// Throws if no interior minimum is found within the expansion cap.
template <typename F>
std::pair<double, double> expand_min_bracket(F&& f, double a, double b,
                                             double lo_limit, double hi_limit,
                                             int max_expand = 200) {
    double mid = 0.5 * (a + b);
    double fa = f(a), fm = f(mid), fb = f(b);
    for (int i = 0; i < max_expand; ++i) {
        if (fm <= fa && fm <= fb) return {a, b};
        if (fa < fb) {
            if (a <= lo_limit) return {a, b};  // minimum pinned at the boundary
            double w = b - a;
            b = mid; fb = fm;
            mid = a; fm = fa;
            a = std::fmax(lo_limit, a - 2.0 * w);
            fa = f(a);
        } else {
            if (b >= hi_limit) return {a, b};
            double w = b - a;
            a = mid; fa = fm;
            mid = b; fm = fb;
            b = std::fmin(hi_limit, b + 2.0 * w);
            fb = f(b);
        }
    }
    throw std::runtime_error("expand_min_bracket: no minimum found (objective not unimodal?)");
}

}  // namespace isoperim::num
