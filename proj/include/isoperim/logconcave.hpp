#pragma once

namespace isoperim::logconcave {

// A point on the sharp log-concave profile curve. gamma parametrizes the
// extremal exponential needle density e^{gamma t}; gamma = 0 corresponds to
// the boundary point x = 1/2 where G = 2.
struct ProfilePoint {
    double x;      // set-size fraction, in (0, 1/2]
    double gamma;  // exponential tilt, >= 0
    double g;      // G(1/x), >= 2
};

// x(gamma) = (e^g (g-1) + 1) / (e^g - 1)^2, strictly decreasing, (0,1/2).
double x_of_gamma(double gamma);

// G(gamma) = gamma^2 e^g / (e^g (g-1) + 1), strictly increasing, limit 2 at 0+.
double g_of_gamma(double gamma);

// x * G(1/x) expressed through gamma: gamma^2 e^g / (e^g - 1)^2.
double xg_of_gamma(double gamma);

// Unique gamma > 0 with x_of_gamma(gamma) = x; gamma = 0 for x = 1/2.
double gamma_of_x(double x);

// Full profile point at x in (0, 1/2].
ProfilePoint profile_g(double x);

// d/dx [x G(1/x)] = gamma(x), for x in (0, 1/2).
double xg_slope(double x);

}  // namespace isoperim::logconcave
