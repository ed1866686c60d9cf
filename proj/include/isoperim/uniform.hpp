#pragma once

namespace isoperim::uniform {

// A point on the dimension-n uniform-distribution profile. gamma is the
// slope of the extremal truncated cone; gamma = 0 is the x = 1/2 endpoint.
struct UniformProfilePoint {
    int n;
    double x;      // in (0, 1/2]
    double gamma;  // >= 0
    double g;      // G(1/x) for dimension n
};

// x(gamma, n) for n >= 2; strictly decreasing in gamma, limit 1/2 at 0+.
double x_of_gamma_n(double gamma, int n);

// x * G(1/x) at gamma for dimension n >= 2; limit 1 at gamma -> 0+.
double xg_of_gamma_n(double gamma, int n);

// Invert x(gamma, n) and evaluate; n = 1 yields g = 1/x exactly.
UniformProfilePoint profile_g_n(double x, int n);

}  // namespace isoperim::uniform
