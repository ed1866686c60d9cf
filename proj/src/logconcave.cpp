#include "isoperim/logconcave.hpp"

#include <cmath>
#include <stdexcept>

#include "isoperim/rootfind.hpp"

namespace isoperim::logconcave {

namespace {

void require_gamma(double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0)
        throw std::domain_error("gamma must be finite and positive");
}

void require_x(double x) {
    if (!(x > 0.0) || x > 0.5)
        throw std::domain_error("x must lie in (0, 1/2]");
}

constexpr double kSeriesCut = 1e-2;   // below this, series; cancellation-free
constexpr double kLogCut = 30.0;      // above this, exp(-gamma) factored form
constexpr double kGammaLo = 1e-12;
constexpr double kGammaHi = 800.0;

// (e^g (g-1) + 1) / g^2 = sum_{k>=0} (k+1) g^k / (k+2)!
double numer_over_g2_series(double g) {
    return 0.5 + g * (1.0 / 3.0 + g * (0.125 + g * (1.0 / 30.0 +
           g * (1.0 / 144.0 + g * (1.0 / 840.0 + g / 5760.0)))));
}

// (g - 1 + e^{-g}) / g^2 = sum_{k>=0} (-g)^k / (k+2)!
double dshift_over_g2_series(double g) {
    return 0.5 + g * (-1.0 / 6.0 + g * (1.0 / 24.0 + g * (-1.0 / 120.0 +
           g * (1.0 / 720.0 + g * (-1.0 / 5040.0 + g / 40320.0)))));
}

// g - 1 + e^{-g}, safe for all g > 0
double dshift(double g) {
    if (g < kSeriesCut) return g * g * dshift_over_g2_series(g);
    return g + std::expm1(-g);
}

}  // namespace

double x_of_gamma(double gamma) {
    require_gamma(gamma);
    if (gamma < kSeriesCut) {
        double e1 = std::expm1(gamma) / gamma;  // (e^g - 1)/g
        return numer_over_g2_series(gamma) / (e1 * e1);
    }
    if (gamma > kLogCut) {
        double em = std::exp(-gamma);
        double om = 1.0 - em;
        return dshift(gamma) * em / (om * om);
    }
    double sh = 2.0 * std::sinh(0.5 * gamma);  // (e^g - 1) e^{-g/2}
    return dshift(gamma) / (sh * sh);
}

double g_of_gamma(double gamma) {
    require_gamma(gamma);
    if (gamma < kSeriesCut) return 1.0 / dshift_over_g2_series(gamma);
    return gamma * gamma / dshift(gamma);
}

double xg_of_gamma(double gamma) {
    require_gamma(gamma);
    if (gamma > kLogCut) {
        double em = std::exp(-gamma);
        double om = 1.0 - em;
        return gamma * gamma * em / (om * om);
    }
    double r = gamma / (2.0 * std::sinh(0.5 * gamma));
    return r * r;
}

double gamma_of_x(double x) {
    require_x(x);
    if (x == 0.5) return 0.0;
    // Solve in u = log(gamma); x_of_gamma is strictly decreasing so the
    // bracket [kGammaLo, kGammaHi] always straddles the root for x in (0,1/2).
    double ulo = std::log(kGammaLo), uhi = std::log(kGammaHi);
    auto f = [x](double u) { return x_of_gamma(std::exp(u)) - x; };
    if (f(ulo) <= 0.0)  // x indistinguishable from 1/2 at double precision
        return kGammaLo;
    double u = num::brent_root(f, ulo, uhi, 1e-15);
    return std::exp(u);
}

ProfilePoint profile_g(double x) {
    require_x(x);
    if (x == 0.5) return {0.5, 0.0, 2.0};
    double gamma = gamma_of_x(x);
    return {x, gamma, xg_of_gamma(gamma) / x};
}

double xg_slope(double x) {
    if (!(x > 0.0) || x >= 0.5)
        throw std::domain_error("x must lie in (0, 1/2)");
    return gamma_of_x(x);
}

}  // namespace isoperim::logconcave
