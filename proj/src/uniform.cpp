#include "isoperim/uniform.hpp"

#include <cmath>
#include <stdexcept>

#include "isoperim/rootfind.hpp"

namespace isoperim::uniform {

namespace {

void require_args(double gamma, int n) {
    if (n < 2) throw std::domain_error("n must be >= 2");
    if (!std::isfinite(gamma) || gamma <= 0.0)
        throw std::domain_error("gamma must be finite and positive");
}

// expm1(w) - w, cancellation-free for small w
double expm1_minus(double w) {
    if (std::fabs(w) < 1e-3)
        return 0.5 * w * w * (1.0 + w / 3.0 * (1.0 + w / 4.0 * (1.0 + w / 5.0)));
    return std::expm1(w) - w;
}

// g - log1p(g), cancellation-free for small g
double log1p_defect(double g) {
    if (std::fabs(g) < 1e-3) {
        double s = 0.0;
        // g^2/2 - g^3/3 + g^4/4 - g^5/5 + g^6/6
        s = g * g * (1.0 / 2.0 + g * (-1.0 / 3.0 + g * (1.0 / 4.0 +
            g * (-1.0 / 5.0 + g / 6.0))));
        return s;
    }
    return g - std::log1p(g);
}

double log_expm1(double w) {
    return w > 50.0 ? w + std::log1p(-std::exp(-w)) : std::log(std::expm1(w));
}

}  // namespace

double x_of_gamma_n(double gamma, int n) {
    require_args(gamma, n);
    const double m = n - 1.0;
    const double wm = m * std::log1p(gamma);
    const double wn = n * std::log1p(gamma);
    if (wm + wn > 690.0) {
        // the denominator (1+gamma)^{2n-1} overflows; evaluate in log space.
        // In this regime m*gamma > 1 so the shifted numerator stays positive.
        double lx = std::log(m * gamma - 1.0 + std::exp(-wm)) - wn -
                    std::log1p(-std::exp(-wm)) - std::log1p(-std::exp(-wn));
        return std::exp(lx);
    }
    // numerator p(m*gamma - 1) + 1 rewritten as q*m*gamma + (m*gamma - q),
    // q = p - 1 = expm1(wm); avoids the O(1) cancellation near gamma = 0
    double q = std::expm1(wm);
    double mg_minus_q = m * log1p_defect(gamma) - expm1_minus(wm);
    double a = q * m * gamma + mg_minus_q;
    double b = q * std::expm1(wn);
    return a / b;
}

double xg_of_gamma_n(double gamma, int n) {
    require_args(gamma, n);
    const double m = n - 1.0;
    const double wm = m * std::log1p(gamma);
    const double wn = n * std::log1p(gamma);
    // x G = gamma*n/((1+g)^n - 1) * [(1+g)^{n-1} gamma (n-1) / ((1+g)^{n-1}-1)]^{1-1/n}
    double lead = std::log(gamma * n) - log_expm1(wn);
    double bracket = std::log(gamma * m) - std::log(-std::expm1(-wm));
    return std::exp(lead + (1.0 - 1.0 / n) * bracket);
}

UniformProfilePoint profile_g_n(double x, int n) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    if (!(x > 0.0) || x > 0.5)
        throw std::domain_error("x must lie in (0, 1/2]");
    if (n == 1) return {1, x, 0.0, 1.0 / x};
    if (x == 0.5) return {n, 0.5, 0.0, 2.0};

    // No a-priori bound on gamma for tiny x: solve in u = log(gamma) and
    // double gamma (step log 2 in u) until the strictly decreasing x(gamma)
    // drops below the target, so the bracket signs are evaluated at the
    // exact same points the root-finder sees. The residual is compared in
    // logs: x spans hundreds of orders of magnitude over the bracket, which
    // starves the interpolation steps if used raw.
    const double lx = std::log(x);
    auto f = [lx, n](double u) { return std::log(x_of_gamma_n(std::exp(u), n)) - lx; };
    const double ulo = std::log(1e-12);
    if (f(ulo) <= 0.0)  // x indistinguishable from 1/2
        return {n, x, 1e-12, xg_of_gamma_n(1e-12, n) / x};
    double uhi = 0.0;
    while (f(uhi) > 0.0) {
        uhi += M_LN2;
        if (uhi > 709.0) throw std::runtime_error("profile_g_n: bracket expansion failed");
    }
    double u = num::brent_root(f, ulo, uhi, 1e-15);
    double gamma = std::exp(u);
    return {n, x, gamma, xg_of_gamma_n(gamma, n) / x};
}

}  // namespace isoperim::uniform
