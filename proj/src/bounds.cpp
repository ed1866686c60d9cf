#include "isoperim/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "isoperim/format.hpp"
#include "isoperim/logconcave.hpp"
#include "isoperim/uniform.hpp"

namespace isoperim::bounds {

namespace {

void require_open_unit(double x) {
    if (!(x > 0.0) || !(x < 1.0))
        throw std::domain_error("x must lie in (0, 1)");
}

constexpr double kLog2 = 0.6931471805599453;

}  // namespace

double lb_klm(double x) {
    require_open_unit(x);
    double p = x * (1.0 - x);
    return p * (4.0 + std::log(1.0 / (4.0 * p)));
}

double lb_simple(double x) {
    require_open_unit(x);
    return x * (2.0 + std::log(1.0 / (2.0 * x)));
}

double ub_log2(double x) {
    require_open_unit(x);
    return 2.0 * x * std::log2(1.0 / x);
}

double ub_klm_form(double x) {
    require_open_unit(x);
    double p = x * (1.0 - x);
    return 4.0 * p * std::log2(1.0 / p);
}

double norm_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

// Acklam's rational approximation (~1.15e-9 relative) with one Newton
// correction against the erfc-based CDF; abs error well below 1e-12.
double norm_inv(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("norm_inv: p must lie in (0, 1)");
    static const double a[6] = {-3.969683028665376e+01,  2.209460984245205e+02,
                                -2.759285104469687e+02,  1.383577518672690e+02,
                                -3.066479806614716e+01,  2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01,  1.615858368580409e+02,
                                -1.556989798598866e+02,  6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = { 7.784695709041462e-03,  3.224671290700398e-01,
                                 2.445134137142996e+00,  3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    double z;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= phigh) {
        double q = p - 0.5, r = q * q;
        z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        z = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement
    for (int i = 0; i < 2; ++i) {
        double e = norm_cdf(z) - p;
        double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * z * z);
        z -= u / (1.0 + 0.5 * z * u);
    }
    return z;
}

double gaussian_I(double x) {
    require_open_unit(x);
    double z = norm_inv(x);
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

double gaussian_lb(double x) {
    return std::sqrt(2.0 * M_PI) * gaussian_I(x);
}

double bobkov_entropy(double x) {
    require_open_unit(x);
    return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

double bl_hypercube_min(double x, int n) {
    require_open_unit(x);
    if (n < 1) throw std::domain_error("n must be >= 1");
    double best = 1.0 / x;
    for (int k = 2; k <= n; ++k)
        best = std::fmin(best, k * std::pow(x, -1.0 / k));
    return best;
}

double klm_residual(double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0)
        throw std::domain_error("gamma must be finite and positive");
    double x = logconcave::x_of_gamma(gamma);
    double p = x * (1.0 - x);
    return logconcave::xg_of_gamma(gamma) / p - (4.0 + std::log(1.0 / (4.0 * p)));
}

std::vector<double> make_grid(const GridSpec& spec) {
    if (spec.count < 1 || !(spec.lo > 0.0) || !(spec.hi > spec.lo) || spec.hi > 0.5) {
        if (!(spec.count == 1 && spec.lo == spec.hi && spec.lo > 0.0 && spec.lo <= 0.5))
            throw std::invalid_argument("grid must have >= 1 points within (0, 1/2]");
    }
    std::vector<double> xs(spec.count);
    if (spec.count == 1) { xs[0] = spec.lo; return xs; }
    if (spec.log_spaced) {
        double llo = std::log(spec.lo), lhi = std::log(spec.hi);
        for (int i = 0; i < spec.count; ++i)
            xs[i] = std::exp(llo + (lhi - llo) * i / (spec.count - 1));
        xs.back() = spec.hi;
    } else {
        for (int i = 0; i < spec.count; ++i)
            xs[i] = spec.lo + (spec.hi - spec.lo) * i / (spec.count - 1);
    }
    return xs;
}

BoundReport bound_gap_report(const GridSpec& spec, int uniform_n) {
    BoundReport r;
    r.uniform_n = uniform_n;
    r.x = make_grid(spec);
    const size_t n = r.x.size();
    r.gamma.resize(n);
    r.xg_logconcave.resize(n);
    r.xg_uniform_n.resize(n);
    r.lb_klm.resize(n);
    r.lb_simple.resize(n);
    r.ub_log2.resize(n);
    r.ub_klm_form.resize(n);
    r.gaussian_lb.resize(n);
    r.bobkov_entropy.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double x = r.x[i];
        auto p = logconcave::profile_g(x);
        r.gamma[i] = p.gamma;
        r.xg_logconcave[i] = x * p.g;
        r.xg_uniform_n[i] = x * uniform::profile_g_n(x, uniform_n).g;
        r.lb_klm[i] = lb_klm(x);
        r.lb_simple[i] = lb_simple(x);
        r.ub_log2[i] = ub_log2(x);
        r.ub_klm_form[i] = ub_klm_form(x);
        r.gaussian_lb[i] = gaussian_lb(x);
        r.bobkov_entropy[i] = bobkov_entropy(x);
        double gap = r.xg_logconcave[i] - r.lb_klm[i];
        r.max_abs_err = std::fmax(r.max_abs_err, gap);
        r.max_rel_err = std::fmax(r.max_rel_err, gap / r.xg_logconcave[i]);
    }
    return r;
}

std::string report_csv(const BoundReport& r) {
    std::ostringstream out;
    out << "x,gamma,xG_logconcave,xG_uniform_n,lb_klm,lb_simple,ub_log2,"
           "ub_klm_form,gaussian_lb,bobkov_entropy\n";
    for (size_t i = 0; i < r.x.size(); ++i) {
        out << fmt17(r.x[i]) << ',' << fmt17(r.gamma[i]) << ','
            << fmt17(r.xg_logconcave[i]) << ',' << fmt17(r.xg_uniform_n[i]) << ','
            << fmt17(r.lb_klm[i]) << ',' << fmt17(r.lb_simple[i]) << ','
            << fmt17(r.ub_log2[i]) << ',' << fmt17(r.ub_klm_form[i]) << ','
            << fmt17(r.gaussian_lb[i]) << ',' << fmt17(r.bobkov_entropy[i]) << '\n';
    }
    return out.str();
}

std::string report_json(const BoundReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < r.x.size(); ++i) {
        rows.push_back({{"x", r.x[i]},
                        {"gamma", r.gamma[i]},
                        {"xG_logconcave", r.xg_logconcave[i]},
                        {"xG_uniform_n", r.xg_uniform_n[i]},
                        {"lb_klm", r.lb_klm[i]},
                        {"lb_simple", r.lb_simple[i]},
                        {"ub_log2", r.ub_log2[i]},
                        {"ub_klm_form", r.ub_klm_form[i]},
                        {"gaussian_lb", r.gaussian_lb[i]},
                        {"bobkov_entropy", r.bobkov_entropy[i]}});
    }
    nlohmann::json out{{"uniform_n", r.uniform_n},
                       {"max_abs_err", r.max_abs_err},
                       {"max_rel_err", r.max_rel_err},
                       {"rows", std::move(rows)}};
    return out.dump(2);
}

}  // namespace isoperim::bounds
