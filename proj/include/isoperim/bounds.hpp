#pragma once

#include <string>
#include <vector>

namespace isoperim::bounds {

// Closed-form comparison bounds on x*G(1/x), all in the measure-scaled form
// (diam K) mu+(S) >= bound(x).

// x(1-x)(4 + log(1/(4x(1-x)))), lower bound, symmetric in x <-> 1-x
double lb_klm(double x);

// x(2 + log(1/2x)), the weaker lower bound
double lb_simple(double x);

// 2x log2(1/x), upper bound
double ub_log2(double x);

// 4x(1-x) log2(1/(x(1-x))), upper bound, symmetric
double ub_klm_form(double x);

// Standard normal CDF and its inverse (abs error <= 1e-12 on (0,1)).
double norm_cdf(double z);
double norm_inv(double p);

// Gaussian isoperimetric function phi(Phi^-1(x))
double gaussian_I(double x);

// sqrt(2 pi) * gaussian_I(x), lower bound on x*G(1/x)
double gaussian_lb(double x);

// x log(1/x) + (1-x) log(1/(1-x)), entropy lower bound
double bobkov_entropy(double x);

// min_{k=1..n} k * x^{-1/k}, the hypercube face-parallel minimum
double bl_hypercube_min(double x, int n);

// x*G/(x(1-x)) - (4 + log(1/(4x(1-x)))) at x = x(gamma); nonnegative for gamma > 0
double klm_residual(double gamma);

struct GridSpec {
    double lo = 1e-4;
    double hi = 0.5;
    int count = 2000;
    bool log_spaced = true;
};

std::vector<double> make_grid(const GridSpec& spec);

struct BoundReport {
    std::vector<double> x;
    std::vector<double> gamma;
    std::vector<double> xg_logconcave;
    std::vector<double> xg_uniform_n;
    std::vector<double> lb_klm;
    std::vector<double> lb_simple;
    std::vector<double> ub_log2;
    std::vector<double> ub_klm_form;
    std::vector<double> gaussian_lb;
    std::vector<double> bobkov_entropy;
    int uniform_n = 3;
    double max_abs_err = 0.0;  // max over grid of xg_logconcave - lb_klm
    double max_rel_err = 0.0;
};

// Evaluate every bound and both sharp profiles on the grid.
BoundReport bound_gap_report(const GridSpec& spec, int uniform_n = 3);

std::string report_csv(const BoundReport& r);
std::string report_json(const BoundReport& r);

}  // namespace isoperim::bounds
