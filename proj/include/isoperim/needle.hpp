#pragma once

#include <optional>
#include <string>
#include <vector>

namespace isoperim::needle {

enum class WeightFamily { ExponentialTilt, LinearPower };

// 1D needle weight on [0,1]: e^{gamma t}, or (1 + gamma t)^{n-1}.
// LinearPower requires gamma > -1 so the base stays positive on [0,1].
struct NeedleWeight {
    WeightFamily family = WeightFamily::ExponentialTilt;
    double gamma = 0.0;
    int n = 1;  // exponent n-1 for LinearPower; ignored for ExponentialTilt
};

// Partition [0,1] into S1 = [0,s), B = [s, s+t], S2 = (s+t, 1].
// Canonical when mu(S1) <= mu(S2).
struct NeedleInstance {
    NeedleWeight weight;
    double s = 0.0;
    double t = 0.0;
};

double density(const NeedleWeight& w, double t);

// Closed-form antiderivative of the weight over [a,b] within [0,1].
double weighted_measure(const NeedleWeight& w, double a, double b);

// Same integral by adaptive quadrature; the independent cross-check path.
double weighted_measure_quad(const NeedleWeight& w, double a, double b,
                             double abs_tol = 1e-13);

// Cut s with mu([0,s)) = x * (mu([0,1]) - mu([s,s+t])), if one exists with
// mu(S1) <= mu(S2); nullopt marks an infeasible (x,t) pair.
std::optional<double> cut_for_x(const NeedleWeight& w, double x, double t);

// ((1-t)/t) * mu(B) / mu(K\B); the separating-layer functional with d = 1.
double three_set_functional(const NeedleInstance& inst);

// Closed form of the same functional for the exponential family,
// (1 + x(e^g - 1)) ((1-t)/t) (e^{g t} - 1)/(e^g - e^{g t}).
double three_set_exp_closed(double gamma, double x, double t);

// t -> 0+ limit for the exponential family: gamma x + gamma/(e^gamma - 1).
// At gamma = 0 the limit of the second term is 1, so the value is 1.
double limit_functional(double gamma, double x);

// inf over gamma of limit_functional(gamma, x), computed by stationarity
// root-finding and independently by golden-section minimization; the two
// routes must agree to 1e-9. Oracle for the log-concave x*G(1/x).
double minimize_exp_family(double x);

// inf over gamma > -1 of the t -> 0+ functional for weight (1+gamma t)^{n-1}:
// boundary density at the mass-x cut over total measure. Oracle for the
// uniform x*G(1/x).
double minimize_linear_family(double x, int n);

// ((1-t)/t) (D^t - 1)/(D - D^t), >= log(D)/(D-1) with infimum at t -> 0+.
double lemma_min_lhs(double D, double t);

struct SweepRow {
    std::string family;
    int n;
    double gamma, x, s, t, lhs, rhs, slack;
};

// Canonical feasible exponential-tilt instances over a (gamma, x, t) grid,
// with lhs = three_set_functional and rhs = x*G(1/x) from the sharp profile.
std::vector<SweepRow> needle_sweep(const std::vector<double>& gammas,
                                   const std::vector<double>& xs,
                                   const std::vector<double>& ts);

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

}  // namespace isoperim::needle
