#include "isoperim/needle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "isoperim/format.hpp"
#include "isoperim/logconcave.hpp"
#include "isoperim/quadrature.hpp"
#include "isoperim/rootfind.hpp"

namespace isoperim::needle {

namespace {

void validate(const NeedleWeight& w) {
    if (!std::isfinite(w.gamma))
        throw std::domain_error("needle weight: gamma must be finite");
    if (w.family == WeightFamily::LinearPower) {
        if (w.n < 1) throw std::domain_error("needle weight: n must be >= 1");
        if (w.gamma <= -1.0)
            throw std::domain_error("needle weight: LinearPower needs gamma > -1");
    }
}

}  // namespace

double density(const NeedleWeight& w, double t) {
    validate(w);
    if (w.family == WeightFamily::ExponentialTilt)
        return std::exp(w.gamma * t);
    return std::pow(1.0 + w.gamma * t, w.n - 1);
}

double weighted_measure(const NeedleWeight& w, double a, double b) {
    validate(w);
    if (!(a >= 0.0) || !(b <= 1.0) || a > b)
        throw std::domain_error("weighted_measure: need 0 <= a <= b <= 1");
    if (w.gamma == 0.0) return b - a;
    if (w.family == WeightFamily::ExponentialTilt)
        return std::exp(w.gamma * a) * std::expm1(w.gamma * (b - a)) / w.gamma;
    // ((1+g b)^n - (1+g a)^n)/(g n), written to avoid cancellation at small g
    double base = 1.0 + w.gamma * a;
    double dl = std::log1p(w.gamma * (b - a) / base);
    return std::pow(base, w.n) * std::expm1(w.n * dl) / (w.gamma * w.n);
}

double weighted_measure_quad(const NeedleWeight& w, double a, double b, double abs_tol) {
    validate(w);
    if (!(a >= 0.0) || !(b <= 1.0) || a > b)
        throw std::domain_error("weighted_measure_quad: need 0 <= a <= b <= 1");
    return num::integrate([&w](double t) { return density(w, t); }, a, b, abs_tol);
}

std::optional<double> cut_for_x(const NeedleWeight& w, double x, double t) {
    validate(w);
    if (!(x > 0.0) || x > 0.5) throw std::domain_error("cut_for_x: x must lie in (0, 1/2]");
    if (!(t >= 0.0) || t > 1.0) throw std::domain_error("cut_for_x: t must lie in [0, 1]");
    if (t >= 1.0) return std::nullopt;  // B swallows everything
    double total = weighted_measure(w, 0.0, 1.0);
    auto mass_gap = [&](double s) {
        return weighted_measure(w, 0.0, s) -
               x * (total - weighted_measure(w, s, s + t));
    };
    // mass_gap is strictly increasing in s, negative at 0, positive at 1-t
    if (mass_gap(1.0 - t) < 0.0) return std::nullopt;
    return num::brent_root(mass_gap, 0.0, 1.0 - t, 1e-15);
}

double three_set_functional(const NeedleInstance& inst) {
    validate(inst.weight);
    if (!(inst.t > 0.0))
        throw std::domain_error("three_set_functional: t must be positive (use limit_functional)");
    if (inst.s < 0.0 || inst.s + inst.t > 1.0)
        throw std::domain_error("three_set_functional: partition leaves [0,1]");
    double mb = weighted_measure(inst.weight, inst.s, inst.s + inst.t);
    double rest = weighted_measure(inst.weight, 0.0, inst.s) +
                  weighted_measure(inst.weight, inst.s + inst.t, 1.0);
    return (1.0 - inst.t) / inst.t * mb / rest;
}

double three_set_exp_closed(double gamma, double x, double t) {
    if (!(t > 0.0) || t >= 1.0) throw std::domain_error("three_set_exp_closed: t in (0,1)");
    if (gamma == 0.0) return (1.0 - t) / t * t / (1.0 - t);
    double eg = std::expm1(gamma);                       // e^g - 1
    double egt = std::expm1(gamma * t);                  // e^{g t} - 1
    return (1.0 + x * eg) * (1.0 - t) / t * egt / (eg - egt);
}

double limit_functional(double gamma, double x) {
    if (!(x > 0.0) || x > 0.5)
        throw std::domain_error("limit_functional: x must lie in (0, 1/2]");
    if (!std::isfinite(gamma)) throw std::domain_error("limit_functional: gamma must be finite");
    if (gamma == 0.0) return 1.0;
    if (gamma > 709.0) return gamma * x;  // e^gamma overflows; tail term vanishes
    return gamma * x + gamma / std::expm1(gamma);
}

namespace {

// Stationarity residual (g - 1 + e^-g) e^-g / (1 - e^-g)^2 - x, written with
// exp(-g) so it survives g up to the bracket cap; the g - 1 + e^-g factor
// cancels catastrophically below g ~ 1e-2, so switch to its series there.
double stationarity(double gamma, double x) {
    double u = std::exp(-gamma);
    double om = -std::expm1(-gamma);
    double d = gamma < 1e-2
                   ? gamma * gamma *
                         (0.5 + gamma * (-1.0 / 6.0 + gamma * (1.0 / 24.0 +
                          gamma * (-1.0 / 120.0 + gamma / 720.0))))
                   : gamma - 1.0 + u;
    return d * u / (om * om) - x;
}

}  // namespace

double minimize_exp_family(double x) {
    if (!(x > 0.0) || x > 0.5)
        throw std::domain_error("minimize_exp_family: x must lie in (0, 1/2]");
    // route (a): the minimizer solves stationarity(gamma) = 0
    double val_stat;
    if (x == 0.5 || stationarity(1e-9, x) <= 0.0) {
        val_stat = limit_functional(0.0, x);
    } else {
        double g = num::brent_root(
            [x](double u) { return stationarity(std::exp(u), x); },
            std::log(1e-9), std::log(800.0), 1e-15);
        val_stat = limit_functional(std::exp(g), x);
    }
    // route (b): derivative-free minimization over a widened bracket
    auto obj = [x](double g) { return limit_functional(g, x); };
    auto [a, b] = num::expand_min_bracket(obj, -1.0, 10.0, -700.0, 800.0);
    double val_golden = num::golden_min(obj, a, b, 1e-10).second;
    if (std::fabs(val_stat - val_golden) > 1e-9)
        throw std::runtime_error("minimize_exp_family: stationarity and golden-section routes disagree");
    return val_stat;
}

double minimize_linear_family(double x, int n) {
    if (!(x > 0.0) || x > 0.5)
        throw std::domain_error("minimize_linear_family: x must lie in (0, 1/2]");
    if (n < 2) throw std::domain_error("minimize_linear_family: n must be >= 2");
    // t -> 0+ value of the three-set functional: density at the mass-x cut
    // over total measure, minimized over the cone slope gamma.
    auto value_at = [x, n](double gamma) {
        NeedleWeight w{WeightFamily::LinearPower, gamma, n};
        double total = weighted_measure(w, 0.0, 1.0);
        double s = num::brent_root(
            [&](double s_) { return weighted_measure(w, 0.0, s_) - x * total; },
            0.0, 1.0, 1e-15);
        return density(w, s) / total;
    };
    auto [a, b] = num::expand_min_bracket(value_at, 0.0, 4.0, -1.0 + 1e-9, 1e12);
    return num::golden_min(value_at, a, b, 1e-10).second;
}

double lemma_min_lhs(double D, double t) {
    if (!(D > 1.0)) throw std::domain_error("lemma_min_lhs: D must exceed 1");
    if (!(t > 0.0) || !(t < 1.0)) throw std::domain_error("lemma_min_lhs: t must lie in (0,1)");
    double ld = std::log(D);
    // D - D^t = e^{t log D} (e^{(1-t) log D} - 1)
    return (1.0 - t) / t * std::expm1(t * ld) /
           (std::exp(t * ld) * std::expm1((1.0 - t) * ld));
}

std::vector<SweepRow> needle_sweep(const std::vector<double>& gammas,
                                   const std::vector<double>& xs,
                                   const std::vector<double>& ts) {
    std::vector<SweepRow> rows;
    for (double gamma : gammas) {
        NeedleWeight w{WeightFamily::ExponentialTilt, gamma, 1};
        for (double x : xs) {
            double rhs = x * logconcave::profile_g(x).g;
            for (double t : ts) {
                auto s = cut_for_x(w, x, t);
                if (!s) continue;
                NeedleInstance inst{w, *s, t};
                double lhs = three_set_functional(inst);
                rows.push_back({"exp", 1, gamma, x, *s, t, lhs, rhs, lhs - rhs});
            }
        }
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "family,n,gamma,x,s,t,lhs,rhs,slack\n";
    for (const auto& r : rows) {
        out << r.family << ',' << r.n << ',' << fmt17(r.gamma) << ','
            << fmt17(r.x) << ',' << fmt17(r.s) << ',' << fmt17(r.t) << ','
            << fmt17(r.lhs) << ',' << fmt17(r.rhs) << ',' << fmt17(r.slack) << '\n';
    }
    return out.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"family", r.family}, {"n", r.n}, {"gamma", r.gamma},
                       {"x", r.x}, {"s", r.s}, {"t", r.t},
                       {"lhs", r.lhs}, {"rhs", r.rhs}, {"slack", r.slack}});
    }
    return arr.dump(2);
}

}  // namespace isoperim::needle
