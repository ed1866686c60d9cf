#include "isoperim/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "isoperim/format.hpp"
#include "isoperim/logconcave.hpp"
#include "isoperim/rng.hpp"

namespace isoperim::mc {

namespace {

constexpr uint64_t kChunk = 1 << 16;
constexpr uint64_t kMaxRejectTrials = 200000;

int thread_count() {
    if (const char* env = std::getenv("ISOPERIM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

double norm_of(const std::vector<double>& v, Norm norm) {
    switch (norm) {
        case Norm::L1: {
            double s = 0.0;
            for (double c : v) s += std::fabs(c);
            return s;
        }
        case Norm::L2: {
            double s = 0.0;
            for (double c : v) s += c * c;
            return std::sqrt(s);
        }
        case Norm::Linf: {
            double s = 0.0;
            for (double c : v) s = std::fmax(s, std::fabs(c));
            return s;
        }
    }
    return 0.0;
}

Norm dual_of(Norm norm) {
    switch (norm) {
        case Norm::L1: return Norm::Linf;
        case Norm::Linf: return Norm::L1;
        default: return Norm::L2;
    }
}

void validate_body(const BodySpec& body) {
    if (body.n < 2) throw std::domain_error("body dimension must be >= 2");
    if (body.density.tilted && static_cast<int>(body.density.u.size()) != body.n)
        throw std::domain_error("tilt direction size must equal dimension");
}

void validate_cut(const BodySpec& body, const CutSpec& cut) {
    switch (cut.kind) {
        case CutSpec::Kind::Halfspace:
            if (static_cast<int>(cut.normal.size()) != body.n)
                throw std::domain_error("halfspace normal size must equal dimension");
            break;
        case CutSpec::Kind::CornerSubcube:
            if (body.shape != Shape::UnitCube)
                throw std::invalid_argument("subcube cuts are only defined on the unit cube");
            if (!(cut.side > 0.0 && cut.side <= 1.0))
                throw std::domain_error("subcube side must lie in (0, 1]");
            break;
        case CutSpec::Kind::KDimSubcube:
            if (body.shape != Shape::UnitCube)
                throw std::invalid_argument("subcube cuts are only defined on the unit cube");
            if (cut.k < 1 || cut.k > body.n)
                throw std::domain_error("subcube k must lie in [1, n]");
            if (!(cut.side > 0.0 && cut.side <= 1.0))
                throw std::domain_error("subcube side must lie in (0, 1]");
            break;
    }
}

// max of gamma <u, x> over the body; the rejection normalizer
double tilt_log_max(const BodySpec& body) {
    const auto& d = body.density;
    double m = 0.0;
    switch (body.shape) {
        case Shape::UnitCube:
            for (double ui : d.u) m += std::fmax(d.gamma * ui, 0.0);
            return m;
        case Shape::UnitBall:
            return std::fabs(d.gamma) * norm_of(d.u, Norm::L2);
        case Shape::StandardSimplex: {
            double top = 0.0;
            for (double ui : d.u) top = std::fmax(top, d.gamma * ui);
            return std::fmax(0.0, top);
        }
    }
    return m;
}

void sample_uniform(const BodySpec& body, rng::CounterRng& r, std::vector<double>& x) {
    const int n = body.n;
    switch (body.shape) {
        case Shape::UnitCube:
            for (int i = 0; i < n; ++i) x[i] = r.next_double();
            break;
        case Shape::UnitBall: {
            // gaussian direction, radius U^{1/n}
            double norm2 = 0.0;
            for (int i = 0; i < n; i += 2) {
                double u1 = r.next_open(), u2 = r.next_double();
                double rad = std::sqrt(-2.0 * std::log(u1));
                x[i] = rad * std::cos(2.0 * M_PI * u2);
                if (i + 1 < n) x[i + 1] = rad * std::sin(2.0 * M_PI * u2);
            }
            for (int i = 0; i < n; ++i) norm2 += x[i] * x[i];
            double scale = std::pow(r.next_open(), 1.0 / n) / std::sqrt(norm2);
            for (int i = 0; i < n; ++i) x[i] *= scale;
            break;
        }
        case Shape::StandardSimplex: {
            // n+1 exponential spacings
            double total = 0.0;
            for (int i = 0; i < n; ++i) {
                x[i] = -std::log(r.next_open());
                total += x[i];
            }
            total += -std::log(r.next_open());
            for (int i = 0; i < n; ++i) x[i] /= total;
            break;
        }
    }
}

void sample_from(const BodySpec& body, rng::CounterRng& r, std::vector<double>& x,
                 uint64_t& attempts) {
    if (!body.density.tilted || body.density.gamma == 0.0) {
        sample_uniform(body, r, x);
        ++attempts;
        return;
    }
    const double log_max = tilt_log_max(body);
    for (uint64_t trial = 0; trial < kMaxRejectTrials; ++trial) {
        sample_uniform(body, r, x);
        ++attempts;
        double dot = 0.0;
        for (int i = 0; i < body.n; ++i) dot += body.density.u[i] * x[i];
        if (r.next_double() < std::exp(body.density.gamma * dot - log_max)) return;
    }
    throw std::runtime_error(
        "rejection sampling acceptance rate below 1e-4; use a smaller |gamma|");
}

struct PassCounts {
    uint64_t in_s = 0;
    uint64_t attempts = 0;
    std::vector<uint64_t> near_h;  // points in S_h \ S per h
};

PassCounts measure_pass(const BodySpec& body, const CutSpec& cut, Norm norm,
                        uint64_t samples, uint64_t seed,
                        const std::vector<double>& h_list) {
    validate_body(body);
    validate_cut(body, cut);
    if (samples == 0) throw std::invalid_argument("samples must be positive");

    const uint64_t nchunks = (samples + kChunk - 1) / kChunk;
    std::vector<PassCounts> partial(nchunks, PassCounts{0, 0, std::vector<uint64_t>(h_list.size(), 0)});
    const double h_max = h_list.empty() ? 0.0 : h_list.front();

    auto work = [&](uint64_t chunk) {
        PassCounts& acc = partial[chunk];
        std::vector<double> x(body.n);
        const uint64_t lo = chunk * kChunk;
        const uint64_t hi = std::min(samples, lo + kChunk);
        for (uint64_t i = lo; i < hi; ++i) {
            rng::CounterRng r(seed, i);
            sample_from(body, r, x, acc.attempts);
            if (cut_contains(cut, x)) {
                ++acc.in_s;
            } else if (!h_list.empty()) {
                double d = cut_distance(cut, x, norm);
                if (d <= h_max) {
                    for (size_t j = 0; j < h_list.size(); ++j)
                        if (d <= h_list[j]) ++acc.near_h[j];
                }
            }
        }
    };

    const int nthreads = std::min<int>(thread_count(), static_cast<int>(nchunks));
    if (nthreads <= 1) {
        for (uint64_t c = 0; c < nchunks; ++c) work(c);
    } else {
        std::vector<std::thread> pool;
        std::atomic<uint64_t> next{0};
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (uint64_t c; (c = next.fetch_add(1)) < nchunks;) work(c);
            });
        for (auto& th : pool) th.join();
    }

    PassCounts total{0, 0, std::vector<uint64_t>(h_list.size(), 0)};
    for (const auto& p : partial) {
        total.in_s += p.in_s;
        total.attempts += p.attempts;
        for (size_t j = 0; j < h_list.size(); ++j) total.near_h[j] += p.near_h[j];
    }
    return total;
}

}  // namespace

BodySpec make_body(Shape shape, int n, Norm norm) {
    BodySpec b;
    b.shape = shape;
    b.n = n;
    b.norm = norm;
    validate_body(b);
    return b;
}

BodySpec make_tilted_body(Shape shape, int n, Norm norm, std::vector<double> direction,
                          double gamma) {
    BodySpec b = make_body(shape, n, norm);
    double len = norm_of(direction, Norm::L2);
    if (!(len > 0.0)) throw std::domain_error("tilt direction must be nonzero");
    for (double& c : direction) c /= len;
    b.density = {true, gamma, std::move(direction)};
    validate_body(b);
    return b;
}

CutSpec CutSpec::halfspace(std::vector<double> a, double b) {
    CutSpec c;
    c.kind = Kind::Halfspace;
    c.normal = std::move(a);
    c.offset = b;
    return c;
}

CutSpec CutSpec::corner_subcube(double side) {
    CutSpec c;
    c.kind = Kind::CornerSubcube;
    c.side = side;
    return c;
}

CutSpec CutSpec::kdim_subcube(int k, double side) {
    CutSpec c;
    c.kind = Kind::KDimSubcube;
    c.k = k;
    c.side = side;
    return c;
}

bool cut_contains(const CutSpec& cut, const std::vector<double>& x) {
    switch (cut.kind) {
        case CutSpec::Kind::Halfspace: {
            double dot = 0.0;
            for (size_t i = 0; i < x.size(); ++i) dot += cut.normal[i] * x[i];
            return dot <= cut.offset;
        }
        case CutSpec::Kind::CornerSubcube:
            for (double c : x)
                if (c > cut.side) return false;
            return true;
        case CutSpec::Kind::KDimSubcube:
            for (int i = 0; i < cut.k; ++i)
                if (x[i] > cut.side) return false;
            return true;
    }
    return false;
}

double cut_distance(const CutSpec& cut, const std::vector<double>& x, Norm norm) {
    switch (cut.kind) {
        case CutSpec::Kind::Halfspace: {
            double dot = 0.0;
            for (size_t i = 0; i < x.size(); ++i) dot += cut.normal[i] * x[i];
            double dual = norm_of(cut.normal, dual_of(norm));
            return std::fmax(0.0, (dot - cut.offset) / dual);
        }
        case CutSpec::Kind::CornerSubcube:
        case CutSpec::Kind::KDimSubcube: {
            int k = cut.kind == CutSpec::Kind::CornerSubcube ? static_cast<int>(x.size())
                                                             : cut.k;
            std::vector<double> excess(k);
            for (int i = 0; i < k; ++i) excess[i] = std::fmax(0.0, x[i] - cut.side);
            return norm_of(excess, norm);
        }
    }
    return 0.0;
}

double body_diameter(const BodySpec& body, Norm norm) {
    validate_body(body);
    const double n = body.n;
    switch (body.shape) {
        case Shape::UnitCube:
            switch (norm) {
                case Norm::L1: return n;
                case Norm::L2: return std::sqrt(n);
                case Norm::Linf: return 1.0;
            }
            break;
        case Shape::UnitBall:
            // extreme pairs are antipodal: 2 * max ||x|| over the L2 sphere
            switch (norm) {
                case Norm::L1: return 2.0 * std::sqrt(n);
                case Norm::L2: return 2.0;
                case Norm::Linf: return 2.0;
            }
            break;
        case Shape::StandardSimplex:
            // attained on vertex pairs {0, e_i, e_j}
            switch (norm) {
                case Norm::L1: return 2.0;
                case Norm::L2: return std::sqrt(2.0);
                case Norm::Linf: return 1.0;
            }
            break;
    }
    return 0.0;
}

std::vector<double> sample_point(const BodySpec& body, uint64_t seed, uint64_t index,
                                 uint64_t& attempts) {
    validate_body(body);
    std::vector<double> x(body.n);
    rng::CounterRng r(seed, index);
    sample_from(body, r, x, attempts);
    return x;
}

McEstimate estimate_measure(const BodySpec& body, const CutSpec& cut,
                            uint64_t samples, uint64_t seed) {
    PassCounts c = measure_pass(body, cut, body.norm, samples, seed, {});
    double p = static_cast<double>(c.in_s) / samples;
    McEstimate e;
    e.value = p;
    e.std_err = std::sqrt(p * (1.0 - p) / samples);
    e.samples = samples;
    e.seed = seed;
    return e;
}

McEstimate estimate_minkowski(const BodySpec& body, const CutSpec& cut, Norm norm,
                              uint64_t samples, uint64_t seed,
                              const std::vector<double>& h_list) {
    if (h_list.size() < 3)
        throw std::invalid_argument("h_list needs >= 3 strictly decreasing values");
    for (size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1]) || !(h_list[i] > 0.0))
            throw std::invalid_argument("h_list needs >= 3 strictly decreasing values");

    PassCounts c = measure_pass(body, cut, norm, samples, seed, h_list);
    const size_t m = h_list.size();
    std::vector<double> f(m), se(m);
    for (size_t j = 0; j < m; ++j) {
        double p = static_cast<double>(c.near_h[j]) / samples;
        f[j] = p / h_list[j];
        se[j] = std::sqrt(p * (1.0 - p) / samples) / h_list[j];
    }
    // linear Richardson step from the two smallest h
    double h1 = h_list[m - 2], h2 = h_list[m - 1];
    double w1 = -h2 / (h1 - h2), w2 = h1 / (h1 - h2);
    McEstimate e;
    e.value = w1 * f[m - 2] + w2 * f[m - 1];
    e.std_err = std::sqrt(w1 * w1 * se[m - 2] * se[m - 2] + w2 * w2 * se[m - 1] * se[m - 1]);
    e.samples = samples;
    e.seed = seed;
    // the finite-h estimates should drift monotonically toward the limit;
    // reversals beyond noise indicate the h grid is too coarse
    for (size_t j = 2; j < m; ++j) {
        double step0 = f[j - 1] - f[j - 2], step1 = f[j] - f[j - 1];
        double noise = 3.0 * (se[j] + se[j - 1] + se[j - 2]);
        if (step0 * step1 < 0.0 && std::fabs(step1) > noise && std::fabs(step0) > noise)
            e.extrapolation_monotone = false;
    }
    return e;
}

CheckResult run_theorem_check(const BodySpec& body, const CutSpec& cut, Norm norm,
                              uint64_t samples, uint64_t seed) {
    McEstimate mink = estimate_minkowski(body, cut, norm, samples, seed);
    McEstimate mu = estimate_measure(body, cut, samples, seed + 1);

    CheckResult r;
    r.mu_s = mu.value;
    r.se_mu = mu.std_err;
    r.mink = mink.value;
    r.se_mink = mink.std_err;
    r.diam = body_diameter(body, norm);
    r.lhs = r.diam * r.mink;

    double xf = std::fmin(mu.value, 1.0 - mu.value);
    if (!(xf > 0.0)) {
        // empty or full estimate: the bound degenerates to lhs >= 0
        r.rhs = 0.0;
        r.sigma_slack = INFINITY;
        r.pass = r.lhs >= 0.0;
        return r;
    }
    auto p = logconcave::profile_g(xf);
    r.rhs = xf * p.g;
    double slope = p.gamma;  // d/dx [x G(1/x)]
    double sigma = std::sqrt(r.diam * r.diam * mink.std_err * mink.std_err +
                             slope * slope * mu.std_err * mu.std_err);
    r.sigma_slack = sigma > 0.0 ? (r.lhs - r.rhs) / sigma : INFINITY;
    r.pass = r.lhs >= r.rhs - 3.0 * sigma;
    return r;
}

namespace {

std::string shape_name(Shape s) {
    switch (s) {
        case Shape::UnitCube: return "cube";
        case Shape::UnitBall: return "ball";
        case Shape::StandardSimplex: return "simplex";
    }
    return "?";
}

std::string norm_name(Norm n) {
    switch (n) {
        case Norm::L1: return "l1";
        case Norm::L2: return "l2";
        case Norm::Linf: return "linf";
    }
    return "?";
}

std::vector<std::pair<CutSpec, std::string>> cuts_for(Shape shape, int n) {
    std::vector<std::pair<CutSpec, std::string>> cuts;
    std::vector<double> e1(n, 0.0);
    e1[0] = 1.0;
    std::vector<double> ones(n, 1.0);
    switch (shape) {
        case Shape::UnitCube:
            cuts.emplace_back(CutSpec::halfspace(e1, 0.5), "hs_x1<=0.5");
            cuts.emplace_back(CutSpec::halfspace(e1, 0.3), "hs_x1<=0.3");
            cuts.emplace_back(CutSpec::halfspace(ones, 0.5 * n), "hs_diag");
            cuts.emplace_back(CutSpec::corner_subcube(0.5), "corner_0.5");
            cuts.emplace_back(CutSpec::kdim_subcube(std::min(2, n), 0.35), "kdim2_0.35");
            break;
        case Shape::UnitBall:
            cuts.emplace_back(CutSpec::halfspace(e1, 0.0), "hs_x1<=0");
            cuts.emplace_back(CutSpec::halfspace(e1, 0.3), "hs_x1<=0.3");
            cuts.emplace_back(CutSpec::halfspace(e1, -0.2), "hs_x1<=-0.2");
            cuts.emplace_back(CutSpec::halfspace(ones, 0.2), "hs_diag<=0.2");
            cuts.emplace_back(CutSpec::halfspace(e1, 0.5), "hs_x1<=0.5");
            break;
        case Shape::StandardSimplex: {
            std::vector<double> diff(n, 0.0);
            diff[0] = 1.0;
            if (n > 1) diff[1] = -1.0;
            cuts.emplace_back(CutSpec::halfspace(e1, 0.2), "hs_x1<=0.2");
            cuts.emplace_back(CutSpec::halfspace(e1, 0.4), "hs_x1<=0.4");
            cuts.emplace_back(CutSpec::halfspace(ones, 0.5), "hs_sum<=0.5");
            cuts.emplace_back(CutSpec::halfspace(diff, 0.0), "hs_x1<=x2");
            cuts.emplace_back(CutSpec::halfspace(e1, 0.1), "hs_x1<=0.1");
            break;
        }
    }
    return cuts;
}

}  // namespace

std::vector<MatrixCell> default_matrix() {
    std::vector<MatrixCell> cells;
    const Shape shapes[] = {Shape::UnitCube, Shape::UnitBall, Shape::StandardSimplex};
    const Norm norms[] = {Norm::L1, Norm::L2, Norm::Linf};
    const int dims[] = {2, 3, 5};
    for (Shape shape : shapes)
        for (int n : dims)
            for (Norm norm : norms)
                for (int dens = 0; dens < 2; ++dens) {
                    BodySpec body;
                    if (dens == 0) {
                        body = make_body(shape, n, norm);
                    } else {
                        std::vector<double> u(n, 0.0);
                        u[0] = 1.0;
                        body = make_tilted_body(shape, n, norm, u, 1.0);
                    }
                    for (auto& [cut, name] : cuts_for(shape, n))
                        cells.push_back({body, cut, name});
                }
    return cells;
}

std::vector<MatrixRow> run_matrix(uint64_t samples, uint64_t seed) {
    std::vector<MatrixRow> rows;
    uint64_t cell_seed = seed;
    for (const auto& cell : default_matrix()) {
        MatrixRow row;
        row.shape = shape_name(cell.body.shape);
        row.norm = norm_name(cell.body.norm);
        row.density = cell.body.density.tilted ? "exp_tilt" : "uniform";
        row.cut = cell.cut_name;
        row.n = cell.body.n;
        row.gamma = cell.body.density.gamma;
        row.samples = samples;
        row.seed = cell_seed;
        row.res = run_theorem_check(cell.body, cell.cut, cell.body.norm, samples, cell_seed);
        rows.push_back(std::move(row));
        cell_seed += 2;  // run_theorem_check uses seed and seed+1
    }
    return rows;
}

std::string matrix_csv(const std::vector<MatrixRow>& rows) {
    std::ostringstream out;
    out << "shape,n,norm,density,gamma,cut,samples,seed,mu_S,se_mu,mink,se_mink,"
           "diam,lhs,rhs,slack_sigma,pass\n";
    for (const auto& r : rows) {
        out << r.shape << ',' << r.n << ',' << r.norm << ',' << r.density << ','
            << fmt17(r.gamma) << ',' << r.cut << ',' << r.samples << ',' << r.seed << ','
            << fmt17(r.res.mu_s) << ',' << fmt17(r.res.se_mu) << ','
            << fmt17(r.res.mink) << ',' << fmt17(r.res.se_mink) << ','
            << fmt17(r.res.diam) << ',' << fmt17(r.res.lhs) << ',' << fmt17(r.res.rhs) << ','
            << fmt17(r.res.sigma_slack) << ',' << (r.res.pass ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string matrix_json(const std::vector<MatrixRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"shape", r.shape}, {"n", r.n}, {"norm", r.norm},
                       {"density", r.density}, {"gamma", r.gamma}, {"cut", r.cut},
                       {"samples", r.samples}, {"seed", r.seed},
                       {"mu_S", r.res.mu_s}, {"se_mu", r.res.se_mu},
                       {"mink", r.res.mink}, {"se_mink", r.res.se_mink},
                       {"diam", r.res.diam}, {"lhs", r.res.lhs}, {"rhs", r.res.rhs},
                       {"slack_sigma", r.res.sigma_slack}, {"pass", r.res.pass}});
    }
    return arr.dump(2);
}

}  // namespace isoperim::mc
