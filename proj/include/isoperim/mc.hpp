#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace isoperim::mc {

enum class Shape { UnitCube, UnitBall, StandardSimplex };
enum class Norm { L1, L2, Linf };

// Log-concave density on the body: uniform, or an exponential tilt
// exp(gamma <u, x>) with u a unit direction.
struct Density {
    bool tilted = false;
    double gamma = 0.0;
    std::vector<double> u;  // unit vector, size n; empty for uniform
};

struct BodySpec {
    Shape shape = Shape::UnitCube;
    int n = 2;
    Density density;
    Norm norm = Norm::Linf;
};

BodySpec make_body(Shape shape, int n, Norm norm);
BodySpec make_tilted_body(Shape shape, int n, Norm norm, std::vector<double> direction,
                          double gamma);

struct CutSpec {
    enum class Kind { Halfspace, CornerSubcube, KDimSubcube };
    Kind kind = Kind::Halfspace;
    std::vector<double> normal;  // Halfspace only
    double offset = 0.0;         // Halfspace only
    double side = 0.0;           // subcubes
    int k = 0;                   // KDimSubcube only

    static CutSpec halfspace(std::vector<double> a, double b);
    static CutSpec corner_subcube(double side);
    static CutSpec kdim_subcube(int k, double side);
};

struct McEstimate {
    double value = 0.0;
    double std_err = 0.0;
    uint64_t samples = 0;
    uint64_t seed = 0;
    bool extrapolation_monotone = true;  // meaningful for Minkowski estimates
};

// Exact membership test for S = K intersect {cut}.
bool cut_contains(const CutSpec& cut, const std::vector<double>& x);

// Exact distance from x to S in the given norm (halfspaces and axis-aligned
// boxes only).
double cut_distance(const CutSpec& cut, const std::vector<double>& x, Norm norm);

// Closed-form diameter of the body in the given norm.
double body_diameter(const BodySpec& body, Norm norm);

// One point drawn from the body's measure; uniform shapes are sampled
// directly, tilts by rejection. attempts accumulates rejection trials.
std::vector<double> sample_point(const BodySpec& body, uint64_t seed, uint64_t index,
                                 uint64_t& attempts);

McEstimate estimate_measure(const BodySpec& body, const CutSpec& cut,
                            uint64_t samples, uint64_t seed);

// Minkowski content by dilation counting at each h, Richardson-extrapolated
// to h -> 0. h_list must be strictly decreasing with >= 3 entries.
McEstimate estimate_minkowski(const BodySpec& body, const CutSpec& cut, Norm norm,
                              uint64_t samples, uint64_t seed,
                              const std::vector<double>& h_list = {0.02, 0.01, 0.005});

struct CheckResult {
    double mu_s = 0.0, se_mu = 0.0;
    double mink = 0.0, se_mink = 0.0;
    double diam = 0.0;
    double lhs = 0.0, rhs = 0.0;
    double sigma_slack = 0.0;
    bool pass = false;
};

// diam * mu+(S) >= x G(1/x) with x folded to min(mu, 1-mu); pass at 3 sigma.
CheckResult run_theorem_check(const BodySpec& body, const CutSpec& cut, Norm norm,
                              uint64_t samples, uint64_t seed);

struct MatrixRow {
    std::string shape, norm, density, cut;
    int n = 0;
    double gamma = 0.0;
    uint64_t samples = 0, seed = 0;
    CheckResult res;
};

struct MatrixCell {
    BodySpec body;
    CutSpec cut;
    std::string cut_name;
};

// 3 shapes x n in {2,3,5} x 3 norms x 2 densities x 5 cuts per shape.
std::vector<MatrixCell> default_matrix();

std::vector<MatrixRow> run_matrix(uint64_t samples, uint64_t seed);

std::string matrix_csv(const std::vector<MatrixRow>& rows);
std::string matrix_json(const std::vector<MatrixRow>& rows);

}  // namespace isoperim::mc
