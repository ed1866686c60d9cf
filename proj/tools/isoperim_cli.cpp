#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isoperim/bounds.hpp"
#include "isoperim/format.hpp"
#include "isoperim/logconcave.hpp"
#include "isoperim/mc.hpp"
#include "isoperim/needle.hpp"
#include "isoperim/uniform.hpp"

namespace {

constexpr uint64_t kDefaultSeed = 20240801;  // fixed, never time-based
constexpr uint64_t kDefaultSamples = 1000000;

struct GridArgs {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    bool log_spaced = false;
};

GridArgs parse_grid(const std::vector<std::string>& raw) {
    if (raw.size() != 4)
        throw CLI::ValidationError("--grid", "expects: lo hi count {linear|log}");
    GridArgs g;
    g.lo = std::stod(raw[0]);
    g.hi = std::stod(raw[1]);
    g.count = std::stoi(raw[2]);
    if (raw[3] == "log") g.log_spaced = true;
    else if (raw[3] == "linear") g.log_spaced = false;
    else throw CLI::ValidationError("--grid", "spacing must be linear or log");
    if (g.count < 1 || !(g.lo > 0.0) || !(g.hi >= g.lo))
        throw CLI::ValidationError("--grid", "need 0 < lo <= hi and count >= 1");
    return g;
}

std::vector<double> grid_points(const GridArgs& g) {
    std::vector<double> xs(g.count);
    if (g.count == 1) { xs[0] = g.lo; return xs; }
    if (g.log_spaced) {
        double llo = std::log(g.lo), lhi = std::log(g.hi);
        for (int i = 0; i < g.count; ++i)
            xs[i] = std::exp(llo + (lhi - llo) * i / (g.count - 1));
        xs.back() = g.hi;
    } else {
        for (int i = 0; i < g.count; ++i)
            xs[i] = g.lo + (g.hi - g.lo) * i / (g.count - 1);
    }
    return xs;
}

double fold_x(double x) {
    if (!(x > 0.0) || !(x < 1.0))
        throw CLI::ValidationError("--x", "x must lie in (0, 1)");
    return std::fmin(x, 1.0 - x);
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + output);
        out << text;
    }
}

struct Row {
    std::vector<std::pair<std::string, nlohmann::json>> cells;
};

std::string rows_csv(const std::vector<Row>& rows) {
    std::ostringstream out;
    if (rows.empty()) return "";
    for (size_t i = 0; i < rows[0].cells.size(); ++i)
        out << rows[0].cells[i].first << (i + 1 < rows[0].cells.size() ? "," : "\n");
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.cells.size(); ++i) {
            const auto& v = r.cells[i].second;
            if (v.is_number_float()) out << isoperim::fmt17(v.get<double>());
            else out << v.dump();
            out << (i + 1 < r.cells.size() ? "," : "\n");
        }
    }
    return out.str();
}

std::string rows_json(const std::vector<Row>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (const auto& [k, v] : r.cells) obj[k] = v;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp isoperimetric profiles for log-concave measures on convex bodies"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string output;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", output, "output path (default: stdout)");

    // profile / uniform-profile
    std::optional<double> opt_x, opt_gamma;
    int dim_n = 1;
    std::vector<std::string> grid_raw;

    auto* profile = app.add_subcommand("profile", "log-concave profile point(s)");
    profile->add_option("--x", opt_x, "set size in (0,1); folded to (0,1/2]");
    profile->add_option("--gamma", opt_gamma, "tilt parameter > 0");
    profile->add_option("--grid", grid_raw, "x grid: lo hi count {linear|log}")->expected(4);

    auto* uprofile = app.add_subcommand("uniform-profile", "dimension-n uniform profile point(s)");
    uprofile->add_option("--n", dim_n, "dimension >= 1")->required();
    uprofile->add_option("--x", opt_x, "set size in (0,1); folded to (0,1/2]");
    uprofile->add_option("--gamma", opt_gamma, "cone slope > 0 (n >= 2)");
    uprofile->add_option("--grid", grid_raw, "x grid: lo hi count {linear|log}")->expected(4);

    int bounds_n = 3;
    auto* bounds_cmd = app.add_subcommand("bounds", "bound-gap report against the sharp profiles");
    bounds_cmd->add_option("--grid", grid_raw, "x grid: lo hi count {linear|log} "
                           "(default 1e-4 0.5 2000 log)")->expected(4);
    bounds_cmd->add_option("--n", bounds_n, "dimension for the uniform profile column");

    auto* verify1d = app.add_subcommand("verify-1d", "needle-grid verification of the three-set inequality");

    uint64_t samples = kDefaultSamples, seed = kDefaultSeed;
    auto* verifymc = app.add_subcommand("verify-mc", "Monte Carlo verification matrix");
    verifymc->add_option("--samples", samples, "samples per cell");
    verifymc->add_option("--seed", seed, "base RNG seed");

    std::vector<std::string> ggrid_raw, xgrid_raw, tgrid_raw;
    auto* sweep = app.add_subcommand("sweep", "needle sweep over a (gamma, x, t) grid");
    sweep->add_option("--gamma-grid", ggrid_raw, "lo hi count {linear|log}")->expected(4);
    sweep->add_option("--x-grid", xgrid_raw, "lo hi count {linear|log}")->expected(4);
    sweep->add_option("--t-grid", tgrid_raw, "lo hi count {linear|log}")->expected(4);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (profile->parsed() || uprofile->parsed()) {
            bool is_uniform = uprofile->parsed();
            std::vector<double> xs;
            std::vector<double> gammas;
            if (!grid_raw.empty()) {
                if (opt_x || opt_gamma)
                    throw CLI::ValidationError("--grid", "grid excludes --x/--gamma");
                xs = grid_points(parse_grid(grid_raw));
            } else if (opt_x && !opt_gamma) {
                xs = {*opt_x};
            } else if (opt_gamma && !opt_x) {
                gammas = {*opt_gamma};
            } else {
                throw CLI::ValidationError("profile", "exactly one of --x or --gamma required");
            }

            std::vector<Row> rows;
            auto push_point = [&](double x_raw, bool from_gamma, double gamma_in) {
                double x, gamma, g;
                bool folded = false;
                if (from_gamma) {
                    if (is_uniform) {
                        x = isoperim::uniform::x_of_gamma_n(gamma_in, dim_n);
                        g = isoperim::uniform::xg_of_gamma_n(gamma_in, dim_n) / x;
                    } else {
                        x = isoperim::logconcave::x_of_gamma(gamma_in);
                        g = isoperim::logconcave::g_of_gamma(gamma_in);
                    }
                    gamma = gamma_in;
                } else {
                    x = fold_x(x_raw);
                    folded = x != x_raw;
                    if (is_uniform) {
                        auto p = isoperim::uniform::profile_g_n(x, dim_n);
                        gamma = p.gamma;
                        g = p.g;
                    } else {
                        auto p = isoperim::logconcave::profile_g(x);
                        gamma = p.gamma;
                        g = p.g;
                    }
                }
                Row row;
                if (is_uniform) row.cells.emplace_back("n", dim_n);
                row.cells.emplace_back("x", x);
                row.cells.emplace_back("gamma", gamma);
                row.cells.emplace_back("G", g);
                row.cells.emplace_back("xG", x * g);
                row.cells.emplace_back("folded", folded);
                rows.push_back(std::move(row));
            };
            for (double x : xs) push_point(x, false, 0.0);
            for (double gamma : gammas) push_point(0.0, true, gamma);
            emit(format == "csv" ? rows_csv(rows) : rows_json(rows), output);
            return 0;
        }

        if (bounds_cmd->parsed()) {
            isoperim::bounds::GridSpec spec;
            if (!grid_raw.empty()) {
                GridArgs g = parse_grid(grid_raw);
                spec = {g.lo, g.hi, g.count, g.log_spaced};
            }
            auto report = isoperim::bounds::bound_gap_report(spec, bounds_n);
            emit(format == "csv" ? isoperim::bounds::report_csv(report)
                                 : isoperim::bounds::report_json(report),
                 output);
            std::cerr << "max_abs_err=" << isoperim::fmt17(report.max_abs_err)
                      << " max_rel_err=" << isoperim::fmt17(report.max_rel_err) << '\n';
            return 0;
        }

        if (verify1d->parsed()) {
            auto logspace = [](double lo, double hi, int count) {
                GridArgs g{lo, hi, count, true};
                return grid_points(g);
            };
            std::vector<double> gammas;
            for (double g : logspace(0.05, 20.0, 21)) {
                gammas.push_back(-g);
                gammas.push_back(g);
            }
            std::vector<double> xs = logspace(0.01, 0.5, 16);
            std::vector<double> ts = logspace(0.005, 0.9, 16);
            auto rows = isoperim::needle::needle_sweep(gammas, xs, ts);
            double min_slack = INFINITY;
            for (const auto& r : rows) min_slack = std::fmin(min_slack, r.slack);
            if (!output.empty())
                emit(format == "csv" ? isoperim::needle::sweep_csv(rows)
                                     : isoperim::needle::sweep_json(rows),
                     output);
            bool ok = min_slack >= -1e-10;
            std::cerr << "instances=" << rows.size()
                      << " min_slack=" << isoperim::fmt17(min_slack)
                      << (ok ? " PASS" : " FAIL") << '\n';
            return ok ? 0 : 1;
        }

        if (verifymc->parsed()) {
            if (samples == 0) throw CLI::ValidationError("--samples", "must be positive");
            auto rows = isoperim::mc::run_matrix(samples, seed);
            emit(format == "csv" ? isoperim::mc::matrix_csv(rows)
                                 : isoperim::mc::matrix_json(rows),
                 output);
            size_t failures = 0;
            for (const auto& r : rows)
                if (!r.res.pass) ++failures;
            std::cerr << "cells=" << rows.size() << " failures=" << failures
                      << (failures == 0 ? " PASS" : " FAIL") << '\n';
            return failures == 0 ? 0 : 1;
        }

        if (sweep->parsed()) {
            auto to_points = [](const std::vector<std::string>& raw,
                               std::vector<double> fallback) {
                return raw.empty() ? fallback : grid_points(parse_grid(raw));
            };
            std::vector<double> gammas = to_points(ggrid_raw, {0.5, 1.0, 2.0, 5.0});
            std::vector<double> xs = to_points(xgrid_raw, {0.1, 0.25, 0.5});
            std::vector<double> ts = to_points(tgrid_raw, {0.05, 0.1, 0.2});
            auto rows = isoperim::needle::needle_sweep(gammas, xs, ts);
            emit(format == "csv" ? isoperim::needle::sweep_csv(rows)
                                 : isoperim::needle::sweep_json(rows),
                 output);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
