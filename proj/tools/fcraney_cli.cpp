// Command-line front end: every density, sequence, verification, and
// figure dataset the library computes, emitted as manifest-stamped CSV or
// JSON with deterministic numeric output for equal parameters.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fcraney/combinatorics.hpp"
#include "fcraney/density.hpp"
#include "fcraney/errors.hpp"
#include "fcraney/fc_density.hpp"
#include "fcraney/figures.hpp"
#include "fcraney/gamma.hpp"
#include "fcraney/ginibre.hpp"
#include "fcraney/hypergeometric.hpp"
#include "fcraney/mellin.hpp"
#include "fcraney/moments.hpp"
#include "fcraney/raney_density.hpp"
#include "fcraney/verify.hpp"

namespace {

using nlohmann::ordered_json;

#ifndef FCRANEY_VERSION
#define FCRANEY_VERSION "0.1.0"
#endif

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

/// Shortest round-trip decimal form, locale-independent.
std::string fmt(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

struct GlobalOptions {
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
};

ordered_json make_manifest(const std::string& subcommand,
                           const std::map<std::string, std::string>& parameters,
                           const GlobalOptions& global) {
    ordered_json manifest;
    manifest["subcommand"] = subcommand;
    ordered_json params;
    for (const auto& [key, value] : parameters) params[key] = value;
    manifest["parameters"] = params;
    manifest["tool_version"] = FCRANEY_VERSION;
    if (global.seed_set) manifest["seed"] = global.seed;
    manifest["timestamp"] = iso_timestamp();
    return manifest;
}

/// Writes body(stream) to --out or stdout.
template <typename Body>
int with_output(const GlobalOptions& global, Body body) {
    if (global.out.empty()) return body(std::cout);
    std::ofstream file(global.out);
    if (!file) {
        std::cerr << "cannot open output file: " << global.out << "\n";
        return kExitUsage;
    }
    return body(file);
}

int report_problems(const std::vector<std::string>& problems) {
    for (const auto& problem : problems) std::cerr << "error: " << problem << "\n";
    return kExitUsage;
}

/// Family parameters shared by seq/density/moments/oracle.
struct FamilyArgs {
    std::string family = "fc";
    int s = 0;
    int p = 0;
    int r = 0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--family", family, "fc or raney")
            ->check(CLI::IsMember({"fc", "raney"}));
        cmd->add_option("--s", s, "order (fc family)");
        cmd->add_option("--p", p, "first Raney parameter");
        cmd->add_option("--r", r, "second Raney parameter");
    }

    bool is_fc() const { return family == "fc"; }

    void validate(std::vector<std::string>* problems) const {
        if (is_fc()) {
            if (s < 1) problems->push_back("fc family needs --s >= 1");
            if (p != 0 || r != 0) {
                problems->push_back("--p/--r do not apply to the fc family");
            }
        } else {
            if (p < 2) problems->push_back("raney family needs --p >= 2");
            if (r < 1) problems->push_back("raney family needs --r >= 1");
            if (s != 0) problems->push_back("--s does not apply to the raney family");
        }
    }

    void describe(std::map<std::string, std::string>* params) const {
        (*params)["family"] = family;
        if (is_fc()) {
            (*params)["s"] = std::to_string(s);
        } else {
            (*params)["p"] = std::to_string(p);
            (*params)["r"] = std::to_string(r);
        }
    }

    fcraney::DensitySpec build_spec() const {
        return is_fc() ? fcraney::build_fc_spec(s) : fcraney::build_raney_spec(p, r);
    }
};

// ---------------------------------------------------------------- seq ----

int run_seq(const GlobalOptions& global, const FamilyArgs& family, int n_max) {
    std::vector<std::string> problems;
    family.validate(&problems);
    if (n_max < 0) problems.push_back("--n-max must be non-negative");
    if (!problems.empty()) return report_problems(problems);

    std::map<std::string, std::string> params;
    family.describe(&params);
    params["n_max"] = std::to_string(n_max);
    const ordered_json manifest = make_manifest("seq", params, global);

    fcraney::SequenceSpec spec;
    spec.family = family.is_fc() ? fcraney::Family::fuss_catalan : fcraney::Family::raney;
    spec.s = family.s;
    spec.p = family.p;
    spec.r = family.r;

    return with_output(global, [&](std::ostream& os) {
        if (global.format == "json") {
            ordered_json doc;
            doc["manifest"] = manifest;
            ordered_json rows = ordered_json::array();
            for (int n = 0; n <= n_max; ++n) {
                rows.push_back({{"n", n},
                                {"value", fcraney::sequence_value(spec, n).get_str()}});
            }
            doc["rows"] = rows;
            os << doc.dump(2) << "\n";
        } else {
            os << "# manifest: " << manifest.dump() << "\n";
            os << "n,value\n";
            for (int n = 0; n <= n_max; ++n) {
                os << n << "," << fcraney::sequence_value(spec, n).get_str() << "\n";
            }
        }
        return kExitOk;
    });
}

// ------------------------------------------------------------ density ----

int run_density(const GlobalOptions& global, const FamilyArgs& family, double x_min,
                double x_max, int points, bool x_min_set, bool x_max_set) {
    std::vector<std::string> problems;
    family.validate(&problems);
    if (points < 2) problems.push_back("--points must be at least 2");
    if (!problems.empty()) return report_problems(problems);

    const fcraney::DensitySpec spec = family.build_spec();
    const double upper = spec.support_upper;
    if (!x_min_set) x_min = 0.005 * upper;
    if (!x_max_set) x_max = 0.995 * upper;
    if (!(x_min > 0.0)) problems.push_back("--x-min must be positive");
    if (!(x_max > x_min)) problems.push_back("--x-max must exceed --x-min");
    if (x_max > upper) {
        problems.push_back("--x-max exceeds the support bound " + fmt(upper));
    }
    if (!problems.empty()) return report_problems(problems);

    std::map<std::string, std::string> params;
    family.describe(&params);
    params["x_min"] = fmt(x_min);
    params["x_max"] = fmt(x_max);
    params["points"] = std::to_string(points);
    const ordered_json manifest = make_manifest("density", params, global);

    const fcraney::EdgeModel model = fcraney::fit_edge_model(spec);
    return with_output(global, [&](std::ostream& os) {
        const bool raney = !family.is_fc();
        if (global.format == "json") {
            ordered_json doc;
            doc["manifest"] = manifest;
            if (raney) doc["is_probability"] = spec.is_probability;
            ordered_json rows = ordered_json::array();
            for (int i = 0; i < points; ++i) {
                const double x = x_min + (x_max - x_min) * i / (points - 1);
                const fcraney::DensitySample sample =
                    fcraney::density_value_extended(spec, model, x);
                rows.push_back({{"x", x},
                                {"density", sample.value},
                                {"flag", sample.extrapolated ? "extrapolated" : "ok"}});
            }
            doc["rows"] = rows;
            os << doc.dump(2) << "\n";
        } else {
            os << "# manifest: " << manifest.dump() << "\n";
            os << (raney ? "x,density,flag,is_probability\n" : "x,density,flag\n");
            for (int i = 0; i < points; ++i) {
                const double x = x_min + (x_max - x_min) * i / (points - 1);
                const fcraney::DensitySample sample =
                    fcraney::density_value_extended(spec, model, x);
                os << fmt(x) << "," << fmt(sample.value) << ","
                   << (sample.extrapolated ? "extrapolated" : "ok");
                if (raney) os << "," << (spec.is_probability ? "true" : "false");
                os << "\n";
            }
        }
        return kExitOk;
    });
}

// ------------------------------------------------------------ moments ----

int run_moments(const GlobalOptions& global, const FamilyArgs& family, int n_max,
                double tolerance) {
    std::vector<std::string> problems;
    family.validate(&problems);
    if (n_max < 0) problems.push_back("--n-max must be non-negative");
    if (!(tolerance > 0.0)) problems.push_back("--tol must be positive");
    if (!problems.empty()) return report_problems(problems);

    std::map<std::string, std::string> params;
    family.describe(&params);
    params["n_max"] = std::to_string(n_max);
    params["tol"] = fmt(tolerance);
    const ordered_json manifest = make_manifest("moments", params, global);

    const fcraney::MomentReport report =
        fcraney::verify_moments(family.build_spec(), n_max, tolerance);
    const int exit_code = report.passed ? kExitOk : kExitVerificationFailed;
    return with_output(global, [&](std::ostream& os) {
        if (global.format == "json") {
            ordered_json doc;
            doc["manifest"] = manifest;
            doc["passed"] = report.passed;
            doc["tolerance"] = report.tolerance;
            ordered_json rows = ordered_json::array();
            for (const auto& row : report.rows) {
                rows.push_back({{"n", row.n},
                                {"numeric", row.numeric},
                                {"exact", row.exact},
                                {"rel_error", row.rel_error},
                                {"converged", row.converged}});
            }
            doc["rows"] = rows;
            os << doc.dump(2) << "\n";
        } else {
            os << "# manifest: " << manifest.dump() << "\n";
            os << "n,numeric,exact,rel_error,converged\n";
            for (const auto& row : report.rows) {
                os << row.n << "," << fmt(row.numeric) << "," << fmt(row.exact) << ","
                   << fmt(row.rel_error) << "," << (row.converged ? "true" : "false")
                   << "\n";
            }
            os << "# passed: " << (report.passed ? "true" : "false") << "\n";
        }
        return exit_code;
    });
}

// ------------------------------------------------------------- oracle ----

int run_oracle(const GlobalOptions& global, const FamilyArgs& family, int grid,
               bool compare) {
    std::vector<std::string> problems;
    family.validate(&problems);
    if (grid < 256) problems.push_back("--grid must be at least 256");
    if (!problems.empty()) return report_problems(problems);

    std::map<std::string, std::string> params;
    family.describe(&params);
    params["grid"] = std::to_string(grid);
    params["compare"] = compare ? "true" : "false";
    const ordered_json manifest = make_manifest("oracle", params, global);

    const fcraney::DensitySpec spec = family.build_spec();
    return with_output(global, [&](std::ostream& os) {
        if (compare) {
            const fcraney::OracleComparison comparison =
                fcraney::compare_oracle_to_direct(spec, grid);
            if (global.format == "json") {
                ordered_json doc;
                doc["manifest"] = manifest;
                doc["rel_l1_central"] = comparison.rel_l1_central;
                doc["min_oracle_value"] = comparison.min_oracle_value;
                ordered_json rows = ordered_json::array();
                for (std::size_t i = 0; i < comparison.oracle.grid.size(); ++i) {
                    rows.push_back(
                        {{"x", comparison.oracle.grid[i]},
                         {"oracle", comparison.oracle.values[i]},
                         {"hypergeom", comparison.direct[i]},
                         {"abs_diff", std::abs(comparison.oracle.values[i] -
                                               comparison.direct[i])}});
                }
                doc["rows"] = rows;
                os << doc.dump(2) << "\n";
            } else {
                os << "# manifest: " << manifest.dump() << "\n";
                os << "x,oracle,hypergeom,abs_diff\n";
                for (std::size_t i = 0; i < comparison.oracle.grid.size(); ++i) {
                    os << fmt(comparison.oracle.grid[i]) << ","
                       << fmt(comparison.oracle.values[i]) << ","
                       << fmt(comparison.direct[i]) << ","
                       << fmt(std::abs(comparison.oracle.values[i] -
                                       comparison.direct[i]))
                       << "\n";
                }
                os << "# rel_l1_central: " << fmt(comparison.rel_l1_central) << "\n";
                os << "# min_oracle_value: " << fmt(comparison.min_oracle_value) << "\n";
            }
        } else {
            const fcraney::GridFunction oracle = fcraney::oracle_density(spec, grid);
            if (global.format == "json") {
                ordered_json doc;
                doc["manifest"] = manifest;
                ordered_json rows = ordered_json::array();
                for (std::size_t i = 0; i < oracle.grid.size(); ++i) {
                    rows.push_back({{"x", oracle.grid[i]}, {"oracle", oracle.values[i]}});
                }
                doc["rows"] = rows;
                os << doc.dump(2) << "\n";
            } else {
                os << "# manifest: " << manifest.dump() << "\n";
                os << "x,oracle\n";
                for (std::size_t i = 0; i < oracle.grid.size(); ++i) {
                    os << fmt(oracle.grid[i]) << "," << fmt(oracle.values[i]) << "\n";
                }
            }
        }
        return kExitOk;
    });
}

// ----------------------------------------------------------------- mc ----

int run_mc(const GlobalOptions& global, int s, int n, int samples,
           const std::string& ensemble, int bins, const std::string& dump_path) {
    std::vector<std::string> problems;
    if (s < 1) problems.push_back("--s must be at least 1");
    if (n < 8) problems.push_back("--n (matrix size) must be at least 8");
    if (samples < 1) problems.push_back("--samples must be at least 1");
    if (bins < 10) problems.push_back("--bins must be at least 10");
    if (ensemble != "complex" && ensemble != "real") {
        problems.push_back("--ensemble must be complex or real");
    }
    if (!problems.empty()) return report_problems(problems);

    fcraney::MCConfig config;
    config.s = s;
    config.matrix_size = n;
    config.samples = samples;
    config.ensemble = (ensemble == "real") ? fcraney::Ensemble::real_entries
                                           : fcraney::Ensemble::complex_entries;
    config.seed = global.seed;
    config.bins = bins;

    std::map<std::string, std::string> params;
    params["s"] = std::to_string(s);
    params["n"] = std::to_string(n);
    params["samples"] = std::to_string(samples);
    params["ensemble"] = ensemble;
    params["bins"] = std::to_string(bins);
    const ordered_json manifest = make_manifest("mc", params, global);

    const fcraney::MCRunReport report = fcraney::run_monte_carlo(config, global.threads);

    if (!dump_path.empty()) {
        const fcraney::ProductSamples dump =
            fcraney::product_squared_singular_values(config, global.threads);
        std::ofstream file(dump_path);
        if (!file) {
            std::cerr << "cannot open sample dump file: " << dump_path << "\n";
            return kExitUsage;
        }
        file << "x\n";
        for (double value : dump.values) file << fmt(value) << "\n";
    }

    return with_output(global, [&](std::ostream& os) {
        if (global.format == "json") {
            ordered_json doc;
            doc["manifest"] = manifest;
            doc["config"] = {{"s", config.s},
                             {"matrix_size", config.matrix_size},
                             {"samples", config.samples},
                             {"ensemble", ensemble},
                             {"seed", config.seed},
                             {"bins", config.bins}};
            doc["empirical_moments"] = report.empirical_moments;
            doc["moment_std_errors"] = report.moment_std_errors;
            doc["bin_edges"] = report.bin_edges;
            doc["empirical_mass"] = report.empirical_mass;
            doc["theory_mass"] = report.theory_mass;
            doc["l1_distance"] = report.l1_distance;
            doc["ks_distance"] = report.ks_distance;
            doc["negative_count"] = report.negative_count;
            doc["failed_samples"] = report.failed_samples;
            os << doc.dump(2) << "\n";
        } else {
            os << "# manifest: " << manifest.dump() << "\n";
            os << "bin_lo,bin_hi,empirical_mass,theory_mass\n";
            for (std::size_t j = 0; j + 1 < report.bin_edges.size(); ++j) {
                os << fmt(report.bin_edges[j]) << "," << fmt(report.bin_edges[j + 1])
                   << "," << fmt(report.empirical_mass[j]) << ","
                   << fmt(report.theory_mass[j]) << "\n";
            }
            os << fmt(report.bin_edges.back()) << ",inf,"
               << fmt(report.empirical_mass.back()) << ","
               << fmt(report.theory_mass.back()) << "\n";
            os << "# l1_distance: " << fmt(report.l1_distance) << "\n";
            os << "# ks_distance: " << fmt(report.ks_distance) << "\n";
        }
        return kExitOk;
    });
}

// ------------------------------------------------------------- figure ----

int run_figure(const GlobalOptions& global, const std::string& figure_id, int points) {
    const fcraney::FigureData data = fcraney::figure_reproduce(figure_id, points);
    std::map<std::string, std::string> params;
    params["id"] = figure_id;
    params["points"] = std::to_string(points);
    const ordered_json manifest = make_manifest("figure", params, global);

    return with_output(global, [&](std::ostream& os) {
        if (global.format == "json") {
            ordered_json doc;
            doc["manifest"] = manifest;
            ordered_json curves = ordered_json::array();
            for (const auto& curve : data.curves) {
                ordered_json entry;
                entry["label"] = curve.label;
                entry["family"] =
                    curve.family == fcraney::Family::fuss_catalan ? "fc" : "raney";
                entry["s"] = curve.s;
                entry["p"] = curve.p;
                entry["r"] = curve.r;
                entry["quasi"] = curve.quasi;
                entry["x"] = curve.x;
                entry["density"] = curve.density;
                std::vector<std::string> flags;
                flags.reserve(curve.extrapolated.size());
                for (bool e : curve.extrapolated) flags.push_back(e ? "extrapolated" : "ok");
                entry["flag"] = flags;
                curves.push_back(entry);
            }
            doc["curves"] = curves;
            os << doc.dump(2) << "\n";
        } else {
            os << "# manifest: " << manifest.dump() << "\n";
            os << "label,family,s,p,r,quasi,x,density,flag\n";
            for (const auto& curve : data.curves) {
                const char* family_name =
                    curve.family == fcraney::Family::fuss_catalan ? "fc" : "raney";
                for (std::size_t i = 0; i < curve.x.size(); ++i) {
                    os << curve.label << "," << family_name << "," << curve.s << ","
                       << curve.p << "," << curve.r << ","
                       << (curve.quasi ? "true" : "false") << "," << fmt(curve.x[i])
                       << "," << fmt(curve.density[i]) << ","
                       << (curve.extrapolated[i] ? "extrapolated" : "ok") << "\n";
                }
            }
        }
        return kExitOk;
    });
}

// ----------------------------------------------------------- selftest ----

int run_selftest(const GlobalOptions& global) {
    struct Line {
        std::string name;
        double achieved;
        double bound;
        bool passed;
    };
    std::vector<Line> lines;

    // Gauss multiplication identity over a seeded random sample.
    {
        std::mt19937_64 rng(global.seed_set ? global.seed : 0xFC2024ULL);
        std::uniform_real_distribution<double> z_dist(0.05, 50.0);
        std::uniform_int_distribution<int> k_dist(1, 8);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            worst = std::max(worst,
                             fcraney::verify_gauss_legendre(z_dist(rng), k_dist(rng)));
        }
        lines.push_back({"gauss-multiplication", worst, 1e-11, worst < 1e-11});
    }
    // Binomial-series identity 1F0(a; z) = (1 - z)^{-a}.
    {
        double worst = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double a = -2.0 + 4.0 * i / 20.0;
            for (int j = 0; j <= 18; ++j) {
                const double z = 0.9 * j / 18.0;
                const double series = fcraney::hypergeometric_pfq({{a}, {}}, z);
                const double closed = std::pow(1.0 - z, -a);
                worst = std::max(worst, std::abs(series - closed) /
                                            std::max(1.0, std::abs(closed)));
            }
        }
        lines.push_back({"binomial-series", worst, 1e-12, worst < 1e-12});
    }
    // Upper-parameter exchange symmetry of 2F1.
    {
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            const double a = -1.5 + 0.17 * i;
            const double b = 0.3 + 0.11 * i;
            const double c = 1.1 + 0.07 * i;
            const double z = 0.03 * i;
            const double lhs = fcraney::hypergeometric_pfq({{a, b}, {c}}, z);
            const double rhs = fcraney::hypergeometric_pfq({{b, a}, {c}}, z);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        lines.push_back({"upper-exchange-symmetry", worst, 1e-14, worst < 1e-14});
    }

    bool all = true;
    for (const auto& line : lines) all = all && line.passed;
    std::map<std::string, std::string> params;
    const ordered_json manifest = make_manifest("selftest", params, global);
    const int exit_code = all ? kExitOk : kExitVerificationFailed;
    return with_output(global, [&](std::ostream& os) {
        if (global.format == "json") {
            ordered_json doc;
            doc["manifest"] = manifest;
            doc["passed"] = all;
            ordered_json rows = ordered_json::array();
            for (const auto& line : lines) {
                rows.push_back({{"name", line.name},
                                {"achieved", line.achieved},
                                {"bound", line.bound},
                                {"passed", line.passed}});
            }
            doc["checks"] = rows;
            os << doc.dump(2) << "\n";
        } else {
            os << "# manifest: " << manifest.dump() << "\n";
            os << "name,achieved,bound,passed\n";
            for (const auto& line : lines) {
                os << line.name << "," << fmt(line.achieved) << "," << fmt(line.bound)
                   << "," << (line.passed ? "true" : "false") << "\n";
            }
        }
        return exit_code;
    });
}

// ---------------------------------------------------------- verify-all ----

int run_verify_all(const GlobalOptions& global) {
    fcraney::VerificationOptions options;
    if (global.seed_set) options.mc_seed = global.seed;
    options.threads = global.threads;
    const fcraney::VerificationSummary summary = fcraney::full_verification_suite(options);

    std::map<std::string, std::string> params;
    params["mc_seed"] = std::to_string(options.mc_seed);
    const ordered_json manifest = make_manifest("verify-all", params, global);
    const int exit_code = summary.all_passed ? kExitOk : kExitVerificationFailed;
    return with_output(global, [&](std::ostream& os) {
        if (global.format == "json") {
            ordered_json doc;
            doc["manifest"] = manifest;
            doc["all_passed"] = summary.all_passed;
            ordered_json rows = ordered_json::array();
            for (const auto& check : summary.checks) {
                rows.push_back({{"name", check.name},
                                {"passed", check.passed},
                                {"achieved", check.achieved},
                                {"bound", check.bound},
                                {"detail", check.detail}});
            }
            doc["checks"] = rows;
            os << doc.dump(2) << "\n";
        } else {
            os << "# manifest: " << manifest.dump() << "\n";
            os << "name,passed,achieved,bound,detail\n";
            for (const auto& check : summary.checks) {
                os << check.name << "," << (check.passed ? "true" : "false") << ","
                   << fmt(check.achieved) << "," << fmt(check.bound) << ","
                   << check.detail << "\n";
            }
            os << "# all_passed: " << (summary.all_passed ? "true" : "false") << "\n";
        }
        return exit_code;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuss-Catalan and Raney density toolkit"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", global.out, "output path (default stdout)");
    CLI::Option* seed_option =
        app.add_option("--seed", global.seed, "64-bit seed where applicable");
    app.add_option("--threads", global.threads, "worker threads (0 = auto)");

    FamilyArgs seq_family;
    int seq_n_max = 10;
    CLI::App* seq = app.add_subcommand("seq", "exact integer sequences");
    seq_family.add_to(seq);
    seq->add_option("--n-max", seq_n_max, "largest index");

    FamilyArgs density_family;
    double density_x_min = 0.0, density_x_max = 0.0;
    int density_points = 400;
    CLI::App* density = app.add_subcommand("density", "density values on a grid");
    density_family.add_to(density);
    CLI::Option* x_min_option = density->add_option("--x-min", density_x_min, "grid start");
    CLI::Option* x_max_option = density->add_option("--x-max", density_x_max, "grid end");
    density->add_option("--points", density_points, "grid size");

    FamilyArgs moments_family;
    int moments_n_max = 8;
    double moments_tol = 1e-8;
    CLI::App* moments = app.add_subcommand("moments", "quadrature vs exact moments");
    moments_family.add_to(moments);
    moments->add_option("--n-max", moments_n_max, "largest moment order");
    moments->add_option("--tol", moments_tol, "relative tolerance");

    FamilyArgs oracle_family;
    int oracle_grid = 1024;
    bool oracle_compare = false;
    CLI::App* oracle = app.add_subcommand("oracle", "convolution-oracle density");
    oracle_family.add_to(oracle);
    oracle->add_option("--grid", oracle_grid, "output grid size");
    oracle->add_flag("--compare", oracle_compare,
                     "also evaluate the hypergeometric density");

    int mc_s = 1, mc_n = 256, mc_samples = 100, mc_bins = 40;
    std::string mc_ensemble = "complex", mc_dump;
    CLI::App* mc = app.add_subcommand("mc", "product-matrix Monte Carlo");
    mc->add_option("--s", mc_s, "number of factors");
    mc->add_option("--n", mc_n, "matrix size");
    mc->add_option("--samples", mc_samples, "independent product matrices");
    mc->add_option("--ensemble", mc_ensemble, "complex or real")
        ->check(CLI::IsMember({"complex", "real"}));
    mc->add_option("--bins", mc_bins, "histogram bins");
    mc->add_option("--dump-samples", mc_dump, "CSV path for raw rescaled values");

    std::string figure_id;
    int figure_points = 480;
    CLI::App* figure = app.add_subcommand("figure", "figure datasets");
    figure->add_option("--id", figure_id, "fig1..fig6")->required();
    figure->add_option("--points", figure_points, "per-curve grid size");

    CLI::App* selftest = app.add_subcommand("selftest", "special-function identities");
    CLI::App* verify_all =
        app.add_subcommand("verify-all", "every cross-check the library offers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return kExitUsage;
    }
    global.seed_set = seed_option->count() > 0;

    try {
        if (seq->parsed()) return run_seq(global, seq_family, seq_n_max);
        if (density->parsed()) {
            return run_density(global, density_family, density_x_min, density_x_max,
                               density_points, x_min_option->count() > 0,
                               x_max_option->count() > 0);
        }
        if (moments->parsed()) {
            return run_moments(global, moments_family, moments_n_max, moments_tol);
        }
        if (oracle->parsed()) {
            return run_oracle(global, oracle_family, oracle_grid, oracle_compare);
        }
        if (mc->parsed()) {
            return run_mc(global, mc_s, mc_n, mc_samples, mc_ensemble, mc_bins, mc_dump);
        }
        if (figure->parsed()) return run_figure(global, figure_id, figure_points);
        if (selftest->parsed()) return run_selftest(global);
        if (verify_all->parsed()) return run_verify_all(global);
    } catch (const fcraney::ConvergenceError& error) {
        std::cerr << "convergence failure: " << error.what() << "\n";
        return kExitNoConvergence;
    } catch (const fcraney::Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
