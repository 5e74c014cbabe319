#include "fcraney/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fcraney/combinatorics.hpp"
#include "fcraney/errors.hpp"
#include "fcraney/fc_density.hpp"
#include "fcraney/ginibre.hpp"
#include "fcraney/mellin.hpp"
#include "fcraney/moments.hpp"
#include "fcraney/raney_density.hpp"

namespace fcraney {

namespace {

/// Runs body() and turns any library exception into a failed check rather
/// than aborting the sweep.
template <typename Body>
CheckResult guarded_check(const std::string& name, Body body) {
    CheckResult result;
    result.name = name;
    try {
        body(&result);
    } catch (const Error& error) {
        result.passed = false;
        result.detail = error.what();
    }
    return result;
}

double closed_form_sup(const DensitySpec& spec, double (*closed)(int, double), int first,
                       int second, bool raney) {
    double sup = 0.0;
    const double upper = spec.support_upper;
    for (int i = 0; i < 200; ++i) {
        const double x = upper * (0.01 + 0.98 * i / 199.0);
        const double direct = density_value(spec, x);
        const double reference =
            raney ? closed(first * 10 + second, x) : closed(first, x);
        sup = std::max(sup, std::abs(direct - reference));
    }
    return sup;
}

double raney_closed_dispatch(int packed, double x) {
    return raney_density_closed(packed / 10, packed % 10, x);
}

double fc_closed_dispatch(int s, double x) { return fc_density_closed(s, x); }

}  // namespace

VerificationSummary full_verification_suite(const VerificationOptions& options) {
    VerificationSummary summary;
    auto add = [&](CheckResult check) { summary.checks.push_back(std::move(check)); };

    // Exact integer-sequence relations between the two families.
    add(guarded_check("sequence-relations", [&](CheckResult* check) {
        check->bound = 0.0;
        bool all = true;
        for (int p = 2; p <= 6; ++p) {
            const RelationReport report = check_raney_relations(p, 12);
            if (!report.all_equal) {
                all = false;
                check->detail += "relations broken at p=" + std::to_string(p) + "; ";
            }
        }
        check->passed = all;
    }));

    add(guarded_check("exact-low-moments", [&](CheckResult* check) {
        check->bound = 0.0;
        check->passed = exact_low_moment_identities(6);
        if (!check->passed) check->detail = "integer mean/second-moment identity broken";
    }));

    // Moment verification across both families; the corruption hook
    // perturbs the leading order-2 coefficient so a broken table must
    // surface here.
    for (int s = 1; s <= 6; ++s) {
        add(guarded_check("moments-fc-s" + std::to_string(s), [&](CheckResult* check) {
            check->bound = 1e-8;
            DensitySpec spec = build_fc_spec(s);
            if (s == 2 && options.lambda_corruption != 0.0) {
                spec.terms[0].coefficient += options.lambda_corruption;
            }
            const MomentReport report = verify_moments(spec, 8, check->bound);
            check->passed = report.passed;
            for (const MomentRow& row : report.rows) {
                if (row.converged) check->achieved = std::max(check->achieved, row.rel_error);
            }
        }));
    }
    for (int p = 2; p <= 5; ++p) {
        for (int r = 1; r <= p; ++r) {
            const std::string name =
                "moments-raney-p" + std::to_string(p) + "-r" + std::to_string(r);
            add(guarded_check(name, [&](CheckResult* check) {
                check->bound = 1e-7;
                const MomentReport report =
                    verify_moments(build_raney_spec(p, r), 6, check->bound);
                check->passed = report.passed;
                for (const MomentRow& row : report.rows) {
                    if (row.converged) {
                        check->achieved = std::max(check->achieved, row.rel_error);
                    }
                }
            }));
        }
    }

    // Convolution-oracle comparisons: independent reconstruction within
    // 1e-3 relative L1 over the central 90% of the support, non-negative
    // everywhere.
    auto oracle_check = [&](const DensitySpec& spec, const std::string& name) {
        add(guarded_check(name, [&](CheckResult* check) {
            check->bound = 1e-3;
            const OracleComparison comparison = compare_oracle_to_direct(spec, 1024);
            check->achieved = comparison.rel_l1_central;
            check->passed = comparison.rel_l1_central < check->bound &&
                            comparison.min_oracle_value >= 0.0;
            if (comparison.min_oracle_value < 0.0) {
                check->detail = "oracle produced a negative density value";
            }
        }));
    };
    for (int s = 1; s <= 4; ++s) oracle_check(build_fc_spec(s), "oracle-fc-s" + std::to_string(s));
    for (int p = 2; p <= 4; ++p) {
        for (int r = 1; r <= p; ++r) {
            oracle_check(build_raney_spec(p, r),
                         "oracle-raney-p" + std::to_string(p) + "-r" + std::to_string(r));
        }
    }

    // Closed-form equivalences.
    add(guarded_check("closed-form-fc-s1", [&](CheckResult* check) {
        check->bound = 1e-10;
        check->achieved = closed_form_sup(build_fc_spec(1), fc_closed_dispatch, 1, 0, false);
        check->passed = check->achieved < check->bound;
    }));
    add(guarded_check("closed-form-fc-s2", [&](CheckResult* check) {
        check->bound = 1e-9;
        check->achieved = closed_form_sup(build_fc_spec(2), fc_closed_dispatch, 2, 0, false);
        check->passed = check->achieved < check->bound;
    }));
    add(guarded_check("closed-form-raney-p2-r2", [&](CheckResult* check) {
        check->bound = 1e-10;
        check->achieved =
            closed_form_sup(build_raney_spec(2, 2), raney_closed_dispatch, 2, 2, true);
        check->passed = check->achieved < check->bound;
    }));
    add(guarded_check("closed-form-raney-p3-r2", [&](CheckResult* check) {
        check->bound = 1e-9;
        check->achieved =
            closed_form_sup(build_raney_spec(3, 2), raney_closed_dispatch, 3, 2, true);
        check->passed = check->achieved < check->bound;
    }));

    // Short seeded Monte-Carlo run plus a replay that must be bit-identical.
    MCConfig config;
    config.s = 1;
    config.matrix_size = options.mc_matrix_size;
    config.samples = options.mc_samples;
    config.seed = options.mc_seed;
    add(guarded_check("mc-short-run", [&](CheckResult* check) {
        check->bound = 0.1;
        const MCRunReport report = run_monte_carlo(config, options.threads);
        check->achieved = report.l1_distance;
        check->passed = report.l1_distance < check->bound && report.negative_count == 0 &&
                        report.failed_samples == 0;
    }));
    add(guarded_check("mc-determinism", [&](CheckResult* check) {
        check->bound = 0.0;
        const MCRunReport first = run_monte_carlo(config, options.threads);
        const MCRunReport second = run_monte_carlo(config, options.threads);
        bool identical = first.l1_distance == second.l1_distance &&
                         first.ks_distance == second.ks_distance &&
                         first.empirical_moments == second.empirical_moments &&
                         first.empirical_mass == second.empirical_mass;
        check->achieved = identical ? 0.0 : 1.0;
        check->passed = identical;
        if (!identical) check->detail = "seeded rerun differed";
    }));

    summary.all_passed = std::all_of(summary.checks.begin(), summary.checks.end(),
                                     [](const CheckResult& c) { return c.passed; });
    return summary;
}

}  // namespace fcraney
