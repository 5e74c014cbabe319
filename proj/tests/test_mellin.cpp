#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fcraney/errors.hpp"
#include "fcraney/fc_density.hpp"
#include "fcraney/mellin.hpp"
#include "fcraney/raney_density.hpp"

using fcraney::beta_factor_at;
using fcraney::beta_factor_mass;
using fcraney::BetaFactor;
using fcraney::build_fc_spec;
using fcraney::build_raney_spec;
using fcraney::compare_oracle_to_direct;
using fcraney::factor_list;
using fcraney::fc_density_closed;
using fcraney::GridFunction;
using fcraney::mellin_convolve;
using fcraney::mellin_from_beta;
using fcraney::mellin_from_samples;
using fcraney::mellin_mass;
using fcraney::MellinDensity;
using fcraney::oracle_density;
using fcraney::raney_density_closed;
using fcraney::sample_mellin;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

/// Worst relative deviation between oracle grid values and reference(x),
/// restricted to the central band [lo, hi] in units of the support bound.
double worst_central_rel(const GridFunction& oracle, double (*reference)(int, double),
                         int param, double lo, double hi) {
    double worst = 0.0;
    for (std::size_t i = 0; i < oracle.grid.size(); ++i) {
        const double x = oracle.grid[i];
        if (x < lo * oracle.upper || x > hi * oracle.upper) continue;
        worst = std::max(worst, rel_err(oracle.values[i], reference(param, x)));
    }
    return worst;
}

}  // namespace

TEST_CASE("elementary factor density and mass") {
    const BetaFactor factor{-0.5, 1.0};
    CHECK(rel_err(beta_factor_at(factor, 0.25), 1.954410047611679686346) < 1e-13);
    CHECK(rel_err(beta_factor_mass(factor), std::sqrt(3.14159265358979323846)) < 1e-13);
    // b = 0 factors appear as the leading Raney factor.
    const BetaFactor leading{-0.75, 0.0};
    CHECK(beta_factor_at(leading, 0.5) > 0.0);
    CHECK(beta_factor_mass(leading) > 0.0);
}

TEST_CASE("factor decompositions have the right shape") {
    for (int s = 1; s <= 5; ++s) {
        CAPTURE(s);
        CHECK(factor_list(build_fc_spec(s)).size() == static_cast<std::size_t>(s));
    }
    CHECK(factor_list(build_raney_spec(4, 2)).size() == 4);
    CHECK(factor_list(build_raney_spec(5, 2)).size() == 5);
    CHECK(factor_list(build_raney_spec(4, 4)).size() == 3);
    CHECK(factor_list(build_raney_spec(3, 3)).size() == 2);
    // Above the diagonal no decomposition into non-negative factors exists.
    CHECK_THROWS_AS(factor_list(build_raney_spec(2, 3)), fcraney::ParameterRegionError);
}

TEST_CASE("order-2 factor exponents") {
    auto factors = factor_list(build_fc_spec(2));
    REQUIRE(factors.size() == 2);
    std::sort(factors.begin(), factors.end(),
              [](const BetaFactor& lhs, const BetaFactor& rhs) { return lhs.a < rhs.a; });
    CHECK(factors[0].a == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(factors[0].b == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(factors[1].a == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(factors[1].b == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("grid representation reproduces the factor it was built from") {
    const BetaFactor factor{-0.5, 1.0};
    const MellinDensity repr = mellin_from_beta(factor);
    // Bulk: stored values are exact evaluations.
    for (double u : {0.5, 1.0, 3.0, 9.0, 15.0}) {
        CAPTURE(u);
        CHECK(rel_err(repr.value_at_u(u), beta_factor_at(factor, std::exp(-u))) < 1e-12);
    }
    // Tail region beyond the grid: analytic power-law continuation.
    CHECK(rel_err(repr.value_at_u(19.0), beta_factor_at(factor, std::exp(-19.0))) < 1e-6);
}

TEST_CASE("numeric mass matches the closed-form factor mass") {
    for (const BetaFactor factor :
         {BetaFactor{-0.5, 1.0}, BetaFactor{-2.0 / 3.0, 0.0}, BetaFactor{-0.25, 0.5},
          BetaFactor{0.2, 1.4}, BetaFactor{-0.75, 0.0}}) {
        CAPTURE(factor.a);
        CAPTURE(factor.b);
        CHECK(rel_err(mellin_mass(mellin_from_beta(factor)), beta_factor_mass(factor)) <
              1e-9);
    }
}

TEST_CASE("convolution mass multiplies factor masses") {
    const BetaFactor fa{-0.5, 1.0};
    const BetaFactor fb{-1.0 / 3.0, 0.5};
    const MellinDensity conv = mellin_convolve(mellin_from_beta(fa), mellin_from_beta(fb));
    CHECK(rel_err(mellin_mass(conv), beta_factor_mass(fa) * beta_factor_mass(fb)) < 1e-6);
}

TEST_CASE("oracle reconstructs the closed-form densities") {
    auto fc_closed = [](int s, double x) { return fc_density_closed(s, x); };
    const GridFunction mp = oracle_density(build_fc_spec(1), 512);
    CHECK(worst_central_rel(mp, fc_closed, 1, 0.05, 0.95) < 1e-4);
    const GridFunction order2 = oracle_density(build_fc_spec(2), 512);
    CHECK(worst_central_rel(order2, fc_closed, 2, 0.05, 0.95) < 1e-4);

    const GridFunction semicircle = oracle_density(build_raney_spec(2, 2), 512);
    double worst = 0.0;
    for (std::size_t i = 0; i < semicircle.grid.size(); ++i) {
        const double x = semicircle.grid[i];
        if (x < 0.05 * 4.0 || x > 0.95 * 4.0) continue;
        worst = std::max(worst, rel_err(semicircle.values[i],
                                        raney_density_closed(2, 2, x)));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("oracle grids are increasing and inside the support") {
    const GridFunction oracle = oracle_density(build_raney_spec(3, 2), 256);
    CHECK(oracle.grid.size() == 256);
    CHECK(oracle.values.size() == 256);
    CHECK(oracle.upper == doctest::Approx(6.75).epsilon(1e-14));
    for (std::size_t i = 0; i < oracle.grid.size(); ++i) {
        CHECK(oracle.grid[i] > 0.0);
        CHECK(oracle.grid[i] < oracle.upper);
        if (i > 0) CHECK(oracle.grid[i] > oracle.grid[i - 1]);
    }
}

TEST_CASE("mass telescoping holds for the steepest singularity") {
    // (4, 1) has the most singular leading factor the acceptance set uses;
    // completing without ConvergenceError means every intermediate mass
    // stayed within the telescoping tolerance.
    CHECK_NOTHROW(oracle_density(build_raney_spec(4, 1), 256));
}

TEST_CASE("oracle-to-series comparison") {
    const auto comparison = compare_oracle_to_direct(build_fc_spec(2), 512);
    CHECK(comparison.rel_l1_central < 1e-3);
    CHECK(comparison.min_oracle_value >= 0.0);
    CHECK(comparison.direct.size() == comparison.oracle.grid.size());
}

TEST_CASE("sampling bounds") {
    const MellinDensity repr = mellin_from_beta(BetaFactor{-0.5, 1.0});
    CHECK_THROWS_AS(sample_mellin(repr, 63), fcraney::DomainError);
    const GridFunction sampled = sample_mellin(repr, 64);
    CHECK(sampled.grid.size() == 64);
    for (std::size_t i = 1; i < sampled.grid.size(); ++i) {
        CHECK(sampled.grid[i] > sampled.grid[i - 1]);
    }
    CHECK(sampled.grid.front() > 0.0);
    CHECK(sampled.grid.back() < 1.0);
}

TEST_CASE("sample-based construction validates its input") {
    const MellinDensity repr = mellin_from_beta(BetaFactor{-0.5, 1.0});
    GridFunction good = sample_mellin(repr, 256);

    GridFunction wrong_upper = good;
    wrong_upper.upper = 2.0;
    CHECK_THROWS_AS(mellin_from_samples(wrong_upper), fcraney::DomainError);

    GridFunction too_few = good;
    too_few.grid.resize(32);
    too_few.values.resize(32);
    CHECK_THROWS_AS(mellin_from_samples(too_few), fcraney::DomainError);

    GridFunction negative = good;
    negative.values[100] = -0.25;
    CHECK_THROWS_AS(mellin_from_samples(negative), fcraney::DomainError);

    GridFunction unordered = good;
    std::swap(unordered.grid[10], unordered.grid[11]);
    CHECK_THROWS_AS(mellin_from_samples(unordered), fcraney::DomainError);

    CHECK_NOTHROW(mellin_from_samples(good));
}

TEST_CASE("sampled-function convolution agrees with the exact path") {
    const BetaFactor fa{-0.5, 1.0};
    const BetaFactor fb{-1.0 / 3.0, 0.5};
    const GridFunction approx =
        mellin_convolve(sample_mellin(mellin_from_beta(fa), 1024),
                        sample_mellin(mellin_from_beta(fb), 1024));
    const GridFunction exact =
        sample_mellin(mellin_convolve(mellin_from_beta(fa), mellin_from_beta(fb)), 1024);
    REQUIRE(approx.grid.size() == exact.grid.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < approx.grid.size(); ++i) {
        const double x = approx.grid[i];
        if (x < 0.05 || x > 0.95) continue;  // central band of (0, 1)
        worst = std::max(worst, rel_err(approx.values[i], exact.values[i]));
    }
    CHECK(worst < 1e-3);
}
