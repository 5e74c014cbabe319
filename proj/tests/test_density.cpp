#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "fcraney/density.hpp"
#include "fcraney/errors.hpp"
#include "fcraney/fc_density.hpp"
#include "fcraney/raney_density.hpp"

using fcraney::build_fc_spec;
using fcraney::build_raney_spec;
using fcraney::density_value;
using fcraney::density_value_extended;
using fcraney::DensitySpec;
using fcraney::edge_model_integral;
using fcraney::edge_model_value;
using fcraney::Family;
using fcraney::fc_density_at;
using fcraney::fc_density_closed;
using fcraney::fc_support;
using fcraney::fit_edge_model;
using fcraney::fitted_small_x_slope;
using fcraney::lambda_coeff;
using fcraney::omega_coeff;
using fcraney::raney_coefficients;
using fcraney::raney_density_at;
using fcraney::raney_density_closed;
using fcraney::raney_support;
using fcraney::small_x_exponent;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

void check_params_match(const std::vector<double>& got, std::vector<double> want) {
    const std::vector<double> g = sorted(got);
    std::sort(want.begin(), want.end());
    REQUIRE(g.size() == want.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g[i] == doctest::Approx(want[i]).epsilon(1e-14));
    }
}

/// Interior grid avoiding both the origin and the refused edge band.
std::vector<double> interior_grid(double upper, int points) {
    std::vector<double> xs;
    xs.reserve(points);
    for (int i = 0; i < points; ++i) {
        xs.push_back(upper * (0.01 + 0.98 * i / (points - 1)));
    }
    return xs;
}

}  // namespace

TEST_CASE("support bounds") {
    CHECK(fc_support(1) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(fc_support(2) == doctest::Approx(6.75).epsilon(1e-15));
    CHECK(fc_support(3) == doctest::Approx(256.0 / 27.0).epsilon(1e-15));
    CHECK(fc_support(5) == doctest::Approx(46656.0 / 3125.0).epsilon(1e-15));
    CHECK(raney_support(2) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(raney_support(3) == doctest::Approx(6.75).epsilon(1e-15));
    CHECK(raney_support(4) == doctest::Approx(256.0 / 27.0).epsilon(1e-15));
    CHECK_THROWS_AS(fc_support(0), fcraney::DomainError);
    CHECK_THROWS_AS(raney_support(1), fcraney::DomainError);
}

TEST_CASE("term coefficients with elementary closed forms") {
    CHECK(rel_err(lambda_coeff(1, 1), 1.0 / kPi) < 1e-13);
    CHECK(rel_err(lambda_coeff(1, 2), kSqrt3 / (2.0 * kPi)) < 1e-13);
    CHECK(rel_err(lambda_coeff(2, 2), -kSqrt3 / (6.0 * kPi)) < 1e-13);
    CHECK(rel_err(lambda_coeff(1, 3), 1.0 / (kSqrt2 * kPi)) < 1e-13);
    CHECK(rel_err(lambda_coeff(2, 3), -1.0 / (4.0 * kPi)) < 1e-13);
    CHECK(rel_err(lambda_coeff(3, 3), -kSqrt2 / (64.0 * kPi)) < 1e-13);

    CHECK(rel_err(omega_coeff(2, 2, 2), 1.0 / kPi) < 1e-13);
    CHECK(rel_err(omega_coeff(3, 2, 1), kSqrt3 / (2.0 * kPi)) < 1e-13);
    CHECK(rel_err(omega_coeff(3, 2, 3), -kSqrt3 / (18.0 * kPi)) < 1e-13);
    CHECK(rel_err(omega_coeff(4, 2, 1), 1.0 / kPi) < 1e-13);
    CHECK(rel_err(omega_coeff(4, 2, 2), -kSqrt2 / (4.0 * kPi)) < 1e-13);
    CHECK(rel_err(omega_coeff(4, 2, 4), -kSqrt2 / (128.0 * kPi)) < 1e-13);
    CHECK(rel_err(omega_coeff(4, 3, 1), 1.0 / (kSqrt2 * kPi)) < 1e-13);
    CHECK(rel_err(omega_coeff(4, 3, 3), -3.0 * kSqrt2 / (64.0 * kPi)) < 1e-13);
    CHECK(rel_err(omega_coeff(4, 3, 4), -1.0 / (32.0 * kPi)) < 1e-13);
    CHECK(rel_err(omega_coeff(2, 3, 1), -1.0 / kPi) < 1e-13);
}

TEST_CASE("term coefficients against arbitrary-precision references") {
    CHECK(rel_err(lambda_coeff(1, 4), 0.1870978567577278066426) < 1e-12);
    CHECK(rel_err(lambda_coeff(2, 4), -0.06054613829125255833863) < 1e-12);
    CHECK(rel_err(lambda_coeff(3, 4), -0.01210922765825051166773) < 1e-12);
    CHECK(rel_err(lambda_coeff(4, 4), -0.001496782854061822453141) < 1e-12);
    CHECK(rel_err(lambda_coeff(1, 6), 0.1381094836155074497087) < 1e-12);
    CHECK(rel_err(lambda_coeff(4, 6), -0.004523749165655932059808) < 1e-12);
    CHECK(rel_err(lambda_coeff(6, 6), -0.0001807823311442353717851) < 1e-12);

    CHECK(rel_err(omega_coeff(5, 3, 1), 0.3027306914562627916931) < 1e-12);
    CHECK(rel_err(omega_coeff(5, 3, 2), -0.1122587140546366839856) < 1e-12);
    CHECK(rel_err(omega_coeff(5, 3, 4), -0.002993565708123644906281) < 1e-12);
    CHECK(rel_err(omega_coeff(5, 3, 5), -0.002906214637980122800254) < 1e-12);
    CHECK(rel_err(omega_coeff(5, 4, 5), -0.003390583744310143266963) < 1e-12);
}

TEST_CASE("first Raney column reproduces the Fuss-Catalan coefficients") {
    for (int s = 1; s <= 5; ++s) {
        for (int j = 1; j <= s; ++j) {
            CAPTURE(s);
            CAPTURE(j);
            CHECK(rel_err(omega_coeff(s + 1, 1, j), lambda_coeff(j, s)) < 1e-12);
        }
    }
}

TEST_CASE("structurally vanishing coefficients are exactly zero") {
    for (int p = 2; p <= 5; ++p) {
        for (int r = 1; r <= p; ++r) {
            CAPTURE(p);
            CAPTURE(r);
            CHECK(omega_coeff(p, r, p + 1 - r) == 0.0);
            const auto coeffs = raney_coefficients(p, r);
            REQUIRE(coeffs.vanishing_index.has_value());
            CHECK(*coeffs.vanishing_index == p + 1 - r);
            CHECK(coeffs.omega[static_cast<std::size_t>(p - r)] == 0.0);
        }
        // Quasi-measure row: the last coefficient vanishes instead.
        CHECK(omega_coeff(p, p + 1, p) == 0.0);
        CHECK(!raney_coefficients(p, p + 1).vanishing_index.has_value());
    }
}

TEST_CASE("order-2 spec carries the expected parameter lists") {
    const DensitySpec spec = build_fc_spec(2);
    CHECK(spec.family == Family::fuss_catalan);
    CHECK(spec.s == 2);
    CHECK(spec.support_upper == doctest::Approx(6.75).epsilon(1e-15));
    CHECK(spec.singular_exponent == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(spec.is_probability);
    REQUIRE(spec.terms.size() == 2);

    const auto& first = spec.terms[0];
    CHECK(first.power_exponent == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(first.argument_scale == doctest::Approx(4.0 / 27.0).epsilon(1e-14));
    check_params_match(first.params.upper, {-1.0 / 6.0, 1.0 / 3.0});
    check_params_match(first.params.lower, {2.0 / 3.0});

    const auto& second = spec.terms[1];
    CHECK(second.power_exponent == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    check_params_match(second.params.upper, {1.0 / 6.0, 2.0 / 3.0});
    check_params_match(second.params.lower, {4.0 / 3.0});
}

TEST_CASE("order-3 spec carries the expected parameter lists") {
    const DensitySpec spec = build_fc_spec(3);
    REQUIRE(spec.terms.size() == 3);
    check_params_match(spec.terms[0].params.upper, {-1.0 / 12.0, 0.25, 7.0 / 12.0});
    check_params_match(spec.terms[0].params.lower, {0.5, 0.75});
    check_params_match(spec.terms[1].params.upper, {1.0 / 6.0, 0.5, 5.0 / 6.0});
    check_params_match(spec.terms[1].params.lower, {0.75, 1.25});
    check_params_match(spec.terms[2].params.upper, {5.0 / 12.0, 0.75, 13.0 / 12.0});
    check_params_match(spec.terms[2].params.lower, {1.25, 1.5});
    for (const auto& term : spec.terms) {
        CHECK(term.argument_scale == doctest::Approx(27.0 / 256.0).epsilon(1e-14));
    }
}

TEST_CASE("Raney specs cancel one parameter pair in probability cases") {
    const DensitySpec w32 = build_raney_spec(3, 2);
    CHECK(w32.family == Family::raney);
    CHECK(w32.is_probability);
    CHECK(w32.singular_exponent == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    REQUIRE(w32.terms.size() == 2);  // j = 2 vanishes structurally
    check_params_match(w32.terms[0].params.upper, {-1.0 / 3.0, 1.0 / 6.0});
    check_params_match(w32.terms[0].params.lower, {1.0 / 3.0});
    check_params_match(w32.terms[1].params.upper, {1.0 / 3.0, 5.0 / 6.0});
    check_params_match(w32.terms[1].params.lower, {5.0 / 3.0});

    const DensitySpec w42 = build_raney_spec(4, 2);
    REQUIRE(w42.terms.size() == 3);  // j = 3 vanishes
    check_params_match(w42.terms[0].params.upper, {-1.0 / 6.0, 1.0 / 6.0, 0.5});
    check_params_match(w42.terms[0].params.lower, {0.25, 0.75});
    check_params_match(w42.terms[1].params.upper, {1.0 / 12.0, 5.0 / 12.0, 0.75});
    check_params_match(w42.terms[1].params.lower, {0.5, 1.25});
    check_params_match(w42.terms[2].params.upper, {7.0 / 12.0, 11.0 / 12.0, 1.25});
    check_params_match(w42.terms[2].params.lower, {1.5, 1.75});

    const DensitySpec w43 = build_raney_spec(4, 3);
    REQUIRE(w43.terms.size() == 3);  // j = 2 vanishes
    check_params_match(w43.terms[0].params.upper, {-0.25, 1.0 / 12.0, 5.0 / 12.0});
    check_params_match(w43.terms[0].params.lower, {0.25, 0.5});
    check_params_match(w43.terms[1].params.upper, {0.25, 7.0 / 12.0, 11.0 / 12.0});
    check_params_match(w43.terms[1].params.lower, {0.75, 1.5});
    check_params_match(w43.terms[2].params.upper, {0.5, 5.0 / 6.0, 7.0 / 6.0});
    check_params_match(w43.terms[2].params.lower, {1.25, 1.75});
}

TEST_CASE("quasi-measure spec") {
    const DensitySpec w23 = build_raney_spec(2, 3);
    CHECK_FALSE(w23.is_probability);
    CHECK(w23.singular_exponent == doctest::Approx(0.5).epsilon(1e-14));
    REQUIRE(w23.terms.size() == 1);  // only j = 1 survives
    CHECK(w23.terms[0].coefficient == doctest::Approx(-1.0 / kPi).epsilon(1e-13));

    CHECK_NOTHROW(build_raney_spec(4, 5));
    CHECK_THROWS_AS(build_raney_spec(4, 6), fcraney::ParameterRegionError);
    CHECK_THROWS_AS(build_raney_spec(1, 1), fcraney::DomainError);
    CHECK_THROWS_AS(build_raney_spec(3, 0), fcraney::DomainError);
}

TEST_CASE("density reference values") {
    CHECK(rel_err(fc_density_at(1, 1.0), 0.2756644477108960247557) < 5e-12);
    CHECK(rel_err(fc_density_at(2, 1.0), 0.1789791274880284629571) < 5e-12);
    CHECK(rel_err(fc_density_at(2, 2.0), 0.09386048257216384343376) < 5e-12);
    CHECK(rel_err(fc_density_at(3, 1.0), 0.1368777991756355740265) < 5e-12);
    CHECK(rel_err(fc_density_at(4, 1.0), 0.1121951777003835169467) < 5e-12);
    CHECK(rel_err(fc_density_at(5, 1.0), 0.0956543236011748311885) < 5e-12);
    CHECK(rel_err(fc_density_at(6, 1.0), 0.08367400705208252337136) < 1e-11);

    CHECK(rel_err(raney_density_at(2, 2, 1.0), 0.2756644477108960247557) < 5e-12);
    CHECK(rel_err(raney_density_at(3, 2, 1.0), 0.237096864155388037589) < 5e-12);
    CHECK(rel_err(raney_density_at(3, 2, 4.0), 0.09649416650411554093816) < 5e-12);
    CHECK(rel_err(raney_density_at(4, 2, 1.0), 0.1990575738926880438535) < 5e-12);
    CHECK(rel_err(raney_density_at(4, 3, 1.0), 0.1918025302580420793268) < 5e-12);
    CHECK(rel_err(raney_density_at(5, 3, 1.0), 0.1829800576984809726709) < 5e-12);
    CHECK(rel_err(raney_density_at(5, 5, 2.0), 0.1120202949140331750503) < 5e-12);
}

TEST_CASE("quasi-measure values and sign changes") {
    CHECK(rel_err(raney_density_at(2, 3, 1.5), 0.1541011110153749513912) < 5e-12);
    CHECK(rel_err(raney_density_at(2, 3, 2.0), 1.0 / kPi) < 5e-12);
    // Exact zero crossing at x = 1.
    CHECK(std::abs(raney_density_at(2, 3, 1.0)) < 1e-13);
    CHECK(raney_density_at(2, 3, 0.5) < 0.0);
    CHECK(raney_density_at(2, 3, 3.0) > 0.0);
}

TEST_CASE("closed forms agree with the series representation") {
    auto sup_diff = [](const std::function<double(double)>& a,
                       const std::function<double(double)>& b, double upper) {
        double worst = 0.0;
        for (double x : interior_grid(upper, 200)) {
            worst = std::max(worst, std::abs(a(x) - b(x)));
        }
        return worst;
    };
    CHECK(sup_diff([](double x) { return fc_density_at(1, x); },
                   [](double x) { return fc_density_closed(1, x); },
                   fc_support(1)) < 1e-10);
    CHECK(sup_diff([](double x) { return fc_density_at(2, x); },
                   [](double x) { return fc_density_closed(2, x); },
                   fc_support(2)) < 1e-9);
    CHECK(sup_diff([](double x) { return raney_density_at(2, 2, x); },
                   [](double x) { return raney_density_closed(2, 2, x); },
                   raney_support(2)) < 1e-10);
    CHECK(sup_diff([](double x) { return raney_density_at(3, 2, x); },
                   [](double x) { return raney_density_closed(3, 2, x); },
                   raney_support(3)) < 1e-9);
}

TEST_CASE("closed forms evaluate their formulas") {
    const double x = 1.7;
    CHECK(fc_density_closed(1, x) ==
          doctest::Approx(std::sqrt(4.0 - x) / (2.0 * kPi * std::sqrt(x)))
              .epsilon(1e-14));
    CHECK(raney_density_closed(2, 2, x) ==
          doctest::Approx(std::sqrt(x * (4.0 - x)) / (2.0 * kPi)).epsilon(1e-14));
    // The closed forms remain finite at the very edge of the support.
    CHECK(fc_density_closed(1, 4.0) == 0.0);
    CHECK(raney_density_closed(2, 2, 4.0) == 0.0);
    CHECK_THROWS_AS(fc_density_closed(3, 1.0), fcraney::DomainError);
    CHECK_THROWS_AS(raney_density_closed(4, 2, 1.0), fcraney::DomainError);
}

TEST_CASE("first-column and diagonal density identities") {
    for (int s = 1; s <= 4; ++s) {
        double worst = 0.0;
        for (double x : interior_grid(fc_support(s), 200)) {
            worst = std::max(worst,
                             std::abs(raney_density_at(s + 1, 1, x) - fc_density_at(s, x)));
        }
        CAPTURE(s);
        CHECK(worst < 1e-10);
    }
    for (int p = 2; p <= 5; ++p) {
        double worst = 0.0;
        for (double x : interior_grid(raney_support(p), 200)) {
            worst = std::max(worst,
                             std::abs(raney_density_at(p, p, x) - x * fc_density_at(p - 1, x)));
        }
        CAPTURE(p);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("small-x power-law exponents") {
    CHECK(small_x_exponent(3, 2) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(small_x_exponent(5, 2) == doctest::Approx(-0.6).epsilon(1e-15));
    CHECK(small_x_exponent(4, 4) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(small_x_exponent(3, 4), fcraney::DomainError);

    for (int s = 1; s <= 6; ++s) {
        CAPTURE(s);
        const double fitted = fitted_small_x_slope(build_fc_spec(s));
        CHECK(std::abs(fitted - (-static_cast<double>(s) / (s + 1))) < 1e-3);
    }
    const int pairs[][2] = {{2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2},
                            {4, 3}, {4, 4}, {5, 1}, {5, 2}, {5, 3}, {5, 4}, {5, 5}};
    for (const auto& pr : pairs) {
        CAPTURE(pr[0]);
        CAPTURE(pr[1]);
        const double fitted = fitted_small_x_slope(build_raney_spec(pr[0], pr[1]));
        CHECK(std::abs(fitted - small_x_exponent(pr[0], pr[1])) < 1e-3);
    }
}

TEST_CASE("edge model matches the density just inside the strip") {
    for (const DensitySpec& spec : {build_fc_spec(2), build_fc_spec(4),
                                    build_raney_spec(3, 2), build_raney_spec(4, 4)}) {
        const auto model = fit_edge_model(spec);
        const double upper = spec.support_upper;
        CHECK(model.support_upper == upper);
        CHECK(model.strip_start == doctest::Approx(upper * (1.0 - 1e-3)).epsilon(1e-12));
        // Points inside the strip where the series still converges under its
        // term cap (the cap needs a gap of roughly 4e-4 or more; deeper in,
        // the extrapolated model is the only practical evaluation).
        for (double gap_rel : {9e-4, 7e-4, 5e-4}) {
            const double x = upper * (1.0 - gap_rel);
            CAPTURE(spec.s);
            CAPTURE(spec.p);
            CAPTURE(gap_rel);
            CHECK(rel_err(edge_model_value(model, x), density_value(spec, x)) < 1e-6);
        }
        // The model vanishes at the support edge, as every density here does.
        CHECK(edge_model_value(model, upper) == 0.0);
        // Integral additivity (the antiderivative is exact).
        const double a = model.strip_start;
        const double mid = 0.5 * (a + upper);
        CHECK(edge_model_integral(model, a, mid) + edge_model_integral(model, mid, upper) ==
              doctest::Approx(edge_model_integral(model, a, upper)).epsilon(1e-12));
    }
}

TEST_CASE("extended evaluation flags extrapolated points") {
    const DensitySpec spec = build_fc_spec(2);
    const auto model = fit_edge_model(spec);
    const double upper = spec.support_upper;

    const auto inside = density_value_extended(spec, model, 1.0);
    CHECK_FALSE(inside.extrapolated);
    CHECK(inside.value == density_value(spec, 1.0));

    const auto near_edge = density_value_extended(spec, model, upper * (1.0 - 1e-4));
    CHECK(near_edge.extrapolated);
    CHECK(near_edge.value == edge_model_value(model, upper * (1.0 - 1e-4)));

    const auto at_edge = density_value_extended(spec, model, upper);
    CHECK(at_edge.extrapolated);
    CHECK(at_edge.value == 0.0);
}

TEST_CASE("series evaluation refuses the edge band and the outside") {
    const DensitySpec spec = build_fc_spec(2);
    const double upper = spec.support_upper;
    CHECK_THROWS_AS(density_value(spec, 0.0), fcraney::DomainError);
    CHECK_THROWS_AS(density_value(spec, -1.0), fcraney::DomainError);
    CHECK_THROWS_AS(density_value(spec, upper * 1.01), fcraney::DomainError);
    CHECK_THROWS_AS(density_value(spec, upper), fcraney::EdgeRegionError);
    CHECK_THROWS_AS(density_value(spec, upper * (1.0 - 1e-7)), fcraney::EdgeRegionError);
    CHECK_NOTHROW(density_value(spec, upper * (1.0 - 1e-3)));
}

TEST_CASE("cached evaluators agree with freshly built specs") {
    CHECK(fc_density_at(2, 1.3) == density_value(build_fc_spec(2), 1.3));
    CHECK(raney_density_at(4, 3, 2.1) == density_value(build_raney_spec(4, 3), 2.1));
}
