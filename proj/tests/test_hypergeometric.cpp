#include <cmath>
#include <vector>

#include "doctest.h"
#include "fcraney/gamma.hpp"
#include "fcraney/hypergeometric.hpp"

using fcraney::HyperGeomParams;
using fcraney::hypergeometric_pfq;
using fcraney::pochhammer;

TEST_CASE("reference values from arbitrary-precision evaluation") {
    // 2F1([-1/6, 1/3], [2/3]; 4/27)
    CHECK(hypergeometric_pfq({{-1.0 / 6.0, 1.0 / 3.0}, {2.0 / 3.0}}, 4.0 / 27.0) ==
          doctest::Approx(0.9869912062713540632473).epsilon(1e-14));
    // 2F1([0.3, 1.7], [2.2]; 0.6)
    CHECK(hypergeometric_pfq({{0.3, 1.7}, {2.2}}, 0.6) ==
          doctest::Approx(1.219660262655590059185).epsilon(1e-14));
    // 3F2([-1/12, 1/4, 7/12], [1/2, 3/4]; 0.9)
    CHECK(hypergeometric_pfq({{-1.0 / 12.0, 0.25, 7.0 / 12.0}, {0.5, 0.75}}, 0.9) ==
          doctest::Approx(0.9483763164976743181323).epsilon(1e-13));
    // 2F2([0.5, 1.25], [1.5, 2.75]; -3), an alternating series.
    CHECK(hypergeometric_pfq({{0.5, 1.25}, {1.5, 2.75}}, -3.0) ==
          doctest::Approx(0.7080480761004422722297).epsilon(1e-13));
    // 1F1([0.5], [1.75]; 2.5)
    CHECK(hypergeometric_pfq({{0.5}, {1.75}}, 2.5) ==
          doctest::Approx(2.668469970025367788877).epsilon(1e-14));
    // Slow near-edge case z = 1 - 1e-3 still converges under the term cap.
    CHECK(hypergeometric_pfq({{-1.0 / 6.0, 1.0 / 3.0}, {2.0 / 3.0}}, 1.0 - 1e-3) ==
          doctest::Approx(0.8019801925759655054944).epsilon(1e-12));
}

TEST_CASE("series equals the explicit Pochhammer sum") {
    const HyperGeomParams params{{0.4, -0.7, 1.3}, {0.9, 2.1}};
    const double z = 0.1;
    double sum = 0.0;
    for (int n = 30; n >= 0; --n) {  // backwards so small terms add first
        double term = std::pow(z, n);
        for (double a : params.upper) term *= pochhammer(a, n);
        for (double b : params.lower) term /= pochhammer(b, n);
        for (int k = 2; k <= n; ++k) term /= k;
        sum += term;
    }
    CHECK(hypergeometric_pfq(params, z) == doctest::Approx(sum).epsilon(1e-13));
}

TEST_CASE("upper parameter order does not matter") {
    for (int i = 0; i < 25; ++i) {
        const double a = -1.5 + 0.17 * i;
        const double b = 0.3 + 0.11 * i;
        const double c = 1.1 + 0.07 * i;
        const double z = 0.03 * i;
        CAPTURE(i);
        const double lhs = hypergeometric_pfq({{a, b}, {c}}, z);
        const double rhs = hypergeometric_pfq({{b, a}, {c}}, z);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
}

TEST_CASE("binomial series 1F0(a; z) = (1 - z)^{-a}") {
    for (int i = 0; i <= 20; ++i) {
        const double a = -2.0 + 4.0 * i / 20.0;
        for (int j = 0; j <= 18; ++j) {
            const double z = 0.9 * j / 18.0;
            CAPTURE(a);
            CAPTURE(z);
            CHECK(hypergeometric_pfq({{a}, {}}, z) ==
                  doctest::Approx(std::pow(1.0 - z, -a)).epsilon(1e-12));
        }
    }
}

TEST_CASE("terminating series lift the argument restrictions") {
    // Upper parameter -2 cuts the series to three terms; |z| > 1 is fine.
    const HyperGeomParams params{{-2.0, 1.5}, {2.5}};
    const double z = 3.0;
    const double expected = 1.0 + (-2.0 * 1.5 / 2.5) * z +
                            (pochhammer(-2.0, 2) * pochhammer(1.5, 2) /
                             pochhammer(2.5, 2) / 2.0) *
                                z * z;
    CHECK(hypergeometric_pfq(params, z) == doctest::Approx(expected).epsilon(1e-14));
    // Terminating at z = 1 exactly is also allowed.
    CHECK_NOTHROW(hypergeometric_pfq({{-3.0, 0.5}, {1.25}}, 1.0));
}

TEST_CASE("domain refusals") {
    // Non-positive-integer lower parameter is a pole of every term ratio.
    CHECK_THROWS_AS(hypergeometric_pfq({{0.5}, {0.0}}, 0.3), fcraney::PoleError);
    CHECK_THROWS_AS(hypergeometric_pfq({{0.5, 0.7}, {-2.0}}, 0.3), fcraney::PoleError);
    // Non-terminating p = q + 1 series outside |z| <= 1.
    CHECK_THROWS_AS(hypergeometric_pfq({{0.5, 0.7}, {1.1}}, 1.5), fcraney::DomainError);
    // Within the refused edge band around z = 1.
    CHECK_THROWS_AS(hypergeometric_pfq({{0.5, 0.7}, {1.1}}, 1.0),
                    fcraney::EdgeRegionError);
    CHECK_THROWS_AS(hypergeometric_pfq({{0.5, 0.7}, {1.1}}, 1.0 - 1e-7),
                    fcraney::EdgeRegionError);
    // Just outside the band is accepted.
    CHECK_NOTHROW(hypergeometric_pfq({{0.5, 0.7}, {1.1}}, 1.0 - 1e-3));
}
