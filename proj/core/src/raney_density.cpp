#include "fcraney/raney_density.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "fcraney/errors.hpp"
#include "fcraney/gamma.hpp"
#include "fcraney/rational.hpp"
#include "param_builder.hpp"

namespace fcraney {

double raney_support(int p) {
    if (p < 2) throw DomainError("raney_support: need p >= 2");
    return detail::ipow(p, p) / detail::ipow(p - 1, p - 1);
}

namespace {

void check_omega_args(int p, int r, int j) {
    if (r > p + 1)
        throw ParameterRegionError(
            "omega_coeff: r beyond p + 1 leaves the supported parameter region");
    if (p < 2 || r < 1 || j < 1 || j > p)
        throw DomainError("omega_coeff: need p >= 2, 1 <= r <= p+1, 1 <= j <= p");
}

bool is_denominator_pole(const Rational& value) {
    return value.is_integer() && value.num() <= 0;
}

}  // namespace

double omega_coeff(int p, int r, int j) {
    check_omega_args(p, r, j);
    // Screen every denominator gamma argument exactly: a non-positive
    // integer there means a pole in the denominator, i.e. the whole
    // coefficient is zero. The first argument covers the structural
    // vanishing at j = p + 1 - r.
    Rational t = Rational(p - r + 1 - j, p);
    if (is_denominator_pole(t)) return 0.0;
    for (int i = 2; i <= p; ++i) {
        if (is_denominator_pole(Rational(r - p + i, p - 1) - Rational(r - p - 1 + j, p)))
            return 0.0;
    }

    double beta_j = Rational(r - p - 1 + j, p).to_double();
    double log_abs = std::log(double(r)) - 0.5 * std::log(2.0 * std::numbers::pi);
    log_abs += (r - p - 0.5) * std::log(double(p));
    log_abs -= (r - p + 1.5) * std::log(double(p - 1));
    log_abs += beta_j * ((p - 1) * std::log(double(p - 1)) - p * std::log(double(p)));
    int sign = 1;
    SignedLogGamma leading = signed_log_gamma(t.to_double());
    log_abs -= leading.log_abs;
    sign *= leading.sign;
    for (int i = 1; i < j; ++i) {
        SignedLogGamma factor = signed_log_gamma(Rational(i - j, p).to_double());
        log_abs += factor.log_abs;
        sign *= factor.sign;
    }
    for (int i = 1; i <= p - j; ++i) {
        SignedLogGamma factor = signed_log_gamma(Rational(i, p).to_double());
        log_abs += factor.log_abs;
        sign *= factor.sign;
    }
    for (int i = 2; i <= p; ++i) {
        Rational arg = Rational(r - p + i, p - 1) - Rational(r - p - 1 + j, p);
        SignedLogGamma factor = signed_log_gamma(arg.to_double());
        log_abs -= factor.log_abs;
        sign *= factor.sign;
    }
    return sign * std::exp(log_abs);
}

RaneyCoefficients raney_coefficients(int p, int r) {
    check_omega_args(p, r, 1);
    RaneyCoefficients result;
    result.p = p;
    result.r = r;
    for (int j = 1; j <= p; ++j) result.omega.push_back(omega_coeff(p, r, j));
    if (r <= p) result.vanishing_index = p + 1 - r;
    return result;
}

DensitySpec build_raney_spec(int p, int r) {
    check_omega_args(p, r, 1);
    DensitySpec spec;
    spec.family = Family::raney;
    spec.p = p;
    spec.r = r;
    spec.support_upper = raney_support(p);
    spec.is_probability = (r <= p);
    for (int j = 1; j <= p; ++j) {
        double coefficient = omega_coeff(p, r, j);
        if (coefficient == 0.0) continue;
        Rational beta_j(r - p - 1 + j, p);
        std::vector<Rational> upper, lower;
        upper.push_back(Rational(1) + beta_j);
        for (int i = 2; i <= p; ++i)
            upper.push_back(Rational(1) + beta_j - Rational(r - p + i, p - 1));
        for (int i = 1; i <= p; ++i)
            if (i != j) lower.push_back(Rational(1) + Rational(j - i, p));
        HyperGeomTerm term;
        term.coefficient = coefficient;
        term.power_exponent = (Rational(r - 1 + j, p) - Rational(1)).to_double();
        term.argument_scale = 1.0 / spec.support_upper;
        term.params = detail::make_reduced_params(std::move(upper), std::move(lower));
        spec.terms.push_back(std::move(term));
    }
    spec.singular_exponent = spec.terms.front().power_exponent;
    for (const HyperGeomTerm& term : spec.terms)
        spec.singular_exponent = std::min(spec.singular_exponent, term.power_exponent);
    return spec;
}

namespace {

const DensitySpec& cached_raney_spec(int p, int r) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, DensitySpec> cache;
    std::scoped_lock lock(mutex);
    auto key = std::make_pair(p, r);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_raney_spec(p, r)).first;
    return it->second;
}

}  // namespace

double raney_density_at(int p, int r, double x) {
    return density_value(cached_raney_spec(p, r), x);
}

double raney_density_closed(int p, int r, double x) {
    using std::numbers::pi;
    if (!((p == 2 && r == 2) || (p == 3 && r == 2)))
        throw DomainError("raney_density_closed: closed form available for (2,2) and (3,2)");
    if (!(x > 0.0) || x > raney_support(p))
        throw DomainError("raney_density_closed: x outside the support (0, K]");
    if (p == 2) return std::sqrt(x * (4.0 - x)) / (2.0 * pi);
    double root = 27.0 + 3.0 * std::sqrt(81.0 - 12.0 * x);
    double cbrt2 = std::cbrt(2.0);
    return std::sqrt(3.0) * cbrt2 / (36.0 * pi) *
           (std::pow(root, 4.0 / 3.0) - 18.0 * cbrt2 * std::pow(x, 2.0 / 3.0)) /
           (std::cbrt(x) * std::pow(root, 2.0 / 3.0));
}

double small_x_exponent(int p, int r) {
    if (p < 2 || r < 1 || r > p)
        throw DomainError("small_x_exponent: need p >= 2 and 1 <= r <= p");
    if (r < p) return -double(p - r) / p;
    return 1.0 / p;
}

}  // namespace fcraney
