#include "fcraney/fc_density.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "fcraney/errors.hpp"
#include "fcraney/gamma.hpp"
#include "param_builder.hpp"

namespace fcraney {

double fc_support(int s) {
    if (s < 1) throw DomainError("fc_support: need s >= 1");
    return detail::ipow(s + 1, s + 1) / detail::ipow(s, s);
}

double lambda_coeff(int k, int s) {
    if (s < 1 || k < 1 || k > s) throw DomainError("lambda_coeff: need 1 <= k <= s");
    double sp1 = s + 1.0;
    double log_abs = -1.5 * std::log(double(s)) + 0.5 * std::log(sp1 / (2.0 * std::numbers::pi));
    log_abs += k * (s / sp1 * std::log(double(s)) - std::log(sp1));
    int sign = 1;
    for (int j = 1; j <= s; ++j) {
        if (j != k) {
            SignedLogGamma top = signed_log_gamma((j - k) / sp1);
            log_abs += top.log_abs;
            sign *= top.sign;
        }
        SignedLogGamma bottom = signed_log_gamma((j + 1.0) / s - k / sp1);
        log_abs -= bottom.log_abs;
        sign *= bottom.sign;
    }
    return sign * std::exp(log_abs);
}

DensitySpec build_fc_spec(int s) {
    if (s < 1) throw DomainError("build_fc_spec: need s >= 1");
    DensitySpec spec;
    spec.family = Family::fuss_catalan;
    spec.s = s;
    spec.support_upper = fc_support(s);
    spec.singular_exponent = -double(s) / (s + 1);
    spec.is_probability = true;
    for (int k = 1; k <= s; ++k) {
        std::vector<Rational> upper, lower;
        for (int j = 1; j <= s; ++j) {
            upper.push_back(Rational(1) - Rational(1 + j, s) + Rational(k, s + 1));
            if (j != k) lower.push_back(Rational(1) + Rational(k - j, s + 1));
        }
        HyperGeomTerm term;
        term.coefficient = lambda_coeff(k, s);
        term.power_exponent = Rational(k, s + 1).to_double() - 1.0;
        term.argument_scale = 1.0 / spec.support_upper;
        term.params = detail::make_reduced_params(std::move(upper), std::move(lower));
        spec.terms.push_back(std::move(term));
    }
    return spec;
}

namespace {

const DensitySpec& cached_fc_spec(int s) {
    static std::mutex mutex;
    static std::map<int, DensitySpec> cache;
    std::scoped_lock lock(mutex);
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, build_fc_spec(s)).first;
    return it->second;
}

}  // namespace

double fc_density_at(int s, double x) { return density_value(cached_fc_spec(s), x); }

double fc_density_closed(int s, double x) {
    using std::numbers::pi;
    if (s != 1 && s != 2)
        throw DomainError("fc_density_closed: closed form available for s in {1, 2}");
    if (!(x > 0.0) || x > fc_support(s))
        throw DomainError("fc_density_closed: x outside the support (0, K]");
    if (s == 1) return std::sqrt(4.0 - x) / (2.0 * pi * std::sqrt(x));
    double root = 27.0 + 3.0 * std::sqrt(81.0 - 12.0 * x);
    double cbrt2 = std::cbrt(2.0);
    return cbrt2 * std::sqrt(3.0) / (12.0 * pi) *
           (cbrt2 * std::pow(root, 2.0 / 3.0) - 6.0 * std::cbrt(x)) /
           (std::pow(x, 2.0 / 3.0) * std::cbrt(root));
}

}  // namespace fcraney
