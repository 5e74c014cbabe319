#include "fcraney/moments.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "fcraney/combinatorics.hpp"
#include "fcraney/errors.hpp"
#include "fcraney/quadrature.hpp"

namespace fcraney {

namespace {

constexpr double kEdgeStripFraction = 1e-3;

double binomial_double(int n, int k) {
    double result = 1.0;
    for (int i = 1; i <= k; ++i) result *= double(n - k + i) / i;
    return result;
}

/**
 * Exact integral of x^n * sum_m coeff[m] (upper - x)^{(m+1)/2} over
 * [upper - gap, upper], by binomial expansion of x^n = (upper - g)^n.
 */
double strip_weighted_integral(const EdgeModel& model, int n, double gap) {
    double value = 0.0;
    for (int m = 0; m < 6; ++m) {
        double term = 0.0;
        for (int i = 0; i <= n; ++i) {
            double power = i + 0.5 * (m + 3);
            term += binomial_double(n, i) * std::pow(model.support_upper, double(n - i)) *
                    (i % 2 == 0 ? 1.0 : -1.0) * std::pow(gap, power) / power;
        }
        value += model.coeff[m] * term;
    }
    return value;
}

int derive_substitution_order(double singular_exponent) {
    if (singular_exponent >= 0.0) return 1;
    return std::max(1, int(std::ceil(1.0 / (1.0 + singular_exponent) - 1e-12)));
}

/**
 * Shared core: integral of x^weight_power * density over [a, b], where the
 * density is evaluated through `f` below the edge strip and through the
 * model inside it. `q` is the substitution order at zero.
 */
double weighted_integral(const std::function<double(double)>& f, const EdgeModel& model,
                         double upper, int q, int n, double a, double b) {
    if (a > b) throw DomainError("weighted integral: need a <= b");
    if (a < 0.0 || b > upper) throw DomainError("weighted integral: bounds outside [0, K]");
    if (a == b) return 0.0;
    double strip_start = model.strip_start;
    double split = 0.5 * upper;
    double total = 0.0;
    // Lower region [a, min(b, K/2)]: x = upper * u^q.
    if (a < split) {
        double hi = std::min(b, split);
        double u_lo = std::pow(a / upper, 1.0 / q);
        double u_hi = std::pow(hi / upper, 1.0 / q);
        total += adaptive_integrate(
            [&](double u) {
                double x = upper * std::pow(u, q);
                return f(x) * std::pow(x, double(n)) * upper * q * std::pow(u, q - 1.0);
            },
            u_lo, u_hi);
    }
    // Upper region [max(a, K/2), min(b, strip_start)]: v = sqrt(upper - x).
    if (b > split) {
        double lo = std::max(a, split);
        double hi = std::min(b, strip_start);
        if (lo < hi) {
            double v_lo = std::sqrt(upper - hi);
            double v_hi = std::sqrt(upper - lo);
            total += adaptive_integrate(
                [&](double v) {
                    double x = upper - v * v;
                    return f(x) * std::pow(x, double(n)) * 2.0 * v;
                },
                v_lo, v_hi);
        }
    }
    // Edge strip [max(a, strip_start), b]: exact against the fitted model.
    if (b > strip_start) {
        double lo = std::max(a, strip_start);
        total += strip_weighted_integral(model, n, upper - lo) -
                 strip_weighted_integral(model, n, upper - b);
    }
    return total;
}

}  // namespace

double quadrature_integral(const std::function<double(double)>& density, int weight_power,
                           double upper, double singular_exponent_at_zero,
                           int substitution_order) {
    if (!(upper > 0.0)) throw DomainError("quadrature_integral: need upper > 0");
    if (weight_power < 0) throw DomainError("quadrature_integral: need weight_power >= 0");
    if (!(singular_exponent_at_zero > -1.0))
        throw DomainError("quadrature_integral: singular exponent must be > -1");
    int q = substitution_order > 0 ? substitution_order
                                   : derive_substitution_order(singular_exponent_at_zero);
    EdgeModel model = fit_edge_model(density, upper);
    return weighted_integral(density, model, upper, q, weight_power, 0.0, upper);
}

DensityIntegrator::DensityIntegrator(DensitySpec spec)
    : spec_(std::move(spec)),
      model_(fit_edge_model(spec_)),
      substitution_order_(spec_.family == Family::fuss_catalan ? spec_.s + 1 : spec_.p) {}

double DensityIntegrator::moment(int n) const { return integral(0.0, spec_.support_upper, n); }

double DensityIntegrator::integral(double a, double b, int weight_power) const {
    return weighted_integral([this](double x) { return density_value(spec_, x); }, model_,
                             spec_.support_upper, substitution_order_, weight_power, a, b);
}

double density_moment(const DensitySpec& spec, int n) {
    return DensityIntegrator(spec).moment(n);
}

MomentReport verify_moments(const DensitySpec& spec, int n_max, double tolerance) {
    if (!spec.is_probability)
        throw ParameterRegionError(
            "verify_moments: quasi-measure case has no moment sequence to match");
    if (n_max < 0) throw DomainError("verify_moments: need n_max >= 0");
    MomentReport report;
    report.family = spec.family;
    report.s = spec.s;
    report.p = spec.p;
    report.r = spec.r;
    report.n_max = n_max;
    report.tolerance = tolerance;
    report.passed = true;
    DensityIntegrator integrator(spec);
    for (int n = 0; n <= n_max; ++n) {
        MomentRow row;
        row.n = n;
        BigCount exact = spec.family == Family::fuss_catalan
                             ? fuss_catalan_number(spec.s, n)
                             : raney_number(spec.p, spec.r, n);
        row.exact = exact.get_d();
        try {
            row.numeric = integrator.moment(n);
            row.converged = true;
            row.rel_error = std::abs(row.numeric - row.exact) / row.exact;
        } catch (const ConvergenceError&) {
            row.numeric = std::numeric_limits<double>::quiet_NaN();
            row.converged = false;
            row.rel_error = std::numeric_limits<double>::infinity();
        }
        report.passed = report.passed && row.converged && row.rel_error <= tolerance;
        report.rows.push_back(row);
    }
    return report;
}

bool exact_low_moment_identities(int p_max) {
    if (p_max < 2) throw DomainError("exact_low_moment_identities: need p_max >= 2");
    for (int p = 2; p <= p_max; ++p) {
        for (int r = 1; r <= p; ++r) {
            if (raney_number(p, r, 1) != r) return false;
            BigCount second = 2 * raney_number(p, r, 2);
            if (second != BigCount(r) * (2 * p + r - 1)) return false;
        }
    }
    return true;
}

}  // namespace fcraney
