#include "fcraney/combinatorics.hpp"

#include <cmath>
#include <limits>

#include "fcraney/errors.hpp"
#include "fcraney/gamma.hpp"

namespace fcraney {

BigCount binomial(unsigned long n, unsigned long k) {
    BigCount result;
    mpz_bin_uiui(result.get_mpz_t(), n, k);
    return result;
}

BigCount fuss_catalan_number(int s, int n) {
    if (s < 1 || n < 0) throw DomainError("fuss_catalan_number: need s >= 1 and n >= 0");
    BigCount numerator = binomial(static_cast<unsigned long>(s + 1) * n, n);
    BigCount divisor = static_cast<unsigned long>(s) * n + 1;
    if (!mpz_divisible_p(numerator.get_mpz_t(), divisor.get_mpz_t()))
        throw Error("fuss_catalan_number: inexact division (internal bug)");
    BigCount result;
    mpz_divexact(result.get_mpz_t(), numerator.get_mpz_t(), divisor.get_mpz_t());
    return result;
}

BigCount raney_number(int p, int r, int n) {
    if (p < 2 || r < 1 || n < 0) throw DomainError("raney_number: need p >= 2, r >= 1, n >= 0");
    BigCount numerator = r * binomial(static_cast<unsigned long>(p) * n + r, n);
    BigCount divisor = static_cast<unsigned long>(p) * n + r;
    if (!mpz_divisible_p(numerator.get_mpz_t(), divisor.get_mpz_t()))
        throw Error("raney_number: inexact division (internal bug)");
    BigCount result;
    mpz_divexact(result.get_mpz_t(), numerator.get_mpz_t(), divisor.get_mpz_t());
    return result;
}

BigCount sequence_value(const SequenceSpec& spec, int n) {
    if (spec.family == Family::fuss_catalan) return fuss_catalan_number(spec.s, n);
    return raney_number(spec.p, spec.r, n);
}

RealMoment raney_moment_real(double p, double r, int n) {
    if (!(p >= 0.0) || !(r > 0.0) || !(r <= p))
        throw ParameterRegionError(
            "raney_moment_real: requires p >= 0 and 0 < r <= p (moment sequence "
            "is not positive definite outside this region)");
    if (n < 0) throw DomainError("raney_moment_real: need n >= 0");
    if (n == 0) return {1.0, 0.0, false};

    // Integer fast path: exact value through the counting formula.
    double p_int, r_int;
    if (std::modf(p, &p_int) == 0.0 && std::modf(r, &r_int) == 0.0 &&
        p <= 62.0 && p >= 2.0) {
        BigCount exact = raney_number(static_cast<int>(p_int), static_cast<int>(r_int), n);
        double value = exact.get_d();
        // log via GMP to stay exact-ish even when the double overflows
        signed long exp2;
        double mant = mpz_get_d_2exp(&exp2, exact.get_mpz_t());
        double log_value = std::log(mant) + double(exp2) * std::log(2.0);
        bool overflow = !std::isfinite(value);
        return {value, log_value, overflow};
    }

    double np_r = double(n) * p + r;
    SignedLogGamma top = signed_log_gamma(np_r + 1.0);
    SignedLogGamma bottom1 = signed_log_gamma(double(n) + 1.0);
    SignedLogGamma bottom2 = signed_log_gamma(np_r - double(n) + 1.0);
    double log_value = std::log(r) - std::log(np_r) + top.log_abs - bottom1.log_abs -
                       bottom2.log_abs;
    // All gamma arguments are >= 1 inside the admissible region, so every
    // sign is +1 and the moment is positive.
    double value = std::exp(log_value);
    bool overflow = !std::isfinite(value);
    return {value, log_value, overflow};
}

RelationReport check_raney_relations(int p, int n_max) {
    if (p < 2) throw DomainError("check_raney_relations: need p >= 2");
    if (n_max < 0) throw DomainError("check_raney_relations: need n_max >= 0");
    RelationReport report;
    report.all_equal = true;
    auto push = [&](int n, const char* identity, BigCount lhs, BigCount rhs) {
        bool equal = (lhs == rhs);
        report.all_equal = report.all_equal && equal;
        report.rows.push_back({n, identity, std::move(lhs), std::move(rhs), equal});
    };
    for (int n = 0; n <= n_max; ++n) {
        push(n, "R(p,1;n) = FC(p-1;n)", raney_number(p, 1, n), fuss_catalan_number(p - 1, n));
        push(n, "R(p,p;n) = FC(p-1;n+1)", raney_number(p, p, n),
             fuss_catalan_number(p - 1, n + 1));
        push(n, "R(p,p;n) = R(p,1;n+1)", raney_number(p, p, n), raney_number(p, 1, n + 1));
    }
    return report;
}

}  // namespace fcraney
