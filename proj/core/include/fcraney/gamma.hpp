#pragma once

#include "fcraney/errors.hpp"

namespace fcraney {

// Value of log Gamma split into magnitude and sign, so Gamma can be combined
// multiplicatively for negative arguments without overflow.
struct SignedLogGamma {
    double log_abs;  // ln |Gamma(x)|
    int sign;        // +1 or -1
};

// Lanczos evaluation for x >= 0.5, reflection below. Relative error of the
// recovered Gamma(x) stays below 1e-13 for |x| <= 50.
// Throws PoleError at non-positive integers.
SignedLogGamma signed_log_gamma(double x);

// sign * exp(log_abs); overflows to +-inf for |Gamma| beyond double range.
double gamma_value(double x);

// sin(pi * x) with exact integer-period reduction, accurate for large |x|.
double sin_pi(double x);

// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1. Exact zero when
// the chain crosses a non-positive integer of a.
double pochhammer(double a, int n);

// Relative log-space residual of the order-k Gauss multiplication identity
//   Gamma(k z) = (2 pi)^{(1-k)/2} k^{k z - 1/2} prod_{j=0}^{k-1} Gamma(z + j/k)
// at z > 0: |log lhs - log rhs| / max(1, |log lhs|).
double verify_gauss_legendre(double z, int k);

}  // namespace fcraney
