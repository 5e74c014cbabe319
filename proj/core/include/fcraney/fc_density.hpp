#pragma once

#include "fcraney/density.hpp"

namespace fcraney {

/**
 * Upper support bound of the order-s Fuss-Catalan density:
 * K_s = (s+1)^{s+1} / s^s. Requires s >= 1.
 */
double fc_support(int s);

/**
 * Coefficient of the k-th hypergeometric term of the order-s density,
 * 1 <= k <= s. Computed as a single signed-log-gamma sum and exponentiated
 * at the end: the individual gamma factors overflow for s >= 5 and some
 * have negative non-integer arguments, so signs are tracked explicitly.
 */
double lambda_coeff(int k, int s);

/**
 * Assembles the order-s density: s terms, term k carrying coefficient
 * lambda_coeff(k, s), prefactor x^{k/(s+1) - 1}, and an sF(s-1) with
 * upper parameters {1 - (1+j)/s + k/(s+1)}_{j=1..s} and lower parameters
 * {1 + (k-j)/(s+1)}_{j != k}, evaluated at x / K_s. The result is cached
 * by fc_density_at; direct calls rebuild it.
 */
DensitySpec build_fc_spec(int s);

/**
 * Density of squared singular values for a product of s unit-variance
 * Ginibre factors (large-size limit), evaluated at x from the
 * hypergeometric representation. Requires 0 < x <= K_s, with the edge
 * band excluded (see density_value).
 */
double fc_density_at(int s, double x);

/**
 * Elementary closed forms, available for s = 1 (the Marchenko-Pastur
 * density sqrt(4 - x) / (2 pi sqrt(x))) and s = 2. Valid on the full
 * closed support (0, K_s], including the edge. Throws DomainError for
 * other s or x outside the support.
 */
double fc_density_closed(int s, double x);

}  // namespace fcraney
