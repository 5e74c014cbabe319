#pragma once

#include <optional>
#include <vector>

#include "fcraney/density.hpp"

namespace fcraney {

/**
 * Upper support bound of the W_{p,r} density: p^p / (p-1)^{p-1}, the same
 * for every r. Requires p >= 2.
 */
double raney_support(int p);

/**
 * Coefficient of the j-th hypergeometric term of W_{p,r}, 1 <= j <= p,
 * 1 <= r <= p+1 (r = p+1 covers the quasi-measure case). Returns exactly 0
 * when the defining expression has a gamma pole in its denominator; the
 * pole condition is screened on exact rationals, never evaluated through
 * the pole. For probability cases this happens precisely at j = p + 1 - r.
 */
double omega_coeff(int p, int r, int j);

/**
 * All p coefficients of W_{p,r} plus the index of the structurally
 * vanishing one (p + 1 - r when 1 <= r <= p; nullopt for r = p + 1, where
 * the vanishing index would fall outside 1..p — there coefficient p
 * vanishes through the same screening instead).
 */
struct RaneyCoefficients {
    int p;
    int r;
    std::vector<double> omega;  // omega[j-1] is the j-th coefficient
    std::optional<int> vanishing_index;
};

RaneyCoefficients raney_coefficients(int p, int r);

/**
 * Assembles W_{p,r}: terms j = 1..p with coefficient omega_coeff(p, r, j),
 * prefactor x^{(r-1+j)/p - 1}, and a pF(p-1) with parameters built from
 *
 *   beta_j = (r-p-1+j)/p,  alpha_1 = 0,  alpha_i = (r-p+i)/(p-1) (i >= 2):
 *   upper = {1 + beta_j} + {1 + beta_j - alpha_i}_{i=2..p},
 *   lower = {1 + (j-i)/p}_{i != j},
 *
 * at argument x / K. Parameter lists are assembled as exact rationals and
 * every equal upper/lower pair is cancelled symbolically, which reduces
 * each kept term to (p-1)F(p-2) in the probability cases. Zero-coefficient
 * terms are dropped structurally. Requires p >= 2 and 1 <= r <= p + 1.
 */
DensitySpec build_raney_spec(int p, int r);

/**
 * W_{p,r} evaluated at x from the hypergeometric representation (cached
 * per (p, r)). Requires 0 < x <= K with the edge band excluded. For
 * r = p + 1 the result is a quasi-measure and takes negative values.
 */
double raney_density_at(int p, int r, double x);

/**
 * Elementary closed forms: (p, r) = (2, 2) (the shifted semicircle
 * sqrt(x (4 - x)) / (2 pi)) and (3, 2). Valid on the full support.
 */
double raney_density_closed(int p, int r, double x);

/**
 * Analytic small-x power-law exponent of W_{p,r}: -(p-r)/p for r < p and
 * +1/p on the diagonal r = p. Requires 1 <= r <= p.
 */
double small_x_exponent(int p, int r);

}  // namespace fcraney
