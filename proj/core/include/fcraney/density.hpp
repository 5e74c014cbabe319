#pragma once

#include <array>
#include <functional>
#include <vector>

#include "fcraney/family.hpp"
#include "fcraney/hypergeometric.hpp"

namespace fcraney {

/**
 * One term of a density: coefficient * x^power_exponent * pFq(params; x * argument_scale).
 * argument_scale is the reciprocal of the support upper bound, so the series
 * argument reaches exactly 1 at the support edge.
 */
struct HyperGeomTerm {
    double coefficient;
    double power_exponent;
    double argument_scale;
    HyperGeomParams params;
};

/**
 * A fully assembled density on (0, support_upper]. Immutable after
 * construction; evaluation is pure and thread-safe.
 *
 * family == fuss_catalan uses order `s`; family == raney uses the pair
 * (p, r). `singular_exponent` is the analytic power-law exponent at x -> 0+.
 * `is_probability` is false only for the quasi-measure case r = p + 1,
 * which attains negative values.
 */
struct DensitySpec {
    Family family;
    int s = 0;
    int p = 0;
    int r = 0;
    double support_upper = 0.0;
    double singular_exponent = 0.0;
    bool is_probability = true;
    std::vector<HyperGeomTerm> terms;
};

/**
 * Evaluates the density at x from its hypergeometric terms.
 *
 * Requires 0 < x <= support_upper; throws DomainError outside. The band
 * x > support_upper * (1 - kHyperEdgeMargin) is refused with
 * EdgeRegionError: the series converges too slowly there, and callers are
 * expected to use the fitted edge model (see EdgeModel) or quadrature
 * substitution instead.
 */
double density_value(const DensitySpec& spec, double x);

/**
 * Square-root edge model: on the strip [strip_start, support_upper] the
 * density is represented as
 *
 *   sum_{m=0..5} coeff[m] * (support_upper - x)^{(m+1)/2},
 *
 * fitted to six direct evaluations just outside the strip. Every density
 * in this library vanishes like sqrt(support_upper - x) at the edge, which
 * the m = 0 term captures; higher terms absorb the next corrections. Six
 * terms keep the model error on the strip integral below the 1e-8 moment
 * budget even for the highest-order cases, where the strip carries close
 * to a percent of the n = 8 moment.
 */
struct EdgeModel {
    double support_upper;
    double strip_start;
    std::array<double, 6> coeff;
};

EdgeModel fit_edge_model(const DensitySpec& spec);

/**
 * Same fit for any density callable on (0, support_upper * (1 - 1e-3)];
 * the callable is only evaluated at the six fit nodes.
 */
EdgeModel fit_edge_model(const std::function<double(double)>& density,
                         double support_upper);

/// Evaluates the edge model at x (valid on [strip_start, support_upper]).
double edge_model_value(const EdgeModel& model, double x);

/**
 * Definite integral of the edge model over [a, b], both inside the strip.
 * Exact for the model (antiderivative of fractional powers of (K - x)).
 */
double edge_model_integral(const EdgeModel& model, double a, double b);

struct DensitySample {
    double value;
    bool extrapolated;
};

/**
 * Evaluates the density anywhere on (0, support_upper], switching to the
 * edge model on the outer strip (gap to the edge below 1e-3 of the support)
 * and flagging those values as extrapolated.
 */
DensitySample density_value_extended(const DensitySpec& spec, const EdgeModel& model, double x);

/**
 * Fits the small-x power-law exponent of the density: least squares of
 * log density against {1, log x, x^delta} over 30 log-spaced points in
 * [1e-8, 1e-5], where delta is the exponent spacing between consecutive
 * terms (1/(s+1) for Fuss-Catalan, 1/p for Raney). The third basis column
 * absorbs the leading correction term, which would otherwise bias a plain
 * two-parameter fit by more than the 1e-3 acceptance band at high order.
 *
 * Requires the density to be strictly positive near zero (all probability
 * cases are).
 */
double fitted_small_x_slope(const DensitySpec& spec);

}  // namespace fcraney
