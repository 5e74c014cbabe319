#pragma once

#include <functional>
#include <vector>

#include "fcraney/density.hpp"

namespace fcraney {

/**
 * Integrates weight x^n against a density on (0, upper] with both
 * endpoint behaviors handled by substitution:
 *
 *   - below upper/2, x = upper * u^q removes the algebraic singularity at
 *     zero (q = substitution_order; 0 derives it from
 *     singular_exponent_at_zero). For the densities in this library the
 *     natural q (s+1 or p) makes the transformed integrand analytic.
 *   - from upper/2 to the edge strip, v = sqrt(upper - x) tames the
 *     square-root vanishing at the edge.
 *   - the outer strip (relative width 1e-3), where the series
 *     representation is refused, is integrated exactly against a fitted
 *     edge model (see EdgeModel), expanding x^n binomially.
 *
 * The density callable is only ever evaluated strictly inside
 * (0, upper * (1 - 1e-3)].
 */
double quadrature_integral(const std::function<double(double)>& density, int weight_power,
                           double upper, double singular_exponent_at_zero,
                           int substitution_order = 0);

/**
 * Moment and partial-integral engine for one density; fits the edge model
 * once at construction and reuses it for every integral.
 */
class DensityIntegrator {
public:
    explicit DensityIntegrator(DensitySpec spec);

    /// Full-support integral of x^n against the density.
    double moment(int n) const;

    /// Integral of x^weight_power against the density over [a, b] in [0, upper].
    double integral(double a, double b, int weight_power = 0) const;

    const DensitySpec& spec() const { return spec_; }
    const EdgeModel& edge_model() const { return model_; }

private:
    DensitySpec spec_;
    EdgeModel model_;
    int substitution_order_;
};

/// Convenience wrapper: builds a DensityIntegrator and returns moment(n).
double density_moment(const DensitySpec& spec, int n);

struct MomentRow {
    int n;
    double numeric;
    double exact;
    double rel_error;
    bool converged;
};

struct MomentReport {
    Family family;
    int s = 0;
    int p = 0;
    int r = 0;
    int n_max;
    double tolerance;
    std::vector<MomentRow> rows;
    bool passed;
};

/**
 * Compares quadrature moments of the density for n = 0..n_max against the
 * exact integer sequence (Fuss-Catalan or Raney numbers). A quadrature
 * convergence failure marks its row unconverged and fails the report
 * instead of aborting it. Requires a probability case (r <= p for Raney).
 */
MomentReport verify_moments(const DensitySpec& spec, int n_max, double tolerance);

/**
 * Exact integer identities for the first two Raney moments, checked with
 * no floating point at all: R_{p,r}(1) = r and 2 R_{p,r}(2) = r (2p+r-1),
 * for every 2 <= p <= p_max, 1 <= r <= p.
 */
bool exact_low_moment_identities(int p_max);

}  // namespace fcraney
