#pragma once

#include <vector>

#include "fcraney/density.hpp"

namespace fcraney {

/**
 * A sampled function on a strictly increasing grid inside (0, upper).
 */
struct GridFunction {
    std::vector<double> grid;
    std::vector<double> values;
    double upper = 1.0;
};

/**
 * Elementary multiplicative-convolution factor: the density
 * x^a (1 - x)^{b - a - 1} / Gamma(b - a) on (0, 1), non-negative there,
 * with b > a. Its Mellin transform is Gamma(sigma + a) / Gamma(sigma + b),
 * which is what makes products of these factors reconstruct the densities
 * of this library.
 */
struct BetaFactor {
    double a;
    double b;
};

/// Density of the factor at x in (0, 1).
double beta_factor_at(const BetaFactor& factor, double x);

/// Total mass of the factor on (0, 1): Gamma(a + 1) / Gamma(b + 1).
double beta_factor_mass(const BetaFactor& factor);

/**
 * The factor decomposition of a density:
 *   - order-s Fuss-Catalan: s factors (a_j, b_j) = ((j-s)/(s+1), (2+j-s)/s),
 *     j = 0..s-1;
 *   - W_{p,r} with r < p: a leading factor ((r-p)/p, 0) plus p-1 factors
 *     ((r-p+i)/p, (r-p+i+1)/(p-1)), i = 1..p-1;
 *   - W_{p,p}: the leading factor degenerates to the identity and is
 *     dropped, leaving p-1 factors.
 * Rejects r > p: no such decomposition into non-negative factors exists
 * there, which is exactly why those cases fail to be probability measures.
 */
std::vector<BetaFactor> factor_list(const DensitySpec& spec);

/**
 * One term of the small-x expansion f(x) ~ sum coeff * x^exponent, used
 * for the analytic tail correction below the grid.
 */
struct TailTerm {
    double exponent;
    double coeff;
};

/**
 * A density on (0, 1] represented on a uniform grid in u = -ln x over
 * [0, ln 1e8], with analytic models at both ends:
 *   - near u = 0 (x -> 1): the cubic-order model
 *       f(e^{-u}) ~ edge_c u^edge_beta (1 + edge_d u + edge_e u^2 + edge_f u^3);
 *     the first kEdgeCells grid values come from this model, because the
 *     stored-value representation cannot carry the algebraic singularity.
 *     (Lower truncation orders leak more edge mass than the telescoping
 *     tolerance allows when edge_beta is close to -1 or the linear
 *     coefficient is large, as it is for the heavy-tailed factors.)
 *   - for x below the grid: the tail terms above.
 * Built by the factory functions below; treat as immutable.
 */
struct MellinDensity {
    static constexpr int kCells = 8192;
    static constexpr int kEdgeCells = 8;
    static constexpr double kLogRange = 18.420680743952367;  // ln 1e8

    static double step() { return kLogRange / kCells; }

    std::vector<double> values;  // index i holds f(exp(-i h)); index 0 unused
    double edge_beta = 0.0;
    double edge_c = 0.0;
    double edge_d = 0.0;
    double edge_e = 0.0;
    double edge_f = 0.0;
    std::vector<TailTerm> tail;

    /// Value at u = -ln x, using the edge model below kEdgeCells * h and
    /// sixth-order Lagrange interpolation between grid values elsewhere
    /// (tail beyond the grid).
    double value_at_u(double u) const;
};

/// Exact representation of a single factor (analytic edge and tail data).
MellinDensity mellin_from_beta(const BetaFactor& factor);

/**
 * Builds the representation from samples on (0, 1]: the third-order edge
 * model is fitted in log space from the samples nearest x = 1, the
 * single-term tail from those nearest x = 0, and the interior is
 * interpolated onto the internal grid in psi = v u^{-beta} space so the
 * algebraic edge behaviour of the samples does not poison the fill.
 * Requires upper == 1 and at least 64 points.
 */
MellinDensity mellin_from_samples(const GridFunction& f);

/**
 * Multiplicative (Mellin) convolution h(x) = integral f(x/t) g(t) dt/t,
 * computed as an additive convolution in u = -ln x by two-sided product
 * integration: each half of the integration range integrates its
 * endpoint's algebraic singularity u^beta exactly against a quadratic
 * interpolant of the remaining smooth part. (A plain trapezoid rule —
 * even one restricted to interior cells — leaks an endpoint boundary
 * term of order h^2 u^{beta-1} that overwhelms the mass-telescoping
 * budget.) Outputs within kEdgeCells of u = 0 come instead from the
 * exactly-recursed edge model
 *   beta_h = beta_f + beta_g + 1,
 *   c_h = c_f c_g B(beta_f + 1, beta_g + 1),
 * and outputs in the next few dozen cells from an exact quadrature of the
 * two-singularity product integral, because there the evaluated factor
 * sits too close to its own edge for polynomial interpolation to hold.
 * The tail model of the result is fitted from its own far values; the
 * oracle pipeline overrides it with exact residue data.
 */
MellinDensity mellin_convolve(const MellinDensity& f, const MellinDensity& g);

/// Convolution of sampled functions; wraps the representation above.
GridFunction mellin_convolve(const GridFunction& f, const GridFunction& g);

/**
 * Total mass on (0, 1]: analytic edge piece + Simpson on the bulk grid +
 * the analytic tail correction (the tail can carry percent-level mass when
 * the small-x exponent is close to -1, so it is never ignored).
 */
double mellin_mass(const MellinDensity& f);

/// Samples onto a log grid of grid_size points spanning x in [1e-8, 1).
GridFunction sample_mellin(const MellinDensity& f, int grid_size);

/**
 * Reconstructs the density identified by spec as prefactor * g(x / K),
 * where g is the convolution of its factor list. After every convolution
 * step the numeric mass is checked against the exact product of factor
 * masses; drift beyond 1e-6 raises ConvergenceError. The result grid has
 * grid_size points (>= 256) on (0, K). This path never touches the
 * hypergeometric representation, which is what makes it an independent
 * oracle — and, term by term, a positivity certificate.
 */
GridFunction oracle_density(const DensitySpec& spec, int grid_size);

struct OracleComparison {
    GridFunction oracle;
    std::vector<double> direct;  // hypergeometric values on oracle.grid
    double rel_l1_central;       // relative L1 distance over [0.05 K, 0.95 K]
    double min_oracle_value;     // over the full grid
};

/// Runs the oracle and evaluates the hypergeometric density on its grid.
OracleComparison compare_oracle_to_direct(const DensitySpec& spec, int grid_size);

}  // namespace fcraney
