#include "fcraney/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fcraney/compensated.hpp"
#include "fcraney/errors.hpp"
#include "fcraney/gamma.hpp"
#include "fcraney/quadrature.hpp"

namespace fcraney {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kMassDriftTolerance = 1e-6;

/**
 * Cells below this index are computed by exact quadrature during a
 * convolution instead of by the weighted product rule: there the evaluated
 * factor sits so close to its own algebraic singularity that polynomial
 * interpolation of it is the dominant error in the whole pipeline.
 */
constexpr int kNearEdgeCells = 64;

double log_beta(double x, double y) {
    return signed_log_gamma(x).log_abs + signed_log_gamma(y).log_abs -
           signed_log_gamma(x + y).log_abs;
}

double beta_function(double x, double y) { return std::exp(log_beta(x, y)); }

/// Edge-model value c u^beta (1 + d u + e u^2 + f u^3).
double edge_value(const MellinDensity& f, double u) {
    if (u <= 0.0) {
        if (f.edge_beta > 0.0) return 0.0;
        if (f.edge_beta == 0.0) return f.edge_c;
        return std::numeric_limits<double>::infinity();
    }
    return f.edge_c * std::pow(u, f.edge_beta) *
           (1.0 + u * (f.edge_d + u * (f.edge_e + u * f.edge_f)));
}

double tail_value(const MellinDensity& f, double u) {
    double total = 0.0;
    for (const TailTerm& term : f.tail) total += term.coeff * std::exp(-term.exponent * u);
    return total;
}

/// (k+1)^p - k^p without the cancellation the naive difference hits at
/// large k (requires p > 0, which beta > -1 guarantees for every moment).
double power_diff(int k, double p) {
    if (k == 0) return 1.0;
    return std::pow(static_cast<double>(k), p) * std::expm1(p * std::log1p(1.0 / k));
}

/**
 * Per-cell weights for integrating v^beta against a quadratic interpolant
 * of the smooth part over cells [k h, (k+1) h]:
 *   w0[k] = integral of v^beta dv,
 *   w1[k] = integral of v^beta (v - k h) dv,
 *   w2[k] = integral of v^beta (v - k h)^2 dv,
 * so with forward differences d1 = a_{k+1} - a_k, d2 = a_{k+2} - 2 a_{k+1}
 * + a_k the cell contributes
 *   a_k w0 + d1 w1 / h + d2 (w2 / h^2 - w1 / h) / 2.
 * Requires beta > -1 (always true here: beta = b - a - 1 with b > a, and
 * the convolution recursion only increases it).
 */
struct SingularWeights {
    std::vector<double> w0;
    std::vector<double> w1;
    std::vector<double> w2;
};

SingularWeights singular_weights(double beta, int cell_count, double h) {
    const double p1 = beta + 1.0;
    const double p2 = beta + 2.0;
    const double p3 = beta + 3.0;
    SingularWeights w;
    w.w0.resize(static_cast<std::size_t>(cell_count));
    w.w1.resize(static_cast<std::size_t>(cell_count));
    w.w2.resize(static_cast<std::size_t>(cell_count));
    const double h1 = std::pow(h, p1);
    const double h2 = std::pow(h, p2);
    const double h3 = std::pow(h, p3);
    for (int k = 0; k < cell_count; ++k) {
        const double i0 = h1 * power_diff(k, p1) / p1;
        const double i1 = h2 * power_diff(k, p2) / p2;
        const double i2 = h3 * power_diff(k, p3) / p3;
        const double kh = k * h;
        const std::size_t slot = static_cast<std::size_t>(k);
        w.w0[slot] = i0;
        w.w1[slot] = i1 - kh * i0;
        w.w2[slot] = i2 - kh * (2.0 * i1 - kh * i0);
    }
    return w;
}

/// Smooth parts f(u) / u^beta on the grid (index 0 is the exact limit c).
std::vector<double> smooth_parts(const MellinDensity& f, double h) {
    std::vector<double> psi(f.values.size());
    psi[0] = f.edge_c;
    for (std::size_t k = 1; k < f.values.size(); ++k) {
        psi[k] = f.values[k] * std::pow(k * h, -f.edge_beta);
    }
    return psi;
}

/**
 * Smooth part f(e^{-u}) / u^beta at arbitrary u: the edge model below the
 * modelled cells, otherwise sixth-order Lagrange interpolation through the
 * nodal smooth parts (which are analytic, unlike the values themselves).
 */
double psi_at(const MellinDensity& f, double u) {
    const double h = MellinDensity::step();
    if (u < MellinDensity::kEdgeCells * h) {
        return f.edge_c * (1.0 + u * (f.edge_d + u * (f.edge_e + u * f.edge_f)));
    }
    int base = static_cast<int>(u / h) - 2;
    base = std::clamp(base, 1, MellinDensity::kCells - 5);
    double result = 0.0;
    for (int j = 0; j < 6; ++j) {
        const double xj = (base + j) * h;
        double lagrange = 1.0;
        for (int i = 0; i < 6; ++i) {
            if (i == j) continue;
            lagrange *= (u - (base + i) * h) / (xj - (base + i) * h);
        }
        result += lagrange * f.values[static_cast<std::size_t>(base + j)] *
                  std::pow(xj, -f.edge_beta);
    }
    return result;
}

/**
 * Exact additive-convolution value at small L = m h, where both inputs sit
 * close to their edge singularities:
 *   (f * g)(L) = L^{bf+bg+1} int_0^1 t^{bg} (1-t)^{bf}
 *                             psi_g(L t) psi_f(L (1-t)) dt,
 * split at t = 1/2 with each half mapped by t = (1/2) sigma^{1/(beta+1)}
 * so its algebraic endpoint factor integrates exactly and the remaining
 * integrand is smooth in sigma.
 */
double near_edge_value(const MellinDensity& f, const MellinDensity& g, double L) {
    const double bf = f.edge_beta;
    const double bg = g.edge_beta;
    QuadratureOptions options;
    options.rel_tol = 1e-9;
    options.abs_tol = 0.0;
    const double qg = 1.0 / (bg + 1.0);
    const double left =
        adaptive_integrate(
            [&](double sigma) {
                const double t = 0.5 * std::pow(sigma, qg);
                return std::pow(1.0 - t, bf) * psi_at(g, L * t) * psi_at(f, L * (1.0 - t));
            },
            0.0, 1.0, options) *
        std::pow(0.5, bg + 1.0) * qg;
    const double qf = 1.0 / (bf + 1.0);
    const double right =
        adaptive_integrate(
            [&](double sigma) {
                const double t = 0.5 * std::pow(sigma, qf);
                return std::pow(1.0 - t, bg) * psi_at(g, L * (1.0 - t)) * psi_at(f, L * t);
            },
            0.0, 1.0, options) *
        std::pow(0.5, bf + 1.0) * qf;
    return std::pow(L, bf + bg + 1.0) * (left + right);
}

/// Least-squares line fit y = intercept + slope * x.
void fit_line(const std::vector<double>& xs, const std::vector<double>& ys,
              double* slope, double* intercept) {
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    *slope = (n * sxy - sx * sy) / denom;
    *intercept = (sy - *slope * sx) / n;
}

/// Solves the 4x4 system A x = rhs in place; false on a near-singular pivot.
bool solve4(double A[4][4], double rhs[4], double x[4]) {
    int perm[4] = {0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int best = col;
        for (int row = col + 1; row < 4; ++row) {
            if (std::abs(A[perm[row]][col]) > std::abs(A[perm[best]][col])) best = row;
        }
        std::swap(perm[col], perm[best]);
        const double pivot = A[perm[col]][col];
        if (!(std::abs(pivot) > 1e-13)) return false;
        for (int row = col + 1; row < 4; ++row) {
            const double factor = A[perm[row]][col] / pivot;
            for (int k = col; k < 4; ++k) A[perm[row]][k] -= factor * A[perm[col]][k];
            rhs[perm[row]] -= factor * rhs[perm[col]];
        }
    }
    for (int col = 3; col >= 0; --col) {
        double sum = rhs[perm[col]];
        for (int k = col + 1; k < 4; ++k) sum -= A[perm[col]][k] * x[k];
        x[col] = sum / A[perm[col]][col];
    }
    return true;
}

/**
 * Fits coeff_k for the far-grid model f(e^{-u}) ~ sum coeff_k e^{-e_k u}
 * with the exponents pinned, by linear least squares over u >= 12 (far
 * enough out that the next-order corrections sit below e^{-12}). Columns
 * are referenced to the grid end for conditioning. Empty on failure.
 */
std::vector<TailTerm> fit_tail_coefficients(const MellinDensity& density,
                                            const std::vector<double>& exponents) {
    const std::size_t count = exponents.size();
    if (count == 0 || count > 4) return {};
    const double h = MellinDensity::step();
    const double u_ref = MellinDensity::kLogRange;
    const int start = static_cast<int>(12.0 / h) + 1;

    double gram[4][4] = {};
    double rhs[4] = {};
    for (int col = 0; col < 4; ++col) gram[col][col] = (col < static_cast<int>(count)) ? 0.0 : 1.0;
    for (int i = start; i <= MellinDensity::kCells; i += 8) {
        const double u = i * h;
        double basis[4] = {};
        for (std::size_t k = 0; k < count; ++k) {
            basis[k] = std::exp(-exponents[k] * (u - u_ref));
        }
        const double value = density.values[static_cast<std::size_t>(i)];
        for (std::size_t row = 0; row < count; ++row) {
            for (std::size_t col = 0; col < count; ++col) {
                gram[row][col] += basis[row] * basis[col];
            }
            rhs[row] += basis[row] * value;
        }
    }
    double scaled[4] = {};
    if (!solve4(gram, rhs, scaled)) return {};
    std::vector<TailTerm> tail;
    for (std::size_t k = 0; k < count; ++k) {
        const double coeff = scaled[k] * std::exp(exponents[k] * u_ref);
        if (!std::isfinite(coeff)) return {};
        tail.push_back({exponents[k], coeff});
    }
    return tail;
}

}  // namespace

double beta_factor_at(const BetaFactor& factor, double x) {
    if (!(x > 0.0) || !(x < 1.0)) throw DomainError("beta factor argument must lie in (0, 1)");
    const double beta = factor.b - factor.a - 1.0;
    return std::exp(factor.a * std::log(x) + beta * std::log1p(-x) -
                    signed_log_gamma(factor.b - factor.a).log_abs);
}

double beta_factor_mass(const BetaFactor& factor) {
    return std::exp(signed_log_gamma(factor.a + 1.0).log_abs -
                    signed_log_gamma(factor.b + 1.0).log_abs);
}

std::vector<BetaFactor> factor_list(const DensitySpec& spec) {
    std::vector<BetaFactor> factors;
    if (spec.family == Family::fuss_catalan) {
        const int s = spec.s;
        for (int j = 0; j < s; ++j) {
            factors.push_back({static_cast<double>(j - s) / (s + 1),
                               static_cast<double>(2 + j - s) / s});
        }
        return factors;
    }
    const int p = spec.p;
    const int r = spec.r;
    if (r > p) {
        throw ParameterRegionError(
            "no non-negative factor decomposition exists above the diagonal r = p");
    }
    if (r < p) factors.push_back({static_cast<double>(r - p) / p, 0.0});
    for (int i = 1; i < p; ++i) {
        factors.push_back({static_cast<double>(r - p + i) / p,
                           static_cast<double>(r - p + i + 1) / (p - 1)});
    }
    return factors;
}

double MellinDensity::value_at_u(double u) const {
    const double h = step();
    if (u < kEdgeCells * h) return edge_value(*this, u);
    if (u >= kLogRange) return tail_value(*this, u);
    int base = static_cast<int>(u / h) - 2;
    base = std::clamp(base, 1, kCells - 5);
    double result = 0.0;
    for (int j = 0; j < 6; ++j) {
        const double xj = (base + j) * h;
        double lagrange = 1.0;
        for (int i = 0; i < 6; ++i) {
            if (i == j) continue;
            lagrange *= (u - (base + i) * h) / (xj - (base + i) * h);
        }
        result += lagrange * values[static_cast<std::size_t>(base + j)];
    }
    return result;
}

MellinDensity mellin_from_beta(const BetaFactor& factor) {
    if (!(factor.b > factor.a)) throw DomainError("beta factor requires b > a");
    MellinDensity f;
    const double beta = factor.b - factor.a - 1.0;
    // f(e^{-u}) = e^{-a u} (1 - e^{-u})^beta / Gamma(beta + 1); expanding
    // (1 - e^{-u}) = u exp(-u/2 + u^2/24 + ...) gives the edge coefficients.
    f.edge_beta = beta;
    f.edge_c = std::exp(-signed_log_gamma(beta + 1.0).log_abs);
    f.edge_d = -(factor.a + 0.5 * beta);
    f.edge_e = 0.5 * f.edge_d * f.edge_d + beta / 24.0;
    f.edge_f = f.edge_d * (f.edge_d * f.edge_d / 6.0 + beta / 24.0);
    f.tail = {{factor.a, std::exp(-signed_log_gamma(factor.b - factor.a).log_abs)}};
    const double h = MellinDensity::step();
    f.values.assign(MellinDensity::kCells + 1, 0.0);
    for (int i = 1; i <= MellinDensity::kCells; ++i) {
        const double u = i * h;
        if (i < MellinDensity::kEdgeCells) {
            f.values[static_cast<std::size_t>(i)] = edge_value(f, u);
        } else {
            f.values[static_cast<std::size_t>(i)] =
                std::exp(-factor.a * u + beta * std::log(-std::expm1(-u)) -
                         signed_log_gamma(beta + 1.0).log_abs);
        }
    }
    return f;
}

MellinDensity mellin_convolve(const MellinDensity& f, const MellinDensity& g) {
    const double h = MellinDensity::step();
    const int cells = MellinDensity::kCells;
    const int edge = MellinDensity::kEdgeCells;

    MellinDensity out;
    // The additive convolution of c_f u^b_f (...) and c_g u^b_g (...) near
    // u = 0 is a Beta-function recursion, exact order by order.
    const double bf = f.edge_beta;
    const double bg = g.edge_beta;
    const double b0 = beta_function(bf + 1.0, bg + 1.0);
    out.edge_beta = bf + bg + 1.0;
    out.edge_c = f.edge_c * g.edge_c * b0;
    out.edge_d = (f.edge_d * beta_function(bf + 2.0, bg + 1.0) +
                  g.edge_d * beta_function(bf + 1.0, bg + 2.0)) /
                 b0;
    out.edge_e = (f.edge_e * beta_function(bf + 3.0, bg + 1.0) +
                  f.edge_d * g.edge_d * beta_function(bf + 2.0, bg + 2.0) +
                  g.edge_e * beta_function(bf + 1.0, bg + 3.0)) /
                 b0;
    out.edge_f = (f.edge_f * beta_function(bf + 4.0, bg + 1.0) +
                  f.edge_e * g.edge_d * beta_function(bf + 3.0, bg + 2.0) +
                  f.edge_d * g.edge_e * beta_function(bf + 2.0, bg + 3.0) +
                  g.edge_f * beta_function(bf + 1.0, bg + 4.0)) /
                 b0;
    out.values.assign(static_cast<std::size_t>(cells) + 1, 0.0);
    for (int m = 1; m < edge; ++m) {
        out.values[static_cast<std::size_t>(m)] = edge_value(out, m * h);
    }

    // Near-edge zone: the evaluated factor would sit within a few cells of
    // its own singularity, so use the exact quadrature instead of weights.
    for (int m = edge; m < kNearEdgeCells && m <= cells; ++m) {
        out.values[static_cast<std::size_t>(m)] = near_edge_value(f, g, m * h);
    }

    // Full-range singular weights and smooth parts for both directions.
    const SingularWeights wf = singular_weights(bf, cells, h);
    const SingularWeights wg = singular_weights(bg, cells, h);
    const std::vector<double> psi_f = smooth_parts(f, h);
    const std::vector<double> psi_g = smooth_parts(g, h);

    const double* fv = f.values.data();
    const double* gv = g.values.data();
    for (int m = kNearEdgeCells; m <= cells; ++m) {
        // Integrate v^{beta_g} times a quadratic interpolant of
        // psi_g(v) f(mh - v) over [0, mh/2], and symmetrically from the
        // other endpoint; the smooth parts stay smooth on their half.
        const int mid = m / 2;
        CompensatedSum total;
        {
            double a0 = psi_g[0] * fv[m];
            double a1 = psi_g[1] * fv[m - 1];
            for (int k = 0; k < mid; ++k) {
                const double a2 = psi_g[static_cast<std::size_t>(k) + 2] * fv[m - k - 2];
                const double d1 = a1 - a0;
                const double d2 = a2 - 2.0 * a1 + a0;
                const std::size_t slot = static_cast<std::size_t>(k);
                total.add(a0 * wg.w0[slot] + d1 * wg.w1[slot] / h +
                          0.5 * d2 * (wg.w2[slot] / (h * h) - wg.w1[slot] / h));
                a0 = a1;
                a1 = a2;
            }
        }
        {
            double a0 = psi_f[0] * gv[m];
            double a1 = psi_f[1] * gv[m - 1];
            for (int k = 0; k < m - mid; ++k) {
                const double a2 = psi_f[static_cast<std::size_t>(k) + 2] * gv[m - k - 2];
                const double d1 = a1 - a0;
                const double d2 = a2 - 2.0 * a1 + a0;
                const std::size_t slot = static_cast<std::size_t>(k);
                total.add(a0 * wf.w0[slot] + d1 * wf.w1[slot] / h +
                          0.5 * d2 * (wf.w2[slot] / (h * h) - wf.w1[slot] / h));
                a0 = a1;
                a1 = a2;
            }
        }
        out.values[static_cast<std::size_t>(m)] = total.value();
    }

    // Tail: the result's small-x exponent set is the union of the input
    // exponent sets (the simple poles of the product of the two Mellin
    // transforms), so only the coefficients need fitting. A single fitted
    // exponent would misrepresent multi-exponent mixtures and leak tail
    // mass; the oracle pipeline still replaces this fit with exact
    // residue data after every step.
    {
        std::vector<double> exponents;
        for (const TailTerm& term : f.tail) exponents.push_back(term.exponent);
        for (const TailTerm& term : g.tail) exponents.push_back(term.exponent);
        std::sort(exponents.begin(), exponents.end());
        exponents.erase(
            std::unique(exponents.begin(), exponents.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-6; }),
            exponents.end());
        if (exponents.size() > 4) exponents.resize(4);  // most negative dominate
        out.tail = fit_tail_coefficients(out, exponents);
        if (out.tail.empty()) {
            // Last-resort single-term fit from the far values.
            std::vector<double> us, logs;
            bool positive = true;
            for (int i = cells - 64; i <= cells; i += 8) {
                const double value = out.values[static_cast<std::size_t>(i)];
                if (!(value > 0.0)) {
                    positive = false;
                    break;
                }
                us.push_back(i * h);
                logs.push_back(std::log(value));
            }
            if (positive) {
                double slope = 0.0, intercept = 0.0;
                fit_line(us, logs, &slope, &intercept);
                out.tail = {{-slope, std::exp(intercept)}};
            }
        }
    }
    return out;
}

double mellin_mass(const MellinDensity& f) {
    const double h = MellinDensity::step();
    const int edge = MellinDensity::kEdgeCells;
    const int cells = MellinDensity::kCells;
    // Simpson would leak an h^4 u^{beta-3} boundary term if it started
    // right where the edge model stops, so a singular-weighted strip
    // bridges the gap until u is comfortably away from the singularity.
    const int bridge = 64;

    // Analytic edge piece: integral of c u^beta (1 + d u + e u^2 + f3 u^3)
    // e^{-u} over [0, edge * h], expanding e^{-u} through u^5.
    const double eps = edge * h;
    const double beta = f.edge_beta;
    const double d = f.edge_d;
    const double e = f.edge_e;
    const double f3 = f.edge_f;
    const double poly[6] = {1.0,
                            d - 1.0,
                            e - d + 0.5,
                            f3 - e + 0.5 * d - 1.0 / 6.0,
                            -f3 + 0.5 * e - d / 6.0 + 1.0 / 24.0,
                            0.5 * f3 - e / 6.0 + d / 24.0 - 1.0 / 120.0};
    double edge_mass = 0.0;
    for (int m = 5; m >= 0; --m) {
        const double power = beta + m + 1.0;
        edge_mass += poly[m] * std::pow(eps, power) / power;
    }
    edge_mass *= f.edge_c;

    // Bridge strip: integrate u^beta times a quadratic interpolant of
    // f(e^{-u}) e^{-u} / u^beta over cells [edge, bridge).
    const SingularWeights weights = singular_weights(beta, bridge, h);
    auto smooth_node = [&](int k) {
        const double u = k * h;
        return f.values[static_cast<std::size_t>(k)] * std::pow(u, -beta) * std::exp(-u);
    };
    CompensatedSum bulk;
    double s0 = smooth_node(edge);
    double s1 = smooth_node(edge + 1);
    for (int k = edge; k < bridge; ++k) {
        const double s2 = smooth_node(k + 2);
        const double d1 = s1 - s0;
        const double d2 = s2 - 2.0 * s1 + s0;
        const std::size_t slot = static_cast<std::size_t>(k);
        bulk.add(s0 * weights.w0[slot] + d1 * weights.w1[slot] / h +
                 0.5 * d2 * (weights.w2[slot] / (h * h) - weights.w1[slot] / h));
        s0 = s1;
        s1 = s2;
    }

    // Simpson on the remaining grid (an odd cell count hands the last
    // three cells to the 3/8 rule).
    auto integrand = [&](int i) {
        const double u = i * h;
        return f.values[static_cast<std::size_t>(i)] * std::exp(-u);
    };
    int last = cells;
    if ((cells - bridge) % 2 != 0) {
        last = cells - 3;
        bulk.add(3.0 * h / 8.0 *
                 (integrand(last) + 3.0 * integrand(last + 1) + 3.0 * integrand(last + 2) +
                  integrand(last + 3)));
    }
    for (int i = bridge; i < last; i += 2) {
        bulk.add(h / 3.0 * (integrand(i) + 4.0 * integrand(i + 1) + integrand(i + 2)));
    }

    // Analytic tail below the grid: integral over (0, x0] of the small-x
    // expansion, x0 = exp(-kLogRange).
    const double x0 = std::exp(-MellinDensity::kLogRange);
    double tail_mass = 0.0;
    for (const TailTerm& term : f.tail) {
        tail_mass += term.coeff * std::pow(x0, 1.0 + term.exponent) / (1.0 + term.exponent);
    }
    return edge_mass + bulk.value() + tail_mass;
}

GridFunction sample_mellin(const MellinDensity& f, int grid_size) {
    if (grid_size < 64) throw DomainError("sample grid needs at least 64 points");
    if (grid_size > MellinDensity::kCells) {
        throw DomainError("sample grid cannot exceed the internal resolution");
    }
    GridFunction out;
    out.upper = 1.0;
    out.grid.resize(static_cast<std::size_t>(grid_size));
    out.values.resize(static_cast<std::size_t>(grid_size));
    const double du = MellinDensity::kLogRange / grid_size;
    for (int j = 1; j <= grid_size; ++j) {
        const double u = j * du;
        const std::size_t slot = static_cast<std::size_t>(grid_size - j);
        out.grid[slot] = std::exp(-u);
        out.values[slot] = f.value_at_u(u);
    }
    return out;
}

MellinDensity mellin_from_samples(const GridFunction& f) {
    const std::size_t n = f.grid.size();
    if (n < 64) throw DomainError("sampled function needs at least 64 points");
    if (f.values.size() != n) throw DomainError("grid and value lengths differ");
    if (std::abs(f.upper - 1.0) > 1e-12) {
        throw DomainError("sampled convolution inputs must be supported in (0, 1]");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(f.values[i]) || f.values[i] < 0.0) {
            throw DomainError("sampled density values must be finite and non-negative");
        }
        if (!(f.grid[i] > 0.0) || !(f.grid[i] < 1.0)) {
            throw DomainError("sample grid must lie strictly inside (0, 1)");
        }
        if (i > 0 && !(f.grid[i] > f.grid[i - 1])) {
            throw DomainError("sample grid must be strictly increasing");
        }
    }

    // Ascending in u = -ln x (reverse of the x order).
    std::vector<double> u_in(n), v_in(n);
    for (std::size_t i = 0; i < n; ++i) {
        u_in[i] = -std::log(f.grid[n - 1 - i]);
        v_in[i] = f.values[n - 1 - i];
    }

    MellinDensity out;
    // Edge model fitted from the samples nearest x = 1 by linearizing
    //   ln v = ln c + beta ln u + d u + (e - d^2/2) u^2,
    // which recovers the full third-order model. A bare power-law fit
    // would bias the exponent by O(d u) over the fitting window, and that
    // bias blows up once the model is extrapolated toward u = 0.
    {
        std::vector<double> us, ys;
        for (std::size_t i = 0; i < 8 && i < n; ++i) {
            if (v_in[i] > 0.0) {
                us.push_back(u_in[i]);
                ys.push_back(std::log(v_in[i]));
            }
        }
        bool fitted = false;
        if (us.size() >= 5) {
            const double uscale = us.back();
            double gram[4][4] = {};
            double rhs[4] = {};
            for (std::size_t i = 0; i < us.size(); ++i) {
                const double t = us[i] / uscale;
                const double basis[4] = {1.0, std::log(t), t, t * t};
                for (int row = 0; row < 4; ++row) {
                    for (int col = 0; col < 4; ++col) gram[row][col] += basis[row] * basis[col];
                    rhs[row] += basis[row] * ys[i];
                }
            }
            double coef[4] = {};
            if (solve4(gram, rhs, coef)) {
                out.edge_beta = coef[1];
                out.edge_c = std::exp(coef[0] - coef[1] * std::log(uscale));
                out.edge_d = coef[2] / uscale;
                out.edge_e = coef[3] / (uscale * uscale) + 0.5 * out.edge_d * out.edge_d;
                fitted = std::isfinite(out.edge_c) && std::isfinite(out.edge_beta);
            }
        }
        if (!fitted) {
            std::vector<double> xs, ys2;
            for (std::size_t i = 0; i < 6 && i < n; ++i) {
                if (v_in[i] > 0.0) {
                    xs.push_back(std::log(u_in[i]));
                    ys2.push_back(std::log(v_in[i]));
                }
            }
            if (xs.size() >= 2) {
                double slope = 0.0, intercept = 0.0;
                fit_line(xs, ys2, &slope, &intercept);
                out.edge_beta = slope;
                out.edge_c = std::exp(intercept);
            } else {
                out.edge_beta = 0.0;
                out.edge_c = v_in.front();
            }
        }
    }
    // Single-term tail fitted from the samples nearest x = 0.
    {
        std::vector<double> xs, ys;
        for (std::size_t i = n - std::min<std::size_t>(6, n); i < n; ++i) {
            if (v_in[i] > 0.0) {
                xs.push_back(u_in[i]);
                ys.push_back(std::log(v_in[i]));
            }
        }
        if (xs.size() >= 2) {
            double slope = 0.0, intercept = 0.0;
            fit_line(xs, ys, &slope, &intercept);
            out.tail = {{-slope, std::exp(intercept)}};
        }
    }

    // Interpolate in psi = v u^{-beta} space: the raw values keep their
    // algebraic edge behaviour well past the first few samples, and a
    // straight line through v itself would be percent-level wrong there.
    std::vector<double> psi_in(n);
    for (std::size_t i = 0; i < n; ++i) {
        psi_in[i] = v_in[i] * std::pow(u_in[i], -out.edge_beta);
    }

    const double h = MellinDensity::step();
    out.values.assign(MellinDensity::kCells + 1, 0.0);
    for (int i = 1; i <= MellinDensity::kCells; ++i) {
        const double u = i * h;
        double value;
        if (i < MellinDensity::kEdgeCells || u < u_in.front()) {
            value = edge_value(out, u);
        } else if (u > u_in.back()) {
            value = tail_value(out, u);
        } else {
            const auto it = std::lower_bound(u_in.begin(), u_in.end(), u);
            const std::size_t hi = static_cast<std::size_t>(it - u_in.begin());
            if (hi == 0) {
                value = v_in.front();
            } else {
                const double frac = (u - u_in[hi - 1]) / (u_in[hi] - u_in[hi - 1]);
                const double psi = (1.0 - frac) * psi_in[hi - 1] + frac * psi_in[hi];
                value = psi * std::pow(u, out.edge_beta);
            }
        }
        out.values[static_cast<std::size_t>(i)] = value;
    }
    return out;
}

GridFunction mellin_convolve(const GridFunction& f, const GridFunction& g) {
    const MellinDensity lhs = mellin_from_samples(f);
    const MellinDensity rhs = mellin_from_samples(g);
    return sample_mellin(mellin_convolve(lhs, rhs), 1024);
}

namespace {

/**
 * Exact small-x expansion of the convolution of a prefix of factors, one
 * term per factor, from the residues of the product of their Mellin
 * transforms prod Gamma(sigma + a_k) / Gamma(sigma + b_k) at sigma = -a_k.
 * A pole of a denominator Gamma kills that residue exactly.
 */
std::vector<TailTerm> residue_tail(const std::vector<BetaFactor>& factors) {
    std::vector<TailTerm> tail;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const double ak = factors[k].a;
        double log_abs = 0.0;
        int sign = 1;
        bool zero = false;
        try {
            for (std::size_t l = 0; l < factors.size(); ++l) {
                if (l != k) {
                    const SignedLogGamma num = signed_log_gamma(factors[l].a - ak);
                    log_abs += num.log_abs;
                    sign *= num.sign;
                }
                const SignedLogGamma den = signed_log_gamma(factors[l].b - ak);
                log_abs -= den.log_abs;
                sign *= den.sign;
            }
        } catch (const PoleError&) {
            zero = true;
        }
        if (!zero) tail.push_back({ak, sign * std::exp(log_abs)});
    }
    std::sort(tail.begin(), tail.end(),
              [](const TailTerm& x, const TailTerm& y) { return x.exponent < y.exponent; });
    return tail;
}

double density_prefactor(const DensitySpec& spec) {
    if (spec.family == Family::fuss_catalan) {
        const double s = spec.s;
        return std::exp((s - 1.5) * std::log(s) - (s + 0.5) * std::log(s + 1.0)) /
               std::sqrt(2.0 * kPi);
    }
    const double p = spec.p;
    const double r = spec.r;
    return r * std::exp((r - p - 0.5) * std::log(p) - (r - p + 1.5) * std::log(p - 1.0)) /
           std::sqrt(2.0 * kPi);
}

}  // namespace

GridFunction oracle_density(const DensitySpec& spec, int grid_size) {
    if (grid_size < 256) throw DomainError("oracle grid needs at least 256 points");
    const std::vector<BetaFactor> factors = factor_list(spec);

    MellinDensity current = mellin_from_beta(factors[0]);
    double exact_mass = beta_factor_mass(factors[0]);
    std::vector<BetaFactor> prefix = {factors[0]};
    for (std::size_t i = 1; i < factors.size(); ++i) {
        current = mellin_convolve(current, mellin_from_beta(factors[i]));
        prefix.push_back(factors[i]);
        current.tail = residue_tail(prefix);
        exact_mass *= beta_factor_mass(factors[i]);
        const double drift = std::abs(mellin_mass(current) / exact_mass - 1.0);
        if (drift > kMassDriftTolerance) {
            throw ConvergenceError("convolution mass drifted beyond tolerance after step " +
                                       std::to_string(i),
                                   drift);
        }
    }

    GridFunction unit = sample_mellin(current, grid_size);
    const double prefactor = density_prefactor(spec);
    GridFunction out;
    out.upper = spec.support_upper;
    out.grid.resize(unit.grid.size());
    out.values.resize(unit.values.size());
    for (std::size_t j = 0; j < unit.grid.size(); ++j) {
        out.grid[j] = spec.support_upper * unit.grid[j];
        out.values[j] = prefactor * unit.values[j];
    }
    return out;
}

OracleComparison compare_oracle_to_direct(const DensitySpec& spec, int grid_size) {
    OracleComparison result;
    result.oracle = oracle_density(spec, grid_size);
    const std::size_t n = result.oracle.grid.size();
    result.direct.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        result.direct[j] = density_value(spec, result.oracle.grid[j]);
    }
    result.min_oracle_value =
        *std::min_element(result.oracle.values.begin(), result.oracle.values.end());

    const double lo = 0.05 * spec.support_upper;
    const double hi = 0.95 * spec.support_upper;
    CompensatedSum diff, norm;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = result.oracle.grid[j];
        if (x < lo || x > hi) continue;
        const double left = (j == 0) ? x : std::max(result.oracle.grid[j - 1], lo);
        const double right = (j + 1 == n) ? hi : std::min(result.oracle.grid[j + 1], hi);
        const double weight = 0.5 * (right - left);
        diff.add(weight * std::abs(result.oracle.values[j] - result.direct[j]));
        norm.add(weight * std::abs(result.direct[j]));
    }
    result.rel_l1_central = diff.value() / norm.value();
    return result;
}

}  // namespace fcraney
