#include "fcraney/density.hpp"

#include <cmath>

#include "fcraney/compensated.hpp"
#include "fcraney/errors.hpp"

namespace fcraney {

double density_value(const DensitySpec& spec, double x) {
    if (!(x > 0.0) || x > spec.support_upper)
        throw DomainError("density_value: x outside the support (0, K]");
    if (x > spec.support_upper * (1.0 - kHyperEdgeMargin))
        throw EdgeRegionError(
            "density_value: x within the edge band of the support; use the "
            "edge model or quadrature substitution");
    CompensatedSum total;
    for (const HyperGeomTerm& term : spec.terms) {
        double z = x * term.argument_scale;
        total.add(term.coefficient * std::pow(x, term.power_exponent) *
                  hypergeometric_pfq(term.params, z));
    }
    return total.value();
}

namespace {

// Solves the n x n system A y = b in place by Gaussian elimination with
// partial pivoting. Small fixed sizes only (edge fit: 6, slope fit: 3).
template <int N>
std::array<double, N> solve_linear(std::array<std::array<double, N>, N> a,
                                   std::array<double, N> b) {
    for (int col = 0; col < N; ++col) {
        int pivot = col;
        for (int row = col + 1; row < N; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        if (a[col][col] == 0.0) throw Error("solve_linear: singular system");
        for (int row = col + 1; row < N; ++row) {
            double factor = a[row][col] / a[col][col];
            for (int k = col; k < N; ++k) a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }
    std::array<double, N> y{};
    for (int row = N - 1; row >= 0; --row) {
        double acc = b[row];
        for (int k = row + 1; k < N; ++k) acc -= a[row][k] * y[k];
        y[row] = acc / a[row][row];
    }
    return y;
}

constexpr double kEdgeStripFraction = 1e-3;

}  // namespace

EdgeModel fit_edge_model(const DensitySpec& spec) {
    return fit_edge_model([&spec](double x) { return density_value(spec, x); },
                          spec.support_upper);
}

EdgeModel fit_edge_model(const std::function<double(double)>& density,
                         double support_upper) {
    // Fit nodes just outside the strip, where direct evaluation still
    // converges comfortably: gap/K in 1e-3 * {1, 1.45, ..., 3.25}.
    std::array<double, 6> gaps;
    std::array<std::array<double, 6>, 6> design;
    std::array<double, 6> rhs;
    for (int i = 0; i < 6; ++i) {
        gaps[i] = support_upper * kEdgeStripFraction * (1.0 + 0.45 * i);
        rhs[i] = density(support_upper - gaps[i]);
        for (int m = 0; m < 6; ++m) design[i][m] = std::pow(gaps[i], 0.5 * (m + 1));
    }
    EdgeModel model;
    model.support_upper = support_upper;
    model.strip_start = support_upper * (1.0 - kEdgeStripFraction);
    model.coeff = solve_linear<6>(design, rhs);
    return model;
}

double edge_model_value(const EdgeModel& model, double x) {
    if (x < model.strip_start || x > model.support_upper)
        throw DomainError("edge_model_value: x outside the edge strip");
    double gap = model.support_upper - x;
    double value = 0.0;
    for (int m = 0; m < 6; ++m) value += model.coeff[m] * std::pow(gap, 0.5 * (m + 1));
    return value;
}

double edge_model_integral(const EdgeModel& model, double a, double b) {
    if (a > b) throw DomainError("edge_model_integral: need a <= b");
    if (a < model.strip_start || b > model.support_upper)
        throw DomainError("edge_model_integral: bounds outside the edge strip");
    // Antiderivative in gap = K - x: each power gap^{(m+1)/2} integrates to
    // gap^{(m+3)/2} / ((m+3)/2), and dx = -d(gap).
    double gap_a = model.support_upper - a;
    double gap_b = model.support_upper - b;
    double value = 0.0;
    for (int m = 0; m < 6; ++m) {
        double power = 0.5 * (m + 3);
        value += model.coeff[m] * (std::pow(gap_a, power) - std::pow(gap_b, power)) / power;
    }
    return value;
}

DensitySample density_value_extended(const DensitySpec& spec, const EdgeModel& model,
                                     double x) {
    if (x > model.strip_start) return {edge_model_value(model, x), true};
    return {density_value(spec, x), false};
}

double fitted_small_x_slope(const DensitySpec& spec) {
    constexpr int kPoints = 30;
    constexpr double kXLow = 1e-8, kXHigh = 1e-5;
    double delta = spec.family == Family::fuss_catalan ? 1.0 / (spec.s + 1) : 1.0 / spec.p;
    std::array<std::array<double, 3>, 3> normal{};
    std::array<double, 3> rhs{};
    for (int i = 0; i < kPoints; ++i) {
        double log_x = std::log(kXLow) +
                       (std::log(kXHigh) - std::log(kXLow)) * i / (kPoints - 1);
        double x = std::exp(log_x);
        double value = density_value(spec, x);
        if (!(value > 0.0))
            throw DomainError("fitted_small_x_slope: density not positive near zero");
        std::array<double, 3> row = {1.0, log_x, std::pow(x, delta)};
        double y = std::log(value);
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) normal[a][b] += row[a] * row[b];
            rhs[a] += row[a] * y;
        }
    }
    return solve_linear<3>(normal, rhs)[1];
}

}  // namespace fcraney
