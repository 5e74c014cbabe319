#pragma once

#include <functional>

namespace fcraney {

struct QuadratureOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-12;
    int max_intervals = 4096;
};

/**
 * Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]: bisects the
 * worst interval until the summed error estimate meets
 * max(abs_tol, rel_tol * |integral|) or the interval budget is exhausted,
 * in which case ConvergenceError carries the achieved estimate. All nodes
 * are interior, so f is never evaluated at a or b. Deterministic for a
 * deterministic f.
 */
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& options = {});

}  // namespace fcraney
