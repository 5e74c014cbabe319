#include "fcraney/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "fcraney/compensated.hpp"
#include "fcraney/errors.hpp"

namespace fcraney {

namespace {

// 15-point Kronrod extension of 7-point Gauss-Legendre on [-1, 1];
// symmetric, so only non-negative abscissae are tabulated. The embedded
// Gauss nodes are the odd-indexed abscissae plus the center: index i of
// {1, 3, 5, 7} carries Gauss weight kGaussWeights[i / 2].
constexpr double kAbscissae[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a, b, integral, error;
};

struct SegmentWorse {
    bool operator()(const Segment& lhs, const Segment& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.a > rhs.a;  // deterministic tie-break
    }
};

Segment evaluate_segment(const std::function<double(double)>& f, double a, double b) {
    double center = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    double gauss = 0.0, kronrod = 0.0;
    for (int i = 0; i < 8; ++i) {
        double value = (i == 7) ? f(center)
                                : f(center - half * kAbscissae[i]) +
                                      f(center + half * kAbscissae[i]);
        kronrod += kKronrodWeights[i] * value;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * value;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& options) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw DomainError("adaptive_integrate: need a <= b");
    }
    std::priority_queue<Segment, std::vector<Segment>, SegmentWorse> queue;
    Segment whole = evaluate_segment(f, a, b);
    double total = whole.integral;
    double total_error = whole.error;
    queue.push(whole);
    int intervals = 1;
    while (total_error > std::max(options.abs_tol, options.rel_tol * std::abs(total))) {
        if (intervals >= options.max_intervals)
            throw ConvergenceError("adaptive_integrate: interval budget exhausted",
                                   total_error);
        Segment worst = queue.top();
        queue.pop();
        double mid = 0.5 * (worst.a + worst.b);
        Segment left = evaluate_segment(f, worst.a, mid);
        Segment right = evaluate_segment(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }
    // Re-sum in deterministic order to shed drift accumulated by the
    // incremental updates.
    CompensatedSum sum;
    std::vector<Segment> segments;
    segments.reserve(intervals);
    while (!queue.empty()) {
        segments.push_back(queue.top());
        queue.pop();
    }
    for (const Segment& segment : segments) sum.add(segment.integral);
    return sum.value();
}

}  // namespace fcraney
