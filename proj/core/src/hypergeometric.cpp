#include "fcraney/hypergeometric.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "fcraney/compensated.hpp"

namespace fcraney {

namespace {

constexpr int kMaxTerms = 100000;
constexpr double kRelStop = 1e-16;
constexpr int kConsecutiveStops = 3;

bool is_nonpositive_integer(double v) {
    return v <= 0.0 && v == std::floor(v);
}

}  // namespace

double hypergeometric_pfq(const HyperGeomParams& params, double z) {
    const auto& a = params.upper;
    const auto& b = params.lower;
    if (a.size() > b.size() + 1)
        throw DomainError("hypergeometric_pfq: p > q + 1 diverges for z != 0");
    for (double bj : b)
        if (is_nonpositive_integer(bj))
            throw PoleError("hypergeometric_pfq: lower parameter " +
                            std::to_string(bj) + " is a non-positive integer");
    bool terminating = false;
    for (double ai : a) terminating = terminating || is_nonpositive_integer(ai);

    if (!terminating && a.size() == b.size() + 1) {
        if (std::abs(z) > 1.0)
            throw DomainError("hypergeometric_pfq: |z| > 1 outside the disc of convergence");
        if (z > 1.0 - kHyperEdgeMargin)
            throw EdgeRegionError("hypergeometric_pfq: z within " +
                                  std::to_string(kHyperEdgeMargin) +
                                  " of the z = 1 edge");
    }

    CompensatedSum sum;
    double term = 1.0;
    sum.add(term);
    int quiet = 0;
    for (int n = 0; n < kMaxTerms; ++n) {
        double ratio = z / (n + 1.0);
        for (double ai : a) ratio *= ai + n;
        for (double bj : b) ratio /= bj + n;
        term *= ratio;
        if (term == 0.0) return sum.value();  // terminated exactly
        sum.add(term);
        if (std::abs(term) < kRelStop * std::abs(sum.value())) {
            if (++quiet >= kConsecutiveStops) return sum.value();
        } else {
            quiet = 0;
        }
    }
    double achieved = std::abs(term) / std::max(std::abs(sum.value()), 1e-300);
    throw ConvergenceError(
        "hypergeometric_pfq: series not converged after " +
            std::to_string(kMaxTerms) + " terms (last relative term " +
            std::to_string(achieved) + ")",
        achieved);
}

}  // namespace fcraney
