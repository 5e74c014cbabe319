#pragma once

#include <vector>

#include "fcraney/hypergeometric.hpp"
#include "fcraney/rational.hpp"

namespace fcraney::detail {

/**
 * Converts exact-rational parameter lists to floating point after removing
 * every upper/lower pair that is exactly equal (such a pair contributes a
 * factor of 1 to every series term, and removing it symbolically is the
 * only safe way to clear the spurious pole a matching non-positive-integer
 * lower parameter would otherwise raise).
 */
inline HyperGeomParams make_reduced_params(std::vector<Rational> upper,
                                           std::vector<Rational> lower) {
    for (auto up = upper.begin(); up != upper.end();) {
        bool cancelled = false;
        for (auto low = lower.begin(); low != lower.end(); ++low) {
            if (*up == *low) {
                lower.erase(low);
                up = upper.erase(up);
                cancelled = true;
                break;
            }
        }
        if (!cancelled) ++up;
    }
    HyperGeomParams params;
    params.upper.reserve(upper.size());
    params.lower.reserve(lower.size());
    for (const Rational& value : upper) params.upper.push_back(value.to_double());
    for (const Rational& value : lower) params.lower.push_back(value.to_double());
    return params;
}

/// Exact integer power for small support-bound computations.
inline double ipow(int base, int exponent) {
    double result = 1.0;
    for (int i = 0; i < exponent; ++i) result *= base;
    return result;
}

}  // namespace fcraney::detail
