#pragma once

#include <vector>

#include "fcraney/errors.hpp"

namespace fcraney {

// Parameter lists of a generalized hypergeometric series pFq.
struct HyperGeomParams {
    std::vector<double> upper;  // a_1 .. a_p
    std::vector<double> lower;  // b_1 .. b_q
};

// How close to z = 1 the series is still evaluated when p == q + 1; beyond
// this the series cost diverges and EdgeRegionError is thrown.
inline constexpr double kHyperEdgeMargin = 1e-6;

// Series evaluation of pFq(a; b; z) by the term-ratio recurrence with
// compensated summation. Terminates when three consecutive terms fall below
// 1e-16 of the partial sum; hard cap 100000 terms.
//
// Requirements: p <= q + 1; no lower parameter may be a non-positive integer
// (PoleError). A non-positive-integer upper parameter terminates the series
// and lifts all |z| restrictions. Otherwise |z| <= 1 is required when
// p == q + 1 (DomainError), and z within kHyperEdgeMargin of 1 is refused
// (EdgeRegionError). Failure to converge under the cap raises
// ConvergenceError carrying the last relative term size.
double hypergeometric_pfq(const HyperGeomParams& params, double z);

}  // namespace fcraney
