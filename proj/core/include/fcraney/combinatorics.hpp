#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "fcraney/family.hpp"

namespace fcraney {

/**
 * Identifies an integer sequence: Fuss-Catalan of order s (s >= 1) or
 * Raney with parameters (p, r), p >= 2, r >= 1.
 */
struct SequenceSpec {
    Family family;
    int s = 0;
    int p = 0;
    int r = 0;
};

/**
 * Exact non-negative integer count. Backed by GMP because the sequences
 * grow superexponentially: Fuss-Catalan numbers of order 6 exceed 2^64
 * already near n = 20.
 */
using BigCount = mpz_class;

/// Exact binomial coefficient C(n, k).
BigCount binomial(unsigned long n, unsigned long k);

/**
 * Fuss-Catalan number FC_s(n) = C((s+1) n, n) / (s n + 1).
 *
 * Requires s >= 1 and n >= 0. The division is exact; this is asserted
 * internally rather than silently truncated.
 */
BigCount fuss_catalan_number(int s, int n);

/**
 * Raney number R_{p,r}(n) = r * C(p n + r, n) / (p n + r).
 *
 * Requires p >= 2, r >= 1, n >= 0. The division is exact.
 * R_{s+1,1}(n) == fuss_catalan_number(s, n) for all n.
 */
BigCount raney_number(int p, int r, int n);

/// Value of the sequence identified by spec at index n.
BigCount sequence_value(const SequenceSpec& spec, int n);

/**
 * Raney moment for real parameters,
 *
 *   W_n(p, r) = [r / (n p + r)] * Gamma(n p + r + 1)
 *               / (Gamma(n + 1) * Gamma(n p + r - n + 1)).
 *
 * Defined for (p, r) with p >= 0 and 0 < r <= p; outside this region the
 * moment sequence is not positive definite and the call throws
 * ParameterRegionError. Evaluated in log space so large n does not
 * overflow prematurely; `overflow` is set when the value itself exceeds
 * double range (log_value stays finite).
 */
struct RealMoment {
    double value;
    double log_value;
    bool overflow;
};

RealMoment raney_moment_real(double p, double r, int n);

/**
 * One row of an exact identity check between integer sequences.
 */
struct RelationRow {
    int n;
    std::string identity;
    BigCount lhs;
    BigCount rhs;
    bool equal;
};

struct RelationReport {
    std::vector<RelationRow> rows;
    bool all_equal;
};

/**
 * Verifies, exactly and term by term for n = 0..n_max, the lattice of
 * identities tying Raney numbers to Fuss-Catalan numbers:
 *
 *   R_{p,1}(n)   = FC_{p-1}(n)
 *   R_{p,p}(n)   = FC_{p-1}(n + 1)
 *   R_{p,p}(n)   = R_{p,1}(n + 1)
 *
 * Requires p >= 2 (so that the Fuss-Catalan order p - 1 is >= 1).
 */
RelationReport check_raney_relations(int p, int n_max);

}  // namespace fcraney
