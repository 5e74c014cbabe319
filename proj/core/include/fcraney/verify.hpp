#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fcraney {

struct CheckResult {
    std::string name;
    bool passed = false;
    double achieved = 0.0;  // worst observed error / distance for the check
    double bound = 0.0;     // threshold it was held against
    std::string detail;     // non-empty when something failed or was skipped
};

struct VerificationSummary {
    std::vector<CheckResult> checks;
    bool all_passed = false;
};

/**
 * Knobs for the end-to-end verification sweep. lambda_corruption is a test
 * hook: a nonzero value is added to the leading coefficient of the order-2
 * density before its moment check, which must make the sweep fail — it
 * exists so the test suite can prove the sweep actually detects a broken
 * coefficient table, and it is deliberately not reachable from the CLI.
 */
struct VerificationOptions {
    std::uint64_t mc_seed = 20240915ULL;
    int mc_matrix_size = 128;
    int mc_samples = 40;
    int threads = 0;
    double lambda_corruption = 0.0;
};

/**
 * Runs every cross-check the library offers at a desk-scale budget:
 * exact integer-sequence relations, moment verification for both families
 * across their supported ranges, convolution-oracle comparisons,
 * closed-form equivalences, and a short seeded Monte-Carlo run plus a
 * bit-identical determinism replay. Individual failures are collected,
 * never fail-fast, so one broken check cannot mask another.
 */
VerificationSummary full_verification_suite(const VerificationOptions& options = {});

}  // namespace fcraney
