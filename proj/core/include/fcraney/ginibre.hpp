#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace fcraney {

enum class Ensemble { complex_entries, real_entries };

/**
 * Configuration of a product-matrix Monte-Carlo run: s independent N x N
 * Gaussian matrices are multiplied, the squared singular values of the
 * product are rescaled by N^{-s}, and the resulting spectrum is compared
 * against the order-s Fuss-Catalan density. The seed fully determines the
 * output, independently of the thread count.
 */
struct MCConfig {
    int s = 1;
    int matrix_size = 256;  // N >= 8
    int samples = 100;      // >= 1
    Ensemble ensemble = Ensemble::complex_entries;
    std::uint64_t seed = 0;
    int bins = 40;          // >= 10
};

/// Throws DomainError listing every violated configuration invariant.
void validate_mc_config(const MCConfig& config);

/**
 * Dense N x N matrix in column-major order; the real ensemble stores
 * entries with zero imaginary part.
 */
struct GinibreMatrix {
    int size = 0;
    std::vector<std::complex<double>> entries;
};

/**
 * One Gaussian random matrix: complex ensemble entries have independent
 * real and imaginary parts each Normal(0, 1/2), so E|g|^2 = 1; real
 * ensemble entries are Normal(0, 1). Uses an internal Box-Muller
 * transform so the stream depends only on the engine, not on library
 * implementation details of std::normal_distribution.
 */
GinibreMatrix sample_ginibre(int n, Ensemble ensemble, std::mt19937_64& rng);

struct ProductSamples {
    std::vector<double> values;  // N per successful sample, in sample order
    int failed_samples = 0;      // decompositions that failed and were skipped
};

/**
 * Squared singular values of products of s Gaussian matrices, rescaled by
 * N^{-s} so the empirical moments converge to the Fuss-Catalan numbers.
 * Each sample draws its own generator from (seed, sample index), which
 * makes the output bit-identical for any thread count (0 = auto).
 */
ProductSamples product_squared_singular_values(const MCConfig& config, int threads = 0);

struct MCRunReport {
    MCConfig config;
    std::vector<double> empirical_moments;  // n = 0..6
    std::vector<double> moment_std_errors;  // standard error of each moment
    std::vector<double> bin_edges;          // bins + 1 edges spanning [0, K_s]
    std::vector<double> empirical_mass;     // bins + 1 (last = overflow above K_s)
    std::vector<double> theory_mass;        // density bin integrals; overflow = 0
    double l1_distance = 0.0;               // sum over bins of |empirical - theory|
    double ks_distance = 0.0;               // sup over bin edges of |CDF difference|
    long long negative_count = 0;           // rescaled values below zero (always 0)
    int failed_samples = 0;
};

/**
 * Histogram-and-moment comparison of arbitrary non-negative samples
 * against the order-s Fuss-Catalan density. values_per_group > 0 groups
 * consecutive values (one matrix sample each) so moment standard errors
 * come from the across-sample variance; 0 treats values as independent.
 */
MCRunReport empirical_vs_theory(const std::vector<double>& samples, int s, int bins,
                                int values_per_group = 0);

/// Full pipeline: sampling, histogramming, moments, distances.
MCRunReport run_monte_carlo(const MCConfig& config, int threads = 0);

}  // namespace fcraney
