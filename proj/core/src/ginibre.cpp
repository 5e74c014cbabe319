#include "fcraney/ginibre.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <type_traits>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "fcraney/compensated.hpp"
#include "fcraney/errors.hpp"
#include "fcraney/fc_density.hpp"
#include "fcraney/moments.hpp"

namespace fcraney {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490393;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Standard-normal generator (Box-Muller) with the usual spare caching.
class NormalSampler {
public:
    explicit NormalSampler(std::mt19937_64& rng) : rng_(rng) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // (0, 1] for the radius draw so the logarithm stays finite.
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(kTwoPi * u2);
        has_spare_ = true;
        return radius * std::cos(kTwoPi * u2);
    }

private:
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64& rng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::mt19937_64 sample_engine(std::uint64_t seed, int sample_index) {
    const std::uint64_t stream =
        seed ^ (static_cast<std::uint64_t>(sample_index) * 0x9E3779B97F4A7C15ULL);
    return std::mt19937_64(splitmix64(stream));
}

/// Squared singular values of one product, rescaled by N^{-s}; false on
/// decomposition failure.
template <typename Matrix>
bool one_sample(const MCConfig& config, std::mt19937_64& rng, std::vector<double>* out) {
    const int n = config.matrix_size;
    NormalSampler normal(rng);
    Matrix product;
    for (int factor = 0; factor < config.s; ++factor) {
        Matrix g(n, n);
        for (int col = 0; col < n; ++col) {
            for (int row = 0; row < n; ++row) {
                if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
                    g(row, col) = normal();
                } else {
                    const double re = normal();
                    const double im = normal();
                    g(row, col) = std::complex<double>(re * kInvSqrt2, im * kInvSqrt2);
                }
            }
        }
        product = (factor == 0) ? std::move(g) : Matrix(g * product);
    }
    Eigen::BDCSVD<Matrix> svd(product);
    if (svd.info() != Eigen::Success) return false;
    const double scale = std::pow(static_cast<double>(n), config.s);
    out->resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double sigma = svd.singularValues()(i);
        (*out)[static_cast<std::size_t>(i)] = sigma * sigma / scale;
    }
    return true;
}

}  // namespace

void validate_mc_config(const MCConfig& config) {
    std::string problems;
    auto complain = [&](const std::string& text) {
        if (!problems.empty()) problems += "; ";
        problems += text;
    };
    if (config.s < 1) complain("factor count s must be at least 1");
    if (config.matrix_size < 8) complain("matrix size must be at least 8");
    if (config.samples < 1) complain("sample count must be at least 1");
    if (config.bins < 10) complain("histogram needs at least 10 bins");
    if (!problems.empty()) throw DomainError(problems);
}

GinibreMatrix sample_ginibre(int n, Ensemble ensemble, std::mt19937_64& rng) {
    if (n < 1) throw DomainError("matrix size must be positive");
    GinibreMatrix matrix;
    matrix.size = n;
    matrix.entries.resize(static_cast<std::size_t>(n) * n);
    NormalSampler normal(rng);
    for (auto& entry : matrix.entries) {
        if (ensemble == Ensemble::real_entries) {
            entry = normal();
        } else {
            const double re = normal();
            const double im = normal();
            entry = std::complex<double>(re * kInvSqrt2, im * kInvSqrt2);
        }
    }
    return matrix;
}

ProductSamples product_squared_singular_values(const MCConfig& config, int threads) {
    validate_mc_config(config);
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads < 1) threads = 1;
    }
    threads = std::min(threads, config.samples);

    // Disjoint per-sample slots keep the result independent of scheduling.
    std::vector<std::vector<double>> slots(static_cast<std::size_t>(config.samples));
    std::vector<char> failed(static_cast<std::size_t>(config.samples), 0);
    auto worker = [&](int first) {
        for (int idx = first; idx < config.samples; idx += threads) {
            std::mt19937_64 rng = sample_engine(config.seed, idx);
            bool ok;
            if (config.ensemble == Ensemble::real_entries) {
                ok = one_sample<Eigen::MatrixXd>(config, rng,
                                                 &slots[static_cast<std::size_t>(idx)]);
            } else {
                ok = one_sample<Eigen::MatrixXcd>(config, rng,
                                                  &slots[static_cast<std::size_t>(idx)]);
            }
            if (!ok) failed[static_cast<std::size_t>(idx)] = 1;
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& thread : pool) thread.join();
    }

    ProductSamples result;
    result.values.reserve(static_cast<std::size_t>(config.samples) * config.matrix_size);
    for (int idx = 0; idx < config.samples; ++idx) {
        if (failed[static_cast<std::size_t>(idx)]) {
            ++result.failed_samples;
            continue;
        }
        const auto& slot = slots[static_cast<std::size_t>(idx)];
        result.values.insert(result.values.end(), slot.begin(), slot.end());
    }
    return result;
}

MCRunReport empirical_vs_theory(const std::vector<double>& samples, int s, int bins,
                                int values_per_group) {
    if (samples.empty()) throw DomainError("no samples to compare");
    if (s < 1) throw DomainError("factor count s must be at least 1");
    if (bins < 10) throw DomainError("histogram needs at least 10 bins");

    MCRunReport report;
    report.config.s = s;
    report.config.bins = bins;
    const double support = fc_support(s);
    const double total = static_cast<double>(samples.size());

    report.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int j = 0; j <= bins; ++j) {
        report.bin_edges[static_cast<std::size_t>(j)] = support * j / bins;
    }

    std::vector<long long> counts(static_cast<std::size_t>(bins) + 1, 0);
    for (double value : samples) {
        if (value < 0.0) {
            ++report.negative_count;
            value = 0.0;
        }
        const int bin = std::min(static_cast<int>(value / support * bins), bins);
        ++counts[static_cast<std::size_t>(bin)];
    }
    report.empirical_mass.resize(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j) {
        report.empirical_mass[j] = static_cast<double>(counts[j]) / total;
    }

    // Theoretical bin masses from the quadrature integrator; the overflow
    // bin above the support carries zero mass.
    DensityIntegrator integrator(build_fc_spec(s));
    report.theory_mass.assign(counts.size(), 0.0);
    for (int j = 0; j < bins; ++j) {
        report.theory_mass[static_cast<std::size_t>(j)] =
            integrator.integral(report.bin_edges[static_cast<std::size_t>(j)],
                                report.bin_edges[static_cast<std::size_t>(j) + 1]);
    }

    CompensatedSum l1;
    double empirical_cdf = 0.0, theory_cdf = 0.0, ks = 0.0;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        l1.add(std::abs(report.empirical_mass[j] - report.theory_mass[j]));
        empirical_cdf += report.empirical_mass[j];
        theory_cdf += report.theory_mass[j];
        ks = std::max(ks, std::abs(empirical_cdf - theory_cdf));
    }
    report.l1_distance = l1.value();
    report.ks_distance = ks;

    // Moments n = 0..6 with standard errors from the across-group variance
    // (grouping by sample respects the correlation of singular values
    // within one matrix).
    const int group = (values_per_group > 0) ? values_per_group
                                             : static_cast<int>(samples.size());
    const std::size_t group_count =
        (samples.size() + static_cast<std::size_t>(group) - 1) /
        static_cast<std::size_t>(group);
    report.empirical_moments.resize(7);
    report.moment_std_errors.resize(7);
    for (int n = 0; n <= 6; ++n) {
        std::vector<double> group_means;
        group_means.reserve(group_count);
        CompensatedSum overall;
        for (std::size_t start = 0; start < samples.size();
             start += static_cast<std::size_t>(group)) {
            const std::size_t stop =
                std::min(samples.size(), start + static_cast<std::size_t>(group));
            CompensatedSum partial;
            for (std::size_t i = start; i < stop; ++i) {
                partial.add(std::pow(samples[i], n));
            }
            group_means.push_back(partial.value() / static_cast<double>(stop - start));
            overall.add(partial.value());
        }
        const double mean = overall.value() / total;
        report.empirical_moments[static_cast<std::size_t>(n)] = mean;
        double variance = 0.0;
        if (group_means.size() > 1) {
            for (double m : group_means) variance += (m - mean) * (m - mean);
            variance /= static_cast<double>(group_means.size() - 1);
        }
        report.moment_std_errors[static_cast<std::size_t>(n)] =
            std::sqrt(variance / static_cast<double>(group_means.size()));
    }
    return report;
}

MCRunReport run_monte_carlo(const MCConfig& config, int threads) {
    validate_mc_config(config);
    const ProductSamples samples = product_squared_singular_values(config, threads);
    if (samples.values.empty()) {
        throw ConvergenceError("every Monte-Carlo sample failed to decompose",
                               static_cast<double>(samples.failed_samples));
    }
    MCRunReport report =
        empirical_vs_theory(samples.values, config.s, config.bins, config.matrix_size);
    report.config = config;
    report.failed_samples = samples.failed_samples;
    return report;
}

}  // namespace fcraney
