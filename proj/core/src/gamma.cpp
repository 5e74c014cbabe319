#include "fcraney/gamma.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fcraney {

namespace {

// Lanczos coefficients, g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;  // ln sqrt(2 pi)

// log Gamma(x) for x >= 0.5 (always positive there).
double lanczos_log_gamma(double x) {
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    double t = x + kLanczosG - 0.5;
    return kLogSqrtTwoPi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

double sin_pi(double x) {
    double m = std::floor(x);
    double f = x - m;  // exact; f in [0, 1)
    // sin(pi(m+f)) = (-1)^m sin(pi f), and sin(pi f) = sin(pi(1-f)) keeps the
    // argument of std::sin in [0, pi/2] where it is fully accurate.
    double s = (f <= 0.5) ? std::sin(std::numbers::pi * f)
                          : std::sin(std::numbers::pi * (1.0 - f));
    return (std::fmod(m, 2.0) != 0.0) ? -s : s;
}

SignedLogGamma signed_log_gamma(double x) {
    if (std::isnan(x)) throw DomainError("signed_log_gamma: NaN argument");
    if (x <= 0.0 && x == std::floor(x))
        throw PoleError("signed_log_gamma: pole at non-positive integer " +
                        std::to_string(x));
    if (x >= 0.5) return {lanczos_log_gamma(x), +1};
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    double s = sin_pi(x);
    double log_abs = std::log(std::numbers::pi) - std::log(std::abs(s)) -
                     lanczos_log_gamma(1.0 - x);
    return {log_abs, s > 0.0 ? +1 : -1};
}

double gamma_value(double x) {
    SignedLogGamma g = signed_log_gamma(x);
    return g.sign * std::exp(g.log_abs);
}

double pochhammer(double a, int n) {
    if (n < 0) throw DomainError("pochhammer: negative order");
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= a + i;
    return prod;
}

double verify_gauss_legendre(double z, int k) {
    if (!(z > 0.0)) throw DomainError("verify_gauss_legendre: require z > 0");
    if (k < 1) throw DomainError("verify_gauss_legendre: require k >= 1");
    double lhs = signed_log_gamma(k * z).log_abs;
    double rhs = (1.0 - k) / 2.0 * std::log(2.0 * std::numbers::pi) +
                 (k * z - 0.5) * std::log(double(k));
    for (int j = 0; j < k; ++j)
        rhs += signed_log_gamma(z + double(j) / k).log_abs;
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

}  // namespace fcraney
