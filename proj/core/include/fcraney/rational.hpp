#pragma once

#include <compare>
#include <cstdint>
#include <numeric>

#include "fcraney/errors.hpp"

namespace fcraney {

/**
 * Minimal exact rational on int64, used to assemble and cancel
 * hypergeometric parameter lists exactly. Magnitudes stay tiny (bounded by
 * the density orders), so reduced arithmetic cannot overflow in practice.
 */
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (den_ == 0) throw DomainError("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    double to_double() const { return double(num_) / double(den_); }

    friend Rational operator+(Rational a, Rational b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Rational operator-(Rational a, Rational b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend Rational operator-(Rational a) { return {-a.num_, a.den_}; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(Rational a, Rational b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace fcraney
