#pragma once

// Max-plus semifield (R ∪ {-inf}, max, +, -inf, 0).
//
// Trop wraps a double. The additive zero 𝟘 is stored as -infinity; +infinity
// and NaN are rejected at construction so that ⊗ can never form inf - inf.

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>

#include "tropbscs/errors.hpp"

namespace tropbscs {

class Trop {
public:
    constexpr Trop() noexcept : v_(-std::numeric_limits<double>::infinity()) {}

    // Adding +0.0 folds -0 into +0 so printed output never shows "-0".
    explicit Trop(double v) : v_(v + 0.0) {
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
            throw DomainError("max-plus scalar must be finite or -inf");
        }
    }

    static constexpr Trop zero() noexcept { return Trop(); }
    static constexpr Trop one() noexcept { return Trop(Raw{}, 0.0); }

    [[nodiscard]] constexpr double value() const noexcept { return v_; }
    [[nodiscard]] constexpr bool is_zero() const noexcept {
        return v_ == -std::numeric_limits<double>::infinity();
    }
    [[nodiscard]] constexpr bool is_finite() const noexcept { return !is_zero(); }

    /// ⊕
    friend constexpr Trop operator+(Trop x, Trop y) noexcept {
        return x.v_ >= y.v_ ? x : y;
    }
    /// ⊗; -inf + finite = -inf and -inf + -inf = -inf, never NaN.
    friend constexpr Trop operator*(Trop x, Trop y) noexcept {
        if (x.is_zero() || y.is_zero()) return zero();
        return Trop(Raw{}, x.v_ + y.v_);
    }

    Trop& operator+=(Trop y) noexcept { return *this = *this + y; }
    Trop& operator*=(Trop y) noexcept { return *this = *this * y; }

    friend constexpr bool operator==(Trop x, Trop y) noexcept { return x.v_ == y.v_; }
    friend constexpr auto operator<=>(Trop x, Trop y) noexcept { return x.v_ <=> y.v_; }

private:
    struct Raw {};
    constexpr Trop(Raw, double v) noexcept : v_(v) {}

    double v_;
};

/// Free-function spellings of the semifield operations.
constexpr Trop oplus(Trop x, Trop y) noexcept { return x + y; }
constexpr Trop otimes(Trop x, Trop y) noexcept { return x * y; }

/// x⁻¹ = -x; 𝟘 has no inverse.
Trop inverse(Trop x);

/// Exponent p/q with q > 0, kept reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    [[nodiscard]] double to_double() const noexcept {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

/// x^q, i.e. q·x in conventional arithmetic. 𝟘^q = 𝟘 for q > 0 and 𝟙 for
/// q = 0; a negative power of 𝟘 throws DomainError.
Trop pow(Trop x, Rational q);

}  // namespace tropbscs
