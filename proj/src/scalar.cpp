#include "tropbscs/scalar.hpp"

#include <numeric>

namespace tropbscs {

Trop inverse(Trop x) {
    if (x.is_zero()) throw DomainError("𝟘 has no multiplicative inverse");
    return Trop(-x.value());
}

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw DomainError("rational exponent with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const auto g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Trop pow(Trop x, Rational q) {
    if (x.is_zero()) {
        if (q.num < 0) throw DomainError("negative power of 𝟘");
        return q.num == 0 ? Trop::one() : Trop::zero();
    }
    if (q.num == 0) return Trop::one();
    return Trop(x.value() * static_cast<double>(q.num) / static_cast<double>(q.den));
}

}  // namespace tropbscs
