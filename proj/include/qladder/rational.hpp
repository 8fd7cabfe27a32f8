#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qladder {

/// Arbitrary-precision rational number, always kept in canonical form
/// (gcd(|num|, den) = 1, den >= 1).
///
/// Thin value wrapper over `mpq_class` so that generic code never sees GMP
/// expression templates: every operator returns a fully evaluated Rational.
class Rational {
public:
    Rational() = default;

    template <std::integral I>
    Rational(I n) : value_(static_cast<long>(n)) {}

    Rational(long num, long den);

    explicit Rational(mpq_class v);

    /// Parses "p/q", "-p/q" or an integer "p". The result is canonicalized.
    /// Throws std::invalid_argument on malformed input or a zero denominator.
    static Rational parse(std::string_view text);

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    /// Throws std::domain_error when rhs is zero.
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& lhs, const Rational& rhs);
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] Rational abs() const;
    [[nodiscard]] Rational reciprocal() const { return Rational(1) / *this; }

    /// "p/q" or "p" for integers.
    [[nodiscard]] std::string str() const;
    [[nodiscard]] double to_double() const { return value_.get_d(); }

    /// Bit length of numerator plus bit length of denominator; a growth probe.
    [[nodiscard]] std::size_t bit_size() const;

    [[nodiscard]] const mpq_class& raw() const { return value_; }

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace qladder
