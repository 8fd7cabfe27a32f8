#pragma once

// Scalar-field abstraction and q-calculus primitives.
//
// Every algorithm in the library is a template over a Field: either the exact
// backend `Rational` or the binary float backend `double`. The exact backend
// is the one used for certification; the float backend exists for q -> 1
// limit studies.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <concepts>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qladder/rational.hpp"

namespace qladder {

template <class F>
concept Field = std::regular<F> && std::constructible_from<F, int> && requires(const F a, const F b) {
    { a + b } -> std::convertible_to<F>;
    { a - b } -> std::convertible_to<F>;
    { a * b } -> std::convertible_to<F>;
    { a / b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
};

template <class F>
struct field_traits;

template <>
struct field_traits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";

    static bool is_zero(const Rational& v) { return v.is_zero(); }
    static bool equal(const Rational& a, const Rational& b) { return a == b; }
    static std::string to_string(const Rational& v) { return v.str(); }
    static Rational from_rational(const Rational& v) { return v; }
    static double to_double(const Rational& v) { return v.to_double(); }
};

template <>
struct field_traits<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
    /// Relative tolerance for identity checks in the float backend.
    static constexpr double tolerance = 1e-9;

    static bool is_zero(double v) { return v == 0.0; }
    static bool equal(double a, double b)
    {
        double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
        return std::fabs(a - b) <= tolerance * scale;
    }
    /// Shortest representation that round-trips.
    static std::string to_string(double v)
    {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    }
    static double from_rational(const Rational& v) { return v.to_double(); }
    static double to_double(double v) { return v; }
};

template <Field F>
bool is_zero(const F& v)
{
    return field_traits<F>::is_zero(v);
}

template <Field F>
bool field_equal(const F& a, const F& b)
{
    return field_traits<F>::equal(a, b);
}

template <Field F>
std::string to_string(const F& v)
{
    return field_traits<F>::to_string(v);
}

/// x^k for any integer k; negative powers are exact reciprocals.
template <Field F>
F ipow(const F& x, long k)
{
    if (k < 0) {
        if (is_zero(x)) {
            throw std::domain_error("ipow: negative power of zero");
        }
        return F(1) / ipow(x, -k);
    }
    F result(1);
    F base = x;
    while (k > 0) {
        if (k & 1) {
            result = result * base;
        }
        k >>= 1;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

/// (a; q)_n = prod_{k=0}^{n-1} (1 - a q^k).
template <Field F>
F q_pochhammer(const F& a, const F& q, int n)
{
    if (n < 0) {
        throw std::domain_error("q_pochhammer: negative length");
    }
    F result(1);
    F aqk = a;
    for (int k = 0; k < n; ++k) {
        result = result * (F(1) - aqk);
        aqk = aqk * q;
    }
    return result;
}

/// Rising factorial (a)_n = prod_{k=0}^{n-1} (a + k).
template <Field F>
F pochhammer(const F& a, int n)
{
    if (n < 0) {
        throw std::domain_error("pochhammer: negative length");
    }
    F result(1);
    for (int k = 0; k < n; ++k) {
        result = result * (a + F(k));
    }
    return result;
}

template <Field F>
F binomial(int n, int k)
{
    if (k < 0 || k > n) {
        throw std::domain_error("binomial: k outside 0..n");
    }
    F result(1);
    for (int i = 1; i <= k; ++i) {
        result = result * F(n - k + i) / F(i);
    }
    return result;
}

template <Field F>
F factorial(int n)
{
    return pochhammer(F(1), n);
}

/// Gaussian binomial (q^{n-k+1}; q)_k / (q; q)_k. At q = 1 this is the
/// ordinary binomial coefficient.
template <Field F>
F q_binomial(int n, int k, const F& q)
{
    if (k < 0 || k > n) {
        throw std::domain_error("q_binomial: k outside 0..n");
    }
    if (q == F(1)) {
        return binomial<F>(n, k);
    }
    return q_pochhammer(ipow(q, n - k + 1), q, k) / q_pochhammer(q, q, k);
}

/// Memo of Pochhammer prefixes (a;q)_0, (a;q)_1, ... for a fixed base q.
///
/// Lookups return exactly the value direct recomputation would, since the
/// prefix is built with the same left-to-right product. Internally locked, so
/// a single cache may be shared between threads.
template <Field F>
class PochhammerCache {
public:
    explicit PochhammerCache(F q) : q_(std::move(q)) {}

    PochhammerCache(const PochhammerCache&) = delete;
    PochhammerCache& operator=(const PochhammerCache&) = delete;

    [[nodiscard]] const F& base() const { return q_; }

    F get(const F& a, int n)
    {
        if (n < 0) {
            throw std::domain_error("PochhammerCache: negative length");
        }
        std::lock_guard lock(mutex_);
        auto [it, inserted] = prefixes_.try_emplace(a, Prefix{{F(1)}, a});
        Prefix& p = it->second;
        // Same left-to-right product as q_pochhammer, so values match bit for bit.
        while (static_cast<int>(p.values.size()) <= n) {
            p.values.push_back(p.values.back() * (F(1) - p.aqk));
            p.aqk = p.aqk * q_;
        }
        return p.values[static_cast<std::size_t>(n)];
    }

    [[nodiscard]] std::size_t size() const
    {
        std::lock_guard lock(mutex_);
        return prefixes_.size();
    }

private:
    struct Prefix {
        std::vector<F> values;
        F aqk;
    };

    F q_;
    mutable std::mutex mutex_;
    std::map<F, Prefix> prefixes_;
};

} // namespace qladder
