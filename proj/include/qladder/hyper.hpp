#pragma once

// Terminating hypergeometric (q = 1) and basic hypergeometric series, the
// very-well-poised variants, and exact checks of the four summation and
// transformation identities the polynomial constructions rely on:
// the 6phi5 summation, Watson's 8phi7 -> 4phi3, Dougall's 5F4 and
// Whipple's 7F6 -> 4F3.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qladder/errors.hpp"
#include "qladder/field.hpp"
#include "qladder/params.hpp"

namespace qladder {

enum class SeriesKind { basic, ordinary };

/// r phi (r-1) (basic) or r F (r-1) (ordinary) series, summed for k = 0..n.
///
/// Basic: term_k = prod (a_i;q)_k / prod (b_j;q)_k * z^k / (q;q)_k.
/// Ordinary: term_k = prod (a_i)_k / prod (b_j)_k * z^k / k!.
template <Field F>
struct SeriesSpec {
    SeriesKind kind = SeriesKind::basic;
    std::vector<F> numerators;
    std::vector<F> denominators;
    F q = F(1);
    F z = F(1);
    int n = 0;
};

/// Sums the series by its term ratio. Once a numerator factor vanishes the
/// remaining terms are zero, but every denominator factor up to the
/// termination index must still be nonzero: a vanishing one there makes the
/// series an indeterminate 0/0 and is reported as inadmissible.
template <Field F>
F eval_terminating(const SeriesSpec<F>& spec)
{
    if (spec.n < 0) {
        throw std::invalid_argument("eval_terminating: negative termination index");
    }
    const bool basic = spec.kind == SeriesKind::basic;
    F term(1);
    F sum(1);
    F qk(1); // q^k
    bool stopped = false;
    for (int k = 0; k < spec.n; ++k) {
        F den = basic ? F(1) - qk * spec.q : F(k + 1);
        for (std::size_t j = 0; j < spec.denominators.size(); ++j) {
            const auto& b = spec.denominators[j];
            F f = basic ? F(1) - b * qk : b + F(k);
            if (is_zero(f)) {
                throw AdmissibilityError({"denominator parameter #" + std::to_string(j) + " at k = " + std::to_string(k)});
            }
            den = den * f;
        }
        if (is_zero(den)) {
            throw AdmissibilityError({"(q;q)_k factor at k = " + std::to_string(k)});
        }
        if (!stopped) {
            F num = spec.z;
            for (const auto& a : spec.numerators) {
                num = num * (basic ? F(1) - a * qk : a + F(k));
            }
            stopped = is_zero(num);
            if (!stopped) {
                term = term * num / den;
                sum = sum + term;
            }
        }
        if (basic) {
            qk = qk * spec.q;
        }
    }
    return sum;
}

/// Very-well-poised series with leading parameter a.
///
/// The paired parameters q sqrt(a), -q sqrt(a) over sqrt(a), -sqrt(a) are
/// folded into the per-term factor (1 - a q^{2k}) / (1 - a) (basic) or
/// (a + 2k) / a (ordinary), so no square root is ever formed. The remaining
/// numerator parameters are `params` plus the terminating q^{-n} (or -n);
/// each parameter p is paired with the denominator a q / p (or a - p + 1).
template <Field F>
struct VeryWellPoisedSpec {
    SeriesKind kind = SeriesKind::basic;
    F a;
    std::vector<F> params;
    int n = 0;
    F q = F(1);
    F z = F(1);
};

template <Field F>
F eval_very_well_poised(const VeryWellPoisedSpec<F>& s)
{
    const bool basic = s.kind == SeriesKind::basic;
    const F one(1);
    if (basic ? is_zero(one - s.a) : is_zero(s.a)) {
        throw AdmissibilityError({basic ? "1 - a" : "a"});
    }
    std::vector<F> params = s.params;
    params.push_back(basic ? ipow(s.q, -s.n) : F(-s.n));
    for (const auto& p : params) {
        if (basic && is_zero(p)) {
            throw AdmissibilityError({"very-well-poised parameter 0"});
        }
    }
    F u(1);   // the series term without the paired factor
    F sum(1); // k = 0 term, paired factor 1
    F qk(1);
    bool stopped = false;
    for (int k = 0; k < s.n; ++k) {
        F num = s.z * (basic ? one - s.a * qk : s.a + F(k));
        F den = basic ? one - qk * s.q : F(k + 1);
        for (const auto& p : params) {
            num = num * (basic ? one - p * qk : p + F(k));
            den = den * (basic ? one - s.a * qk * s.q / p : s.a - p + F(1) + F(k));
        }
        if (is_zero(den)) {
            throw AdmissibilityError({"very-well-poised denominator at k = " + std::to_string(k)});
        }
        stopped = stopped || is_zero(num);
        if (basic) {
            qk = qk * s.q;
        }
        if (stopped) {
            continue;
        }
        u = u * num / den;
        if (basic) {
            sum = sum + u * (one - s.a * qk * qk) / (one - s.a);
        } else {
            sum = sum + u * (s.a + F(2 * (k + 1))) / s.a;
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Identity checks
// ---------------------------------------------------------------------------

template <Field F>
struct IdentityReport {
    std::string identity;
    std::vector<std::pair<std::string, F>> params;
    F lhs;
    F rhs;
    bool equal = false;
};

namespace detail {

template <Field F>
IdentityReport<F> make_report(std::string identity, std::vector<std::pair<std::string, F>> params, F lhs, F rhs)
{
    IdentityReport<F> r{std::move(identity), std::move(params), std::move(lhs), std::move(rhs), false};
    r.equal = field_equal(r.lhs, r.rhs);
    return r;
}

} // namespace detail

/// 6phi5 very-well-poised summation:
/// 6phi5(a, q sqrt a, -q sqrt a, b, c, q^{-n}; ...; q, a q^{n+1}/(bc))
///   = (aq, aq/bc; q)_n / (aq/b, aq/c; q)_n.
template <Field F>
IdentityReport<F> check_6phi5_summation(const F& a, const F& b, const F& c, int n, const F& q)
{
    VeryWellPoisedSpec<F> s{SeriesKind::basic, a, {b, c}, n, q, a * ipow(q, n + 1) / (b * c)};
    F lhs = eval_very_well_poised(s);
    F rhs = q_pochhammer(a * q, q, n) * q_pochhammer(a * q / (b * c), q, n) /
            (q_pochhammer(a * q / b, q, n) * q_pochhammer(a * q / c, q, n));
    return detail::make_report<F>("6phi5", {{"a", a}, {"b", b}, {"c", c}, {"n", F(n)}, {"q", q}}, lhs, rhs);
}

/// Watson: 8phi7 very-well-poised with argument a^2 q^{n+2}/(bcde)
///   = (aq, aq/de; q)_n / (aq/d, aq/e; q)_n
///     * 4phi3(q^{-n}, d, e, aq/bc; aq/b, aq/c, de q^{-n}/a; q, q).
///
/// `prefactor_scale` multiplies the right-hand side; anything but 1 corrupts
/// the identity and exists only to exercise failure reporting.
template <Field F>
IdentityReport<F> check_watson(const F& a, const F& b, const F& c, const F& d, const F& e, int n, const F& q,
                               const F& prefactor_scale = F(1))
{
    VeryWellPoisedSpec<F> s{SeriesKind::basic, a, {b, c, d, e}, n, q, a * a * ipow(q, n + 2) / (b * c * d * e)};
    F lhs = eval_very_well_poised(s);
    SeriesSpec<F> phi{SeriesKind::basic,
                      {ipow(q, -n), d, e, a * q / (b * c)},
                      {a * q / b, a * q / c, d * e * ipow(q, -n) / a},
                      q,
                      q,
                      n};
    F rhs = prefactor_scale * q_pochhammer(a * q, q, n) * q_pochhammer(a * q / (d * e), q, n) /
            (q_pochhammer(a * q / d, q, n) * q_pochhammer(a * q / e, q, n)) * eval_terminating(phi);
    return detail::make_report<F>(
        "watson", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", e}, {"n", F(n)}, {"q", q}}, lhs, rhs);
}

/// Dougall: 5F4(a, a/2+1, c, d, -n; a/2, a-c+1, a-d+1, a+n+1; 1)
///   = (a+1)_n (a-c-d+1)_n / ((a-c+1)_n (a-d+1)_n).
template <Field F>
IdentityReport<F> check_dougall_5F4(const F& a, const F& c, const F& d, int n)
{
    VeryWellPoisedSpec<F> s{SeriesKind::ordinary, a, {c, d}, n, F(1), F(1)};
    F lhs = eval_very_well_poised(s);
    const F one(1);
    F rhs = pochhammer(a + one, n) * pochhammer(a - c - d + one, n) /
            (pochhammer(a - c + one, n) * pochhammer(a - d + one, n));
    return detail::make_report<F>("dougall", {{"a", a}, {"c", c}, {"d", d}, {"n", F(n)}}, lhs, rhs);
}

/// Whipple: 7F6(a, a/2+1, b, c, d, e, -n; a/2, a-b+1, a-c+1, a-d+1, a-e+1, a+n+1; 1)
///   = (a+1)_n (a-d-e+1)_n / ((a-d+1)_n (a-e+1)_n)
///     * 4F3(a-b-c+1, d, e, -n; a-b+1, a-c+1, d+e-a-n; 1).
template <Field F>
IdentityReport<F> check_whipple_7F6(const F& a, const F& b, const F& c, const F& d, const F& e, int n)
{
    VeryWellPoisedSpec<F> s{SeriesKind::ordinary, a, {b, c, d, e}, n, F(1), F(1)};
    F lhs = eval_very_well_poised(s);
    const F one(1);
    SeriesSpec<F> f43{SeriesKind::ordinary,
                      {a - b - c + one, d, e, F(-n)},
                      {a - b + one, a - c + one, d + e - a - F(n)},
                      F(1),
                      F(1),
                      n};
    F rhs = pochhammer(a + one, n) * pochhammer(a - d - e + one, n) /
            (pochhammer(a - d + one, n) * pochhammer(a - e + one, n)) * eval_terminating(f43);
    return detail::make_report<F>("whipple", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", e}, {"n", F(n)}}, lhs,
                                  rhs);
}

// ---------------------------------------------------------------------------
// q-Racah hypergeometric representations
// ---------------------------------------------------------------------------

/// r_n(x) = 4phi3(q^{-n}, delta q^{x-N}, q^{-x}, alpha beta q^{n+1};
///                alpha q, beta delta q, q^{-N}; q, q).
template <Field F>
F eval_4phi3_qracah(const QRacahParams<F>& p, int n, int x)
{
    const int N = p.N();
    if (n < 0 || n > N || x < 0 || x > N) {
        throw std::out_of_range("eval_4phi3_qracah: need 0 <= n, x <= N");
    }
    SeriesSpec<F> s{SeriesKind::basic,
                    {p.qp(-n), p.delta() * p.qp(x - N), p.qp(-x), p.alpha() * p.beta() * p.qp(n + 1)},
                    {p.alpha() * p.q(), p.beta() * p.delta() * p.q(), p.qp(-N)},
                    p.q(),
                    p.q(),
                    std::min(n, x)};
    return eval_terminating(s);
}

/// The intermediate 8phi7 representation of r_n(x) obtained from the closed
/// double sum before Watson's transformation. Defined for x <= N - n only:
/// beyond that its prefactor vanishes against a vanishing denominator.
template <Field F>
F eval_8phi7_qracah(const QRacahParams<F>& p, int n, int x)
{
    const int N = p.N();
    if (n < 0 || x < 0 || x > N - n) {
        throw std::out_of_range("eval_8phi7_qracah: need 0 <= x <= N - n");
    }
    const F& q = p.q();
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    F pre = q_pochhammer(p.qp(N - x - n + 1), q, n) * q_pochhammer(de * p.qp(x - n + 1), q, n) /
            (q_pochhammer(p.qp(N - n + 1), q, n) * q_pochhammer(de * p.qp(-n + 1), q, n));
    VeryWellPoisedSpec<F> s{SeriesKind::basic,
                            de * p.qp(-n),
                            {p.qp(-n) / be, de / al * p.qp(-n), de * p.qp(x - N), p.qp(-x)},
                            n,
                            q,
                            al * be * p.qp(N + n + 2)};
    return pre * eval_very_well_poised(s);
}

} // namespace qladder
