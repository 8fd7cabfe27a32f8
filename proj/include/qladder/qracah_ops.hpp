#pragma once

// The q-Racah second-order operator D_N, its raising/lowering factors R_N and
// L_N, the generic factorization conditions they satisfy, and the sigma/tau
// parameter symmetries of the general-gamma operator.

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qladder/errors.hpp"
#include "qladder/field.hpp"
#include "qladder/grid.hpp"
#include "qladder/params.hpp"

namespace qladder {

// ---------------------------------------------------------------------------
// General-gamma operator and its symmetries
// ---------------------------------------------------------------------------

/// (alpha, beta, gamma, delta) with gamma free.
template <Field F>
struct Params4 {
    F alpha;
    F beta;
    F gamma;
    F delta;

    friend bool operator==(const Params4&, const Params4&) = default;
};

/// sigma(alpha, beta, gamma, delta) = (alpha, beta, beta delta, gamma / beta).
template <Field F>
Params4<F> symmetry_sigma(const Params4<F>& p)
{
    if (is_zero(p.beta)) {
        throw std::domain_error("symmetry_sigma: beta = 0");
    }
    return {p.alpha, p.beta, p.beta * p.delta, p.gamma / p.beta};
}

/// tau(alpha, beta, gamma, delta) = (gamma, alpha beta / gamma, alpha, gamma delta / alpha).
template <Field F>
Params4<F> symmetry_tau(const Params4<F>& p)
{
    if (is_zero(p.alpha) || is_zero(p.gamma)) {
        throw std::domain_error("symmetry_tau: alpha or gamma = 0");
    }
    return {p.gamma, p.alpha * p.beta / p.gamma, p.alpha, p.gamma * p.delta / p.alpha};
}

/// B(x), D(x) of the q-Racah operator with free gamma.
template <Field F>
std::pair<F, F> bd_general(const Params4<F>& p, const F& q, int x)
{
    const F one(1);
    const F gd = p.gamma * p.delta;
    const F qx = ipow(q, x);
    auto den = [&](long e) {
        F v = one - gd * ipow(q, e);
        if (is_zero(v)) {
            throw AdmissibilityError({"1 - gamma*delta*q^(" + std::to_string(e) + ")"});
        }
        return v;
    };
    const F d0 = den(2L * x);
    const F d1 = den(2L * x + 1);
    const F d2 = den(2L * x + 2);
    const F qx1 = qx * q;
    F b = (one - p.alpha * qx1) * (one - p.beta * p.delta * qx1) * (one - p.gamma * qx1) * (one - gd * qx1) / (d1 * d2);
    F d = q * (one - qx) * (p.alpha - gd * qx) * (p.beta - p.gamma * qx) * (one - p.delta * qx) / (d0 * d1);
    return {b, d};
}

// ---------------------------------------------------------------------------
// Factor quadruples and the sufficient conditions for a factorization
// ---------------------------------------------------------------------------

/// B_N = B1_N B2_N and D_N = D1_N D2_N as functions of (level N, site x),
/// together with the closed forms claimed for a_N and b_N.
///
/// B1, B2, D1 are evaluated down to x = -1 and D2 up to x = N + 1. The full
/// coefficients b and d are stored independently of the factors so that the
/// factorization itself is something the conditions test.
template <Field F>
struct FactorQuadruple {
    using SiteFn = std::function<F(int level, int x)>;
    using LevelFn = std::function<F(int level)>;

    std::string family;
    SiteFn b1;
    SiteFn b2;
    SiteFn d1;
    SiteFn d2;
    SiteFn b;
    SiteFn d;
    LevelFn a_const;
    LevelFn b_const;
};

enum class Condition { product_b = 0, product_d = 1, constant_a = 2, constant_b = 3 };

inline const char* condition_name(Condition c)
{
    switch (c) {
    case Condition::product_b:
        return "B1_{N-1}(x) B2_{N-1}(x-1) = B_N(x)";
    case Condition::product_d:
        return "D1_{N-1}(x-1) D2_{N-1}(x) = D_N(x)";
    case Condition::constant_a:
        return "B1_{N-1}(x-1) D2_{N-1}(x) + D1_{N-1}(x) B2_{N-1}(x-1) - B_N(x) - D_N(x) = a_N";
    case Condition::constant_b:
        return "D1_N(x) B2_N(x-1) + B1_N(x) D2_N(x+1) - B_N(x) - D_N(x) = b_N";
    }
    return "";
}

template <Field F>
struct FactorizationReport {
    std::string family;
    int level = 0;
    /// holds[c][x] for the four conditions at x = 0..N.
    std::array<std::vector<bool>, 4> holds;
    /// Left-hand sides of the two constant conditions, per x.
    std::vector<F> a_values;
    std::vector<F> b_values;
    F a_closed;
    F b_closed;

    [[nodiscard]] bool all_hold() const
    {
        for (const auto& row : holds) {
            for (bool ok : row) {
                if (!ok) {
                    return false;
                }
            }
        }
        return true;
    }
};

/// Evaluates the four factorization conditions at every x = 0..N (N >= 1).
template <Field F>
FactorizationReport<F> verify_factorization_conditions(const FactorQuadruple<F>& fq, int N)
{
    if (N < 1) {
        throw std::invalid_argument("verify_factorization_conditions: need N >= 1");
    }
    FactorizationReport<F> r;
    r.family = fq.family;
    r.level = N;
    r.a_closed = fq.a_const(N);
    r.b_closed = fq.b_const(N);
    const int M = N - 1;
    for (int x = 0; x <= N; ++x) {
        const F bn = fq.b(N, x);
        const F dn = fq.d(N, x);
        r.holds[0].push_back(field_equal(fq.b1(M, x) * fq.b2(M, x - 1), bn));
        r.holds[1].push_back(field_equal(fq.d1(M, x - 1) * fq.d2(M, x), dn));
        F a = fq.b1(M, x - 1) * fq.d2(M, x) + fq.d1(M, x) * fq.b2(M, x - 1) - bn - dn;
        F b = fq.d1(N, x) * fq.b2(N, x - 1) + fq.b1(N, x) * fq.d2(N, x + 1) - bn - dn;
        r.holds[2].push_back(field_equal(a, r.a_closed));
        r.holds[3].push_back(field_equal(b, r.b_closed));
        r.a_values.push_back(std::move(a));
        r.b_values.push_back(std::move(b));
    }
    return r;
}

/// R_N f(x) = -B2_N(x-1) f(x) + D2_N(x) f(x-1), x = 0..N+1.
template <Field F>
BandedOperator<F> raising_from_factors(const FactorQuadruple<F>& fq, int N)
{
    std::vector<std::vector<F>> rows;
    for (int x = 0; x <= N + 1; ++x) {
        rows.push_back({fq.d2(N, x), -fq.b2(N, x - 1)});
    }
    return BandedOperator<F>(OperatorKind::raising, N, std::move(rows));
}

/// L_N f(x) = -D1_{N-1}(x) f(x) + B1_{N-1}(x) f(x+1), x = 0..N-1.
template <Field F>
BandedOperator<F> lowering_from_factors(const FactorQuadruple<F>& fq, int N)
{
    std::vector<std::vector<F>> rows;
    for (int x = 0; x <= N - 1; ++x) {
        rows.push_back({-fq.d1(N - 1, x), fq.b1(N - 1, x)});
    }
    return BandedOperator<F>(OperatorKind::lowering, N, std::move(rows));
}

/// D_N f(x) = B_N(x) f(x+1) - [B_N(x) + D_N(x)] f(x) + D_N(x) f(x-1).
template <Field F>
BandedOperator<F> second_order_from_factors(const FactorQuadruple<F>& fq, int N)
{
    std::vector<std::vector<F>> rows;
    for (int x = 0; x <= N; ++x) {
        F b = fq.b(N, x);
        F d = fq.d(N, x);
        rows.push_back({d, -(b + d), b});
    }
    return BandedOperator<F>(OperatorKind::second_order, N, std::move(rows));
}

// ---------------------------------------------------------------------------
// q-Racah specifics (gamma q = q^{-N})
// ---------------------------------------------------------------------------

namespace detail {

template <Field F>
F qracah_den(const QRacahParams<F>& p, long e)
{
    F v = F(1) - p.delta() * p.qp(e);
    if (is_zero(v)) {
        throw AdmissibilityError({qpow_name("delta", e)});
    }
    return v;
}

} // namespace detail

/// a_N = -(1 - q^{-N})(1 - alpha beta q^{N+1}).
template <Field F>
F qracah_a(const QRacahParams<F>& p, int N)
{
    return -(F(1) - p.qp(-N)) * (F(1) - p.alpha() * p.beta() * p.qp(N + 1));
}

/// b_N = -(1 - q^{-N-1})(1 - alpha beta q^{N+2}).
template <Field F>
F qracah_b(const QRacahParams<F>& p, int N)
{
    return -(F(1) - p.qp(-N - 1)) * (F(1) - p.alpha() * p.beta() * p.qp(N + 2));
}

/// B_N(x) of the q-Racah operator at level N.
template <Field F>
F qracah_B(const QRacahParams<F>& p, int N, int x)
{
    const F one(1);
    return (one - p.alpha() * p.qp(x + 1)) * (one - p.beta() * p.delta() * p.qp(x + 1)) * (one - p.qp(x - N)) *
           (one - p.delta() * p.qp(x - N)) / (detail::qracah_den(p, 2L * x - N) * detail::qracah_den(p, 2L * x - N + 1));
}

/// D_N(x) of the q-Racah operator at level N.
template <Field F>
F qracah_D(const QRacahParams<F>& p, int N, int x)
{
    const F one(1);
    return (p.alpha() - p.delta() * p.qp(x - N - 1)) * (p.beta() * p.qp(N + 2) - p.qp(x + 1)) * (one - p.qp(x)) *
           (one - p.delta() * p.qp(x)) * p.qp(-N - 1) /
           (detail::qracah_den(p, 2L * x - N) * detail::qracah_den(p, 2L * x - N - 1));
}

template <Field F>
FactorQuadruple<F> build_factors(const QRacahParams<F>& p)
{
    using detail::qracah_den;
    FactorQuadruple<F> fq;
    fq.family = "q-racah";
    fq.b1 = [p](int N, int x) {
        const F one(1);
        return (one - p.alpha() * p.qp(x + 1)) * (one - p.beta() * p.delta() * p.qp(x + 1)) / qracah_den(p, 2L * x - N);
    };
    fq.b2 = [p](int N, int x) {
        const F one(1);
        return (one - p.qp(x - N)) * (one - p.delta() * p.qp(x - N)) / qracah_den(p, 2L * x - N + 1);
    };
    fq.d1 = [p](int N, int x) {
        return (p.alpha() - p.delta() * p.qp(x - N - 1)) * (p.beta() * p.qp(N + 2) - p.qp(x + 1)) /
               qracah_den(p, 2L * x - N);
    };
    fq.d2 = [p](int N, int x) {
        const F one(1);
        return (one - p.qp(x)) * (one - p.delta() * p.qp(x)) * p.qp(-N - 1) / qracah_den(p, 2L * x - N - 1);
    };
    fq.b = [p](int N, int x) { return qracah_B(p, N, x); };
    fq.d = [p](int N, int x) { return qracah_D(p, N, x); };
    fq.a_const = [p](int N) { return qracah_a(p, N); };
    fq.b_const = [p](int N) { return qracah_b(p, N); };
    return fq;
}

/// Raising operator R_N : V_N -> V_{N+1}.
template <Field F>
BandedOperator<F> build_R(const QRacahParams<F>& p, int N)
{
    const F one(1);
    std::vector<std::vector<F>> rows;
    for (int x = 0; x <= N + 1; ++x) {
        const F den = detail::qracah_den(p, 2L * x - N - 1);
        F own = -(one - p.qp(x - N - 1)) * (one - p.delta() * p.qp(x - N - 1)) / den;
        F prev = p.qp(-N - 1) * (one - p.qp(x)) * (one - p.delta() * p.qp(x)) / den;
        rows.push_back({std::move(prev), std::move(own)});
    }
    return BandedOperator<F>(OperatorKind::raising, N, std::move(rows));
}

/// Lowering operator L_N : V_N -> V_{N-1}.
template <Field F>
BandedOperator<F> build_L(const QRacahParams<F>& p, int N)
{
    const F one(1);
    std::vector<std::vector<F>> rows;
    for (int x = 0; x <= N - 1; ++x) {
        const F den = detail::qracah_den(p, 2L * x - N + 1);
        F own = -(p.alpha() - p.delta() * p.qp(x - N)) * (p.beta() * p.qp(N + 1) - p.qp(x + 1)) / den;
        F next = (one - p.alpha() * p.qp(x + 1)) * (one - p.beta() * p.delta() * p.qp(x + 1)) / den;
        rows.push_back({std::move(own), std::move(next)});
    }
    return BandedOperator<F>(OperatorKind::lowering, N, std::move(rows));
}

/// Second-order q-Racah operator D_N on V_N.
template <Field F>
BandedOperator<F> build_D(const QRacahParams<F>& p, int N)
{
    std::vector<std::vector<F>> rows;
    for (int x = 0; x <= N; ++x) {
        F b = qracah_B(p, N, x);
        F d = qracah_D(p, N, x);
        rows.push_back({d, -(b + d), b});
    }
    return BandedOperator<F>(OperatorKind::second_order, N, std::move(rows));
}

} // namespace qladder
