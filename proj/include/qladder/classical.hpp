#pragma once

// Classical relatives of the q-Racah ladder: factor tables for Hahn, q-Hahn
// and Racah operators, the full Racah (q = 1) ladder with its three routes,
// and a float comparison of q-Racah at q = 1 - eps against Racah.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qladder/field.hpp"
#include "qladder/grid.hpp"
#include "qladder/hyper.hpp"
#include "qladder/ladder.hpp"
#include "qladder/params.hpp"
#include "qladder/qracah_ops.hpp"

namespace qladder {

// ---------------------------------------------------------------------------
// Factor tables
// ---------------------------------------------------------------------------

template <Field F>
FactorQuadruple<F> hahn_factors(const F& alpha, const F& beta)
{
    FactorQuadruple<F> fq;
    fq.family = "hahn";
    fq.b1 = [alpha](int, int x) { return F(x) + alpha + F(1); };
    fq.b2 = [](int N, int x) { return F(x - N); };
    fq.d1 = [beta](int N, int x) { return F(x) - beta - F(N + 1); };
    fq.d2 = [](int, int x) { return F(x); };
    fq.b = [alpha](int N, int x) { return (F(x) + alpha + F(1)) * F(x - N); };
    fq.d = [beta](int N, int x) { return F(x) * (F(x) - beta - F(N + 1)); };
    fq.a_const = [alpha, beta](int N) { return F(N) * (alpha + beta + F(N + 1)); };
    fq.b_const = [alpha, beta](int N) { return F(N + 1) * (alpha + beta + F(N + 2)); };
    return fq;
}

template <Field F>
FactorQuadruple<F> qhahn_factors(const F& alpha, const F& beta, const F& q)
{
    if (is_zero(q)) {
        throw AdmissibilityError({"q"});
    }
    const F one(1);
    FactorQuadruple<F> fq;
    fq.family = "q-hahn";
    fq.b1 = [=](int, int x) { return one - alpha * ipow(q, x + 1); };
    fq.b2 = [=](int N, int x) { return one - ipow(q, x - N); };
    fq.d1 = [=](int N, int x) { return alpha * (beta * ipow(q, N + 2) - ipow(q, x + 1)); };
    fq.d2 = [=](int N, int x) { return ipow(q, -N - 1) * (one - ipow(q, x)); };
    fq.b = [=](int N, int x) { return (one - alpha * ipow(q, x + 1)) * (one - ipow(q, x - N)); };
    fq.d = [=](int N, int x) {
        return ipow(q, -N - 1) * (one - ipow(q, x)) * alpha * (beta * ipow(q, N + 2) - ipow(q, x + 1));
    };
    fq.a_const = [=](int N) { return -(one - alpha * beta * ipow(q, N + 1)) * (one - ipow(q, -N)); };
    fq.b_const = [=](int N) { return -(one - ipow(q, -N - 1)) * (one - alpha * beta * ipow(q, N + 2)); };
    return fq;
}

namespace detail {

template <Field F>
F racah_den(const F& delta, long k)
{
    F v = delta + F(k);
    if (is_zero(v)) {
        throw AdmissibilityError({"delta + (" + std::to_string(k) + ")"});
    }
    return v;
}

} // namespace detail

/// B_N(x) of the Racah operator (gamma = -N-1).
template <Field F>
F racah_B(const RacahParams<F>& p, int N, int x)
{
    const F X(x);
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    return (X + al + F(1)) * (X + be + de + F(1)) * F(x - N) * (X + de - F(N)) /
           (detail::racah_den(de, 2L * x - N) * detail::racah_den(de, 2L * x - N + 1));
}

/// D_N(x) of the Racah operator.
template <Field F>
F racah_D(const RacahParams<F>& p, int N, int x)
{
    const F X(x);
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    return (X - al + de - F(N + 1)) * (X - be - F(N + 1)) * X * (X + de) /
           (detail::racah_den(de, 2L * x - N) * detail::racah_den(de, 2L * x - N - 1));
}

template <Field F>
F racah_a(const RacahParams<F>& p, int N)
{
    return F(N) * (p.alpha() + p.beta() + F(N + 1));
}

template <Field F>
F racah_b(const RacahParams<F>& p, int N)
{
    return F(N + 1) * (p.alpha() + p.beta() + F(N + 2));
}

template <Field F>
FactorQuadruple<F> racah_factors(const RacahParams<F>& p)
{
    using detail::racah_den;
    FactorQuadruple<F> fq;
    fq.family = "racah";
    fq.b1 = [p](int N, int x) {
        return (F(x) + p.alpha() + F(1)) * (F(x) + p.beta() + p.delta() + F(1)) / racah_den(p.delta(), 2L * x - N);
    };
    fq.b2 = [p](int N, int x) { return F(x - N) * (F(x) + p.delta() - F(N)) / racah_den(p.delta(), 2L * x - N + 1); };
    fq.d1 = [p](int N, int x) {
        return (F(x) - p.alpha() + p.delta() - F(N + 1)) * (F(x) - p.beta() - F(N + 1)) /
               racah_den(p.delta(), 2L * x - N);
    };
    fq.d2 = [p](int N, int x) { return F(x) * (F(x) + p.delta()) / racah_den(p.delta(), 2L * x - N - 1); };
    fq.b = [p](int N, int x) { return racah_B(p, N, x); };
    fq.d = [p](int N, int x) { return racah_D(p, N, x); };
    fq.a_const = [p](int N) { return racah_a(p, N); };
    fq.b_const = [p](int N) { return racah_b(p, N); };
    return fq;
}

enum class Family { hahn, q_hahn, racah, q_racah };

inline std::string family_name(Family f)
{
    switch (f) {
    case Family::hahn:
        return "hahn";
    case Family::q_hahn:
        return "q-hahn";
    case Family::racah:
        return "racah";
    case Family::q_racah:
        return "q-racah";
    }
    return "?";
}

inline Family parse_family(const std::string& s)
{
    if (s == "hahn") {
        return Family::hahn;
    }
    if (s == "q-hahn") {
        return Family::q_hahn;
    }
    if (s == "racah") {
        return Family::racah;
    }
    if (s == "q-racah") {
        return Family::q_racah;
    }
    throw std::invalid_argument("unknown family '" + s + "'");
}

template <Field F>
struct FamilyDescriptor {
    Family family;
    FactorQuadruple<F> factors;
};

/// Factor table of one family. Parameters a family does not use are ignored;
/// N bounds the levels at which admissibility is checked.
template <Field F>
FamilyDescriptor<F> family_factors(Family family, const F& alpha, const F& beta, const F& delta, const F& q, int N)
{
    switch (family) {
    case Family::hahn:
        return {family, hahn_factors(alpha, beta)};
    case Family::q_hahn:
        return {family, qhahn_factors(alpha, beta, q)};
    case Family::racah:
        return {family, racah_factors(RacahParams<F>::create(alpha, beta, delta, N))};
    case Family::q_racah:
        return {family, build_factors(QRacahParams<F>::create(alpha, beta, delta, q, N))};
    }
    throw std::invalid_argument("family_factors: unknown family");
}

// ---------------------------------------------------------------------------
// Racah ladder
// ---------------------------------------------------------------------------

/// R_N : V_N -> V_{N+1}.
template <Field F>
BandedOperator<F> racah_build_R(const RacahParams<F>& p, int N)
{
    const F& de = p.delta();
    std::vector<std::vector<F>> rows;
    for (int x = 0; x <= N + 1; ++x) {
        const F den = detail::racah_den(de, 2L * x - N - 1);
        F own = -F(x - N - 1) * (F(x) + de - F(N + 1)) / den;
        F prev = F(x) * (F(x) + de) / den;
        rows.push_back({std::move(prev), std::move(own)});
    }
    return BandedOperator<F>(OperatorKind::raising, N, std::move(rows));
}

/// L_N : V_N -> V_{N-1}.
template <Field F>
BandedOperator<F> racah_build_L(const RacahParams<F>& p, int N)
{
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    std::vector<std::vector<F>> rows;
    for (int x = 0; x <= N - 1; ++x) {
        const F den = detail::racah_den(de, 2L * x - N + 1);
        F own = -(F(x) - al + de - F(N)) * (F(x) - be - F(N)) / den;
        F next = (F(x) + al + F(1)) * (F(x) + be + de + F(1)) / den;
        rows.push_back({std::move(own), std::move(next)});
    }
    return BandedOperator<F>(OperatorKind::lowering, N, std::move(rows));
}

template <Field F>
BandedOperator<F> racah_build_D(const RacahParams<F>& p, int N)
{
    std::vector<std::vector<F>> rows;
    for (int x = 0; x <= N; ++x) {
        F b = racah_B(p, N, x);
        F d = racah_D(p, N, x);
        rows.push_back({d, -(b + d), b});
    }
    return BandedOperator<F>(OperatorKind::second_order, N, std::move(rows));
}

template <Field F>
F racah_eigenvalue(const RacahParams<F>& p, int n)
{
    return F(n) * (p.alpha() + p.beta() + F(n + 1));
}

/// sum_{k=n}^{N-1} (b_k - a_k) = (N - n)(alpha + beta + N + n + 1).
template <Field F>
F racah_sum_closed(const RacahParams<F>& p, int n, int N)
{
    return F(N - n) * (p.alpha() + p.beta() + F(N + n + 1));
}

/// prod_{h=m}^{N-1} sum_{k=n}^{h} (b_k - a_k) = (m-n+1)_{N-m} (alpha+beta+n+m+2)_{N-m}.
template <Field F>
F racah_prod_sum_closed(const RacahParams<F>& p, int m, int n, int N)
{
    return pochhammer(F(m - n + 1), N - m) * pochhammer(p.alpha() + p.beta() + F(n + m + 2), N - m);
}

/// (-alpha+delta-n)_x (-beta-n)_x / ((alpha+1)_x (beta+delta+1)_x), x = 0..n.
template <Field F>
GridFunction<F> racah_seed(const RacahParams<F>& p, int n)
{
    if (n < 0 || n > p.N()) {
        throw std::out_of_range("racah_seed: need 0 <= n <= N");
    }
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    std::vector<F> v{F(1)};
    for (int x = 0; x < n; ++x) {
        const F X(x);
        F den = (X + al + F(1)) * (X + be + de + F(1));
        v.push_back(checked_div(v.back() * (X - al + de - F(n)) * (X - be - F(n)), den, "(alpha+1, beta+delta+1)_x"));
    }
    return GridFunction<F>(std::move(v));
}

template <Field F>
GridFunction<F> racah_raise_iterated(const RacahParams<F>& p, GridFunction<F> f, int N)
{
    for (int k = f.level(); k < N; ++k) {
        f = racah_build_R(p, k).apply(f);
    }
    return f;
}

namespace detail {

/// The bracketed kernel of the Racah raising chain, without binomials.
template <Field F>
F racah_chain_kernel(const F& de, int n, int N, int x, int y)
{
    const int len = y - x + N - n;
    F num = pochhammer(F(x) + de - F(N), len) * pochhammer(F(y + 1) + de, x - y);
    F den = pochhammer(F(x + y - N) + de, len) * pochhammer(F(2 * y - n + 1) + de, x - y);
    return checked_div(num, den, "raising chain denominator");
}

} // namespace detail

/// R_{N-1} ... R_n f by the closed double sum.
template <Field F>
GridFunction<F> racah_raise_closed(const RacahParams<F>& p, const GridFunction<F>& f, int N)
{
    const int n = f.level();
    const F outer = factorial<F>(N - n);
    std::vector<F> out;
    for (int x = 0; x <= N; ++x) {
        F s(0);
        for (int y = std::max(x - N + n, 0); y <= std::min(x, n); ++y) {
            s = s + binomial<F>(N - x, n - y) * binomial<F>(x, y) *
                        detail::racah_chain_kernel(p.delta(), n, N, x, y) * f[static_cast<std::size_t>(y)];
        }
        out.push_back(outer * s);
    }
    return GridFunction<F>(std::move(out));
}

template <Field F>
RaiseChain<F> racah_raise_chain(const RacahParams<F>& p, const GridFunction<F>& f, int N)
{
    if (N < f.level()) {
        throw std::invalid_argument("racah_raise_chain: target level below source level");
    }
    RaiseChain<F> r{racah_raise_iterated(p, f, N), racah_raise_closed(p, f, N), false};
    r.agree = approx_equal(r.iterated, r.closed);
    return r;
}

/// r_n(x) through the closed double sum.
template <Field F>
F racah_closed_form(const RacahParams<F>& p, int n, int x)
{
    const int N = p.N();
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    F s(0);
    for (int y = std::max(x - N + n, 0); y <= std::min(x, n); ++y) {
        F sd = pochhammer(-al + de - F(n), y) * pochhammer(-be - F(n), y) /
               (pochhammer(al + F(1), y) * pochhammer(be + de + F(1), y));
        s = s + binomial<F>(N - x, n - y) * binomial<F>(x, y) * detail::racah_chain_kernel(de, n, N, x, y) * sd;
    }
    return s / binomial<F>(N, n);
}

/// r_n(x) = 4F3(alpha+beta+n+1, -x, x+delta-N, -n; beta+delta+1, alpha+1, -N; 1).
template <Field F>
F eval_4F3_racah(const RacahParams<F>& p, int n, int x)
{
    const int N = p.N();
    if (n < 0 || n > N || x < 0 || x > N) {
        throw std::out_of_range("eval_4F3_racah: need 0 <= n, x <= N");
    }
    const F one(1);
    SeriesSpec<F> s{SeriesKind::ordinary,
                    {p.alpha() + p.beta() + F(n + 1), F(-x), F(x - N) + p.delta(), F(-n)},
                    {p.beta() + p.delta() + one, p.alpha() + one, F(-N)},
                    one,
                    one,
                    std::min(n, x)};
    return eval_terminating(s);
}

/// The intermediate 7F6 representation of r_n(x), defined for x <= N - n.
template <Field F>
F eval_7F6_racah(const RacahParams<F>& p, int n, int x)
{
    const int N = p.N();
    if (n < 0 || x < 0 || x > N - n) {
        throw std::out_of_range("eval_7F6_racah: need 0 <= x <= N - n");
    }
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    const F one(1);
    F pre = pochhammer(F(N - x - n + 1), n) * pochhammer(F(x - n + 1) + de, n) /
            (pochhammer(F(N - n + 1), n) * pochhammer(de - F(n) + one, n));
    VeryWellPoisedSpec<F> s{
        SeriesKind::ordinary, de - F(n), {-be - F(n), -al + de - F(n), F(-x), F(x - N) + de}, n, one, one};
    return pre * eval_very_well_poised(s);
}

template <Field F>
GridFunction<F> racah_values(const RacahParams<F>& p, int n, Route route)
{
    const int N = p.N();
    if (n < 0 || n > N) {
        throw std::out_of_range("racah: need 0 <= n <= N");
    }
    std::vector<F> v;
    switch (route) {
    case Route::ladder:
        return factorial<F>(n) / factorial<F>(N) * racah_raise_iterated(p, racah_seed(p, n), N);
    case Route::closed_form:
        for (int x = 0; x <= N; ++x) {
            v.push_back(racah_closed_form(p, n, x));
        }
        break;
    case Route::hypergeometric:
        for (int x = 0; x <= N; ++x) {
            v.push_back(eval_4F3_racah(p, n, x));
        }
        break;
    }
    return GridFunction<F>(std::move(v));
}

template <Field F>
std::vector<GridFunction<F>> racah_family(const RacahParams<F>& p, Route route = Route::ladder)
{
    std::vector<GridFunction<F>> out;
    for (int n = 0; n <= p.N(); ++n) {
        out.push_back(racah_values(p, n, route));
    }
    return out;
}

/// ||r_n||^2 in V_N for the Racah family, in product form:
/// (a+b+n+1)_n (a+b+2n+2)_{N-n} (b+1)_n (d-a-n)_n / [C(N,n) N! (d+b+1)_n (a+1)_n].
template <Field F>
F racah_norm(const RacahParams<F>& p, int n)
{
    const int N = p.N();
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    const F one(1);
    F num = pochhammer(al + be + F(n + 1), n) * pochhammer(al + be + F(2 * n + 2), N - n) * pochhammer(be + one, n) *
            pochhammer(de - al - F(n), n);
    F den = binomial<F>(N, n) * factorial<F>(N) * pochhammer(de + be + one, n) * pochhammer(al + one, n);
    return checked_div(num, den, "norm denominator");
}

/// The norm expression with (alpha+beta+n+1)_N in place of
/// (alpha+beta+n+1)_{N+1} / (alpha+beta+2n+1). It agrees with racah_norm
/// only when n = N.
template <Field F>
F racah_norm_short_form(const RacahParams<F>& p, int n)
{
    const int N = p.N();
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    const F one(1);
    F num = pochhammer(al + be + F(n + 1), N) * pochhammer(be + one, n) * pochhammer(de - al - F(n), n);
    F den = binomial<F>(N, n) * factorial<F>(N) * pochhammer(de + be + one, n) * pochhammer(al + one, n);
    return checked_div(num, den, "norm denominator");
}

/// ||r_n(.; n)||^2 = (b+1)_n (d-a-n)_n (a+b+n+1)_n / (n! (d+b+1)_n (a+1)_n).
template <Field F>
F racah_norm_base_case(const RacahParams<F>& p, int n)
{
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    const F one(1);
    F num = pochhammer(be + one, n) * pochhammer(de - al - F(n), n) * pochhammer(al + be + F(n + 1), n);
    F den = factorial<F>(n) * pochhammer(de + be + one, n) * pochhammer(al + one, n);
    return checked_div(num, den, "norm denominator");
}

// ---------------------------------------------------------------------------
// q -> 1
// ---------------------------------------------------------------------------

struct LimitRow {
    double epsilon = 0;
    double max_abs_error = 0;
    /// max over x of the error for each degree n.
    std::vector<double> per_n;
    bool finite = true;
};

struct LimitReport {
    /// How q-Racah parameters are obtained from Racah ones.
    std::string correspondence = "alpha_q = q^alpha, beta_q = q^beta, delta_q = q^delta, q = 1 - epsilon";
    std::vector<LimitRow> rows;

    /// max_abs_error[i-1] / max_abs_error[i] for consecutive epsilons.
    [[nodiscard]] std::vector<double> ratios() const
    {
        std::vector<double> r;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            r.push_back(rows[i - 1].max_abs_error / rows[i].max_abs_error);
        }
        return r;
    }

    /// log(error ratio) / log(epsilon ratio): about 1 for linear decay, 2 for
    /// quadratic.
    [[nodiscard]] std::vector<double> observed_orders() const
    {
        std::vector<double> r;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            r.push_back(std::log(rows[i - 1].max_abs_error / rows[i].max_abs_error) /
                        std::log(rows[i - 1].epsilon / rows[i].epsilon));
        }
        return r;
    }

    [[nodiscard]] bool all_finite() const
    {
        return std::all_of(rows.begin(), rows.end(), [](const LimitRow& r) { return r.finite; });
    }

    /// Errors are finite and strictly decrease along the rows.
    [[nodiscard]] bool decreasing() const
    {
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (!(rows[i].max_abs_error < rows[i - 1].max_abs_error)) {
                return false;
            }
        }
        return all_finite();
    }

    /// Every successive ratio lies in [lo, hi].
    [[nodiscard]] bool ratios_within(double lo, double hi) const
    {
        auto r = ratios();
        return all_finite() && std::all_of(r.begin(), r.end(), [&](double v) { return v >= lo && v <= hi; });
    }
};

/// Compares q-Racah polynomials at q = 1 - eps with the Racah polynomials of
/// the matching parameters, for each eps.
inline LimitReport q_limit_compare(const RacahParams<double>& racah, const std::vector<double>& epsilons)
{
    const int N = racah.N();
    std::vector<GridFunction<double>> exact;
    for (int n = 0; n <= N; ++n) {
        exact.push_back(racah_values(racah, n, Route::hypergeometric));
    }
    LimitReport rep;
    for (double eps : epsilons) {
        LimitRow row;
        row.epsilon = eps;
        const double q = 1.0 - eps;
        auto qp = QRacahParams<double>::create(std::pow(q, racah.alpha()), std::pow(q, racah.beta()),
                                               std::pow(q, racah.delta()), q, N);
        for (int n = 0; n <= N; ++n) {
            double worst = 0;
            for (int x = 0; x <= N; ++x) {
                double err = std::fabs(eval_4phi3_qracah(qp, n, x) - exact[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)]);
                if (!std::isfinite(err)) {
                    row.finite = false;
                    err = std::numeric_limits<double>::infinity();
                }
                worst = std::max(worst, err);
            }
            row.per_n.push_back(worst);
            row.max_abs_error = std::max(row.max_abs_error, worst);
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace qladder
