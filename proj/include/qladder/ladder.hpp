#pragma once

// The factorization method proper for q-Racah polynomials: the kernel of the
// lowering operator seeds each degree, repeated raising carries it up to
// level N, and three independent routes (ladder, closed double sum, 4phi3)
// produce the same polynomial values.

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "qladder/field.hpp"
#include "qladder/grid.hpp"
#include "qladder/hyper.hpp"
#include "qladder/params.hpp"
#include "qladder/qracah_ops.hpp"

namespace qladder {

/// Sums and products of (b_k - a_k) that the abstract ladder identities use,
/// evaluated directly from the constants a_k, b_k.
template <Field F>
class LadderCoefficients {
public:
    LadderCoefficients(std::function<F(int)> a, std::function<F(int)> b) : a_(std::move(a)), b_(std::move(b)) {}

    explicit LadderCoefficients(const FactorQuadruple<F>& fq) : LadderCoefficients(fq.a_const, fq.b_const) {}

    /// sum_{k=n}^{N-1} (b_k - a_k)
    [[nodiscard]] F sum_bk_ak(int n, int N) const
    {
        F s(0);
        for (int k = n; k < N; ++k) {
            s = s + (b_(k) - a_(k));
        }
        return s;
    }

    /// prod_{h=m}^{N-1} sum_{k=n}^{h} (b_k - a_k)
    [[nodiscard]] F prod_sum(int m, int n, int N) const
    {
        F p(1);
        for (int h = m; h < N; ++h) {
            p = p * sum_bk_ak(n, h + 1);
        }
        return p;
    }

    /// a_N - sum_{k=n}^{N-1} (b_k - a_k): the eigenvalue of D_N on f_{N,n}.
    [[nodiscard]] F eigenvalue(int n, int N) const { return a_(N) - sum_bk_ak(n, N); }

    [[nodiscard]] F a(int N) const { return a_(N); }
    [[nodiscard]] F b(int N) const { return b_(N); }

private:
    std::function<F(int)> a_;
    std::function<F(int)> b_;
};

// Closed forms of the q-Racah ladder coefficients.

template <Field F>
F qracah_sum_closed(const QRacahParams<F>& p, int n, int N)
{
    return p.qp(-N) * (F(1) - p.qp(N - n)) * (F(1) - p.alpha() * p.beta() * p.qp(N + n + 1));
}

template <Field F>
F qracah_prod_sum_closed(const QRacahParams<F>& p, int m, int n, int N)
{
    const F& q = p.q();
    return p.qp(-static_cast<long>(N - m) * (N + m + 1) / 2) * q_pochhammer(p.qp(m - n + 1), q, N - m) *
           q_pochhammer(p.alpha() * p.beta() * p.qp(n + m + 2), q, N - m);
}

/// lambda_n = q^{-n} (1 - q^n)(1 - alpha beta q^{n+1}).
template <Field F>
F qracah_eigenvalue(const QRacahParams<F>& p, int n)
{
    return p.qp(-n) * (F(1) - p.qp(n)) * (F(1) - p.alpha() * p.beta() * p.qp(n + 1));
}

/// The unique phi in V_n with L_n phi = 0 and phi(0) = 1:
/// (alpha beta q^{n+1})^x (delta q^{-n}/alpha, q^{-n}/beta; q)_x / (alpha q, beta delta q; q)_x.
template <Field F>
GridFunction<F> seed(const QRacahParams<F>& p, int n)
{
    if (n < 0 || n > p.N()) {
        throw std::out_of_range("seed: need 0 <= n <= N");
    }
    const F one(1);
    const F ratio = p.alpha() * p.beta() * p.qp(n + 1);
    const F a1 = p.delta() / p.alpha() * p.qp(-n);
    const F a2 = p.qp(-n) / p.beta();
    const F b1 = p.alpha() * p.q();
    const F b2 = p.beta() * p.delta() * p.q();
    std::vector<F> v{one};
    for (int x = 0; x < n; ++x) {
        const F qx = p.qp(x);
        F den = (one - b1 * qx) * (one - b2 * qx);
        v.push_back(checked_div(v.back() * ratio * (one - a1 * qx) * (one - a2 * qx), den, "(alpha q, beta delta q; q)_x"));
    }
    return GridFunction<F>(std::move(v));
}

/// (q;q)_n / (q;q)_N * q^{(N-n)(N+n+1)/2}: maps f_{N,n} to r_n(.; N).
template <Field F>
F ladder_normalization(const QRacahParams<F>& p, int n, int N)
{
    const F& q = p.q();
    return q_pochhammer(q, q, n) / q_pochhammer(q, q, N) * p.qp(static_cast<long>(N - n) * (N + n + 1) / 2);
}

/// R_{N-1} ... R_n f by repeated application of the banded operators.
template <Field F>
GridFunction<F> raise_iterated(const QRacahParams<F>& p, GridFunction<F> f, int N)
{
    for (int k = f.level(); k < N; ++k) {
        f = build_R(p, k).apply(f);
    }
    return f;
}

/// R_{N-1} ... R_n f through the closed double sum with q-binomials.
template <Field F>
GridFunction<F> raise_closed(const QRacahParams<F>& p, const GridFunction<F>& f, int N)
{
    const int n = f.level();
    const F& q = p.q();
    const F& de = p.delta();
    const F one(1);
    const F outer = q_pochhammer(q, q, N - n) * p.qp(-static_cast<long>(N - n) * (N + n + 1) / 2);
    std::vector<F> out;
    for (int x = 0; x <= N; ++x) {
        F s(0);
        for (int y = std::max(x - N + n, 0); y <= std::min(x, n); ++y) {
            F den = q_pochhammer(de * p.qp(y - n), q, n + 1);
            F t = q_binomial(N - x, n - y, q) * q_binomial(x, y, q) * q_pochhammer(de * p.qp(x - N), q, y) *
                  q_pochhammer(de * p.qp(x - n + y + 1), q, n - y) *
                  checked_div(one - de * p.qp(2 * y - n), den, "(delta q^(y-n); q)_(n+1)") *
                  p.qp(static_cast<long>(y) * (y + N - x - n));
            s = s + t * f[static_cast<std::size_t>(y)];
        }
        out.push_back(outer * s);
    }
    return GridFunction<F>(std::move(out));
}

template <Field F>
struct RaiseChain {
    GridFunction<F> iterated;
    GridFunction<F> closed;
    bool agree = false;

    [[nodiscard]] const GridFunction<F>& value() const { return iterated; }
};

/// R_{N-1} ... R_n f computed two independent ways.
template <Field F>
RaiseChain<F> raise_chain(const QRacahParams<F>& p, const GridFunction<F>& f, int N)
{
    if (N < f.level()) {
        throw std::invalid_argument("raise_chain: target level below source level");
    }
    RaiseChain<F> r{raise_iterated(p, f, N), raise_closed(p, f, N), false};
    r.agree = approx_equal(r.iterated, r.closed);
    return r;
}

/// Unnormalized ladder image f_{N,n} = R_{N-1} ... R_n seed_n.
template <Field F>
GridFunction<F> ladder_image(const QRacahParams<F>& p, int n, int N)
{
    return raise_iterated(p, seed(p, n), N);
}

/// r_n(x) through the closed double sum with the seed substituted.
template <Field F>
F qracah_closed_form(const QRacahParams<F>& p, int n, int x)
{
    const int N = p.N();
    const F& q = p.q();
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    const F one(1);
    F s(0);
    for (int y = std::max(x - N + n, 0); y <= std::min(x, n); ++y) {
        F den = q_pochhammer(de * p.qp(y - n), q, n + 1) * q_pochhammer(al * q, q, y) *
                q_pochhammer(be * de * q, q, y);
        F t = q_binomial(N - x, n - y, q) * q_binomial(x, y, q) * q_pochhammer(de * p.qp(x - N), q, y) *
              q_pochhammer(de * p.qp(x - n + y + 1), q, n - y) * (one - de * p.qp(2 * y - n)) *
              p.qp(static_cast<long>(y) * (y + N - x - n)) * ipow(al * be * p.qp(n + 1), y) *
              q_pochhammer(de / al * p.qp(-n), q, y) * q_pochhammer(p.qp(-n) / be, q, y);
        s = s + checked_div(t, den, "closed-form denominator");
    }
    return q_pochhammer(q, q, n) / q_pochhammer(p.qp(N - n + 1), q, n) * s;
}

enum class Route { ladder, closed_form, hypergeometric };

inline std::string route_name(Route r)
{
    switch (r) {
    case Route::ladder:
        return "ladder";
    case Route::closed_form:
        return "closed";
    case Route::hypergeometric:
        return "hyper";
    }
    return "?";
}

template <Field F>
struct QRacahPolynomial {
    int n;
    QRacahParams<F> params;
    GridFunction<F> values;
    Route provenance;
    /// D_N r_n = lambda_n r_n, checked at construction.
    bool eigen_certified;
};

/// Values of r_n(x; alpha, beta, delta, N; q) for x = 0..N along one route.
template <Field F>
GridFunction<F> qracah_values(const QRacahParams<F>& p, int n, Route route)
{
    const int N = p.N();
    if (n < 0 || n > N) {
        throw std::out_of_range("qracah: need 0 <= n <= N");
    }
    switch (route) {
    case Route::ladder:
        return ladder_normalization(p, n, N) * ladder_image(p, n, N);
    case Route::closed_form: {
        std::vector<F> v;
        for (int x = 0; x <= N; ++x) {
            v.push_back(qracah_closed_form(p, n, x));
        }
        return GridFunction<F>(std::move(v));
    }
    case Route::hypergeometric: {
        std::vector<F> v;
        for (int x = 0; x <= N; ++x) {
            v.push_back(eval_4phi3_qracah(p, n, x));
        }
        return GridFunction<F>(std::move(v));
    }
    }
    throw std::invalid_argument("qracah: unknown route");
}

template <Field F>
bool is_eigenfunction(const BandedOperator<F>& D, const GridFunction<F>& f, const F& lambda)
{
    return approx_equal(D.apply(f), lambda * f);
}

template <Field F>
QRacahPolynomial<F> qracah(const QRacahParams<F>& p, int n, Route route = Route::ladder)
{
    auto values = qracah_values(p, n, route);
    bool ok = is_eigenfunction(build_D(p, p.N()), values, qracah_eigenvalue(p, n));
    return QRacahPolynomial<F>{n, p, std::move(values), route, ok};
}

/// r_0, ..., r_N along one route.
template <Field F>
std::vector<GridFunction<F>> qracah_family(const QRacahParams<F>& p, Route route = Route::ladder)
{
    std::vector<GridFunction<F>> out;
    for (int n = 0; n <= p.N(); ++n) {
        out.push_back(qracah_values(p, n, route));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Contiguous relations across levels
// ---------------------------------------------------------------------------

template <Field F>
struct RelationRow {
    int x;
    F lhs;
    F rhs;
    bool holds;
};

template <Field F>
struct FirstOrderReport {
    int n;
    int N;
    /// Relation raising the level: x = 0..N+1.
    std::vector<RelationRow<F>> raising;
    /// Relation lowering the level: x = 0..N-1 (empty when N = 0).
    std::vector<RelationRow<F>> lowering;

    [[nodiscard]] bool all_hold() const
    {
        auto ok = [](const auto& rows) {
            return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.holds; });
        };
        return ok(raising) && ok(lowering);
    }
};

/// Checks the two first-order difference relations linking r_n at levels
/// N - 1, N and N + 1. The level of `p` is ignored; levels are taken from N.
template <Field F>
FirstOrderReport<F> first_order_relations_check(const QRacahParams<F>& p, int n, int N, Route route = Route::ladder)
{
    if (n < 0 || n > N) {
        throw std::out_of_range("first_order_relations_check: need 0 <= n <= N");
    }
    const F one(1);
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    auto pN = p.at_level(N);
    auto pUp = p.at_level(N + 1);
    const auto r = qracah_values(pN, n, route);
    const auto rUp = qracah_values(pUp, n, route);

    FirstOrderReport<F> rep{n, N, {}, {}};
    for (int x = 0; x <= N + 1; ++x) {
        F lhs = (one - p.qp(x)) * (one - de * p.qp(x)) * r.at(x - 1) -
                (one - p.qp(x - N - 1)) * (p.qp(N + 1) - de * p.qp(x)) * r.at(x);
        F rhs = (one - de * p.qp(2 * x - N - 1)) * (one - p.qp(N + 1)) * rUp[static_cast<std::size_t>(x)];
        bool holds = field_equal(lhs, rhs);
        rep.raising.push_back({x, std::move(lhs), std::move(rhs), holds});
    }
    if (N >= 1) {
        // For n = N the lower polynomial does not exist; its prefactor (1 - q^{N-n}) vanishes.
        GridFunction<F> rDown = n <= N - 1 ? qracah_values(p.at_level(N - 1), n, route) : GridFunction<F>::zeros(N - 1);
        for (int x = 0; x <= N - 1; ++x) {
            F lhs = (one - al * p.qp(x + 1)) * (one - be * de * p.qp(x + 1)) * (one - p.qp(N)) * r.at(x + 1) -
                    (al - de * p.qp(x - N)) * (be * p.qp(N + 1) - p.qp(x + 1)) * (one - p.qp(N)) * r.at(x);
            F rhs = (one - p.qp(N - n)) * (one - al * be * p.qp(N + n + 1)) * (one - de * p.qp(2 * x - N + 1)) *
                    rDown[static_cast<std::size_t>(x)];
            bool holds = field_equal(lhs, rhs);
            rep.lowering.push_back({x, std::move(lhs), std::move(rhs), holds});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Polynomiality in mu(x) = q^{-x} + delta q^{x-N}
// ---------------------------------------------------------------------------

template <Field F>
F qracah_mu(const QRacahParams<F>& p, int x)
{
    return p.qp(-x) + p.delta() * p.qp(x - p.N());
}

/// Newton interpolation of (nodes[i], values[i]) evaluated at t.
template <Field F>
F newton_interpolate(const std::vector<F>& nodes, const std::vector<F>& values, const F& t)
{
    const std::size_t m = nodes.size();
    std::vector<F> c = values;
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = m - 1; i >= j; --i) {
            c[i] = checked_div(c[i] - c[i - 1], nodes[i] - nodes[i - j], "coincident interpolation nodes");
        }
    }
    F acc = c[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
        acc = acc * (t - nodes[i]) + c[i];
    }
    return acc;
}

template <Field F>
struct MuPolynomialCheck {
    GridFunction<F> predicted;
    bool agree = false;
};

/// Interpolates r_n at mu(0..n) with a degree-n polynomial and compares its
/// values at mu(0..N) with r_n.
template <Field F>
MuPolynomialCheck<F> mu_polynomial_check(const QRacahParams<F>& p, int n, const GridFunction<F>& rn)
{
    std::vector<F> nodes;
    std::vector<F> vals;
    for (int x = 0; x <= n; ++x) {
        nodes.push_back(qracah_mu(p, x));
        vals.push_back(rn[static_cast<std::size_t>(x)]);
    }
    std::vector<F> pred;
    for (int x = 0; x <= p.N(); ++x) {
        pred.push_back(newton_interpolate(nodes, vals, qracah_mu(p, x)));
    }
    MuPolynomialCheck<F> out{GridFunction<F>(std::move(pred)), false};
    out.agree = approx_equal(out.predicted, rn);
    return out;
}

} // namespace qladder
