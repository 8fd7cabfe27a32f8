#pragma once

// Weights, scalar products, Gram matrices and norms on V_N.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qladder/field.hpp"
#include "qladder/grid.hpp"
#include "qladder/params.hpp"

namespace qladder {

enum class WeightForm { scalar1, scalar2, racah_q1 };

inline std::string weight_form_name(WeightForm f)
{
    switch (f) {
    case WeightForm::scalar1:
        return "scalar1";
    case WeightForm::scalar2:
        return "scalar2";
    case WeightForm::racah_q1:
        return "racah-q1";
    }
    return "?";
}

template <Field F>
struct WeightVector {
    WeightForm form;
    GridFunction<F> w;

    [[nodiscard]] int level() const { return w.level(); }
    const F& operator[](std::size_t x) const { return w[x]; }
};

namespace detail {

template <Field F>
F scalar1_weight(const QRacahParams<F>& p, int x)
{
    const int N = p.N();
    const F& q = p.q();
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    const F one(1);
    const F pre = p.qp(static_cast<long>(N) * (N + 1) / 2) * q_pochhammer(al / de * q, q, N) *
                  q_pochhammer(be * q, q, N) / (q_pochhammer(q, q, N) * q_pochhammer(one / de, q, N));
    F num = q_pochhammer(al * q, q, x) * q_pochhammer(be * de * q, q, x) * q_pochhammer(p.qp(-N), q, x) *
            q_pochhammer(de * p.qp(-N), q, x) * (one - de * p.qp(2 * x - N));
    F den = q_pochhammer(q, q, x) * q_pochhammer(de / al * p.qp(-N), q, x) * q_pochhammer(p.qp(-N) / be, q, x) *
            q_pochhammer(de * q, q, x) * ipow(al * be * q, x) * (one - de * p.qp(-N));
    return pre * checked_div(num, den, "weight denominator");
}

template <Field F>
F scalar2_weight(const QRacahParams<F>& p, int x)
{
    const int N = p.N();
    const F& q = p.q();
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    const F one(1);
    F num = q_pochhammer(al * q, q, x) * q_pochhammer(p.qp(-x) / (be * de), q, x) * q_pochhammer(be * q, q, N - x) *
            q_pochhammer(al / de * q, q, N - x) * ipow(be, x) * p.qp(static_cast<long>(N) * (N + 1) / 2 + x) *
            (one - p.qp(N - 2 * x) / de);
    F den = q_pochhammer(q, q, x) * q_pochhammer(q, q, N - x) * q_pochhammer(p.qp(-x) / de, q, N + 1);
    return checked_div(num, den, "weight denominator");
}

} // namespace detail

/// Weight of the q-Racah scalar product on V_N in either equivalent form.
template <Field F>
WeightVector<F> weight(const QRacahParams<F>& p, WeightForm form = WeightForm::scalar1)
{
    if (form == WeightForm::racah_q1) {
        throw std::invalid_argument("weight: racah-q1 form needs Racah parameters");
    }
    std::vector<F> w;
    for (int x = 0; x <= p.N(); ++x) {
        w.push_back(form == WeightForm::scalar1 ? detail::scalar1_weight(p, x) : detail::scalar2_weight(p, x));
    }
    return {form, GridFunction<F>(std::move(w))};
}

/// Weight of the Racah scalar product on V_N (gamma = -N-1).
template <Field F>
WeightVector<F> weight(const RacahParams<F>& p)
{
    const int N = p.N();
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    const F pre = pochhammer(be + F(1), N) * pochhammer(al - de + F(1), N) /
                  (factorial<F>(N) * pochhammer(-de, N));
    std::vector<F> w;
    for (int x = 0; x <= N; ++x) {
        F num = pochhammer(al + F(1), x) * pochhammer(be + de + F(1), x) * pochhammer(F(-N), x) *
                pochhammer(de - F(N), x) * (de - F(N) + F(2 * x));
        F den = pochhammer(-al + de - F(N), x) * pochhammer(-be - F(N), x) * pochhammer(de + F(1), x) *
                factorial<F>(x) * (de - F(N));
        w.push_back(pre * checked_div(num, den, "weight denominator"));
    }
    return {WeightForm::racah_q1, GridFunction<F>(std::move(w))};
}

/// sum_x w(x) f(x) g(x). Scalars are real, so conjugation is the identity.
template <Field F>
F inner_product(const GridFunction<F>& f, const GridFunction<F>& g, const WeightVector<F>& w)
{
    if (f.size() != g.size() || f.size() != w.w.size()) {
        throw std::invalid_argument("inner_product: size mismatch");
    }
    F s(0);
    for (std::size_t x = 0; x < f.size(); ++x) {
        s = s + w.w[x] * f[x] * g[x];
    }
    return s;
}

template <Field F>
using Matrix = std::vector<std::vector<F>>;

/// G[n][m] = <polys[n], polys[m]>.
template <Field F>
Matrix<F> gram(const std::vector<GridFunction<F>>& polys, const WeightVector<F>& w)
{
    const std::size_t k = polys.size();
    Matrix<F> g(k, std::vector<F>(k, F(0)));
    for (std::size_t n = 0; n < k; ++n) {
        for (std::size_t m = n; m < k; ++m) {
            g[n][m] = inner_product(polys[n], polys[m], w);
            g[m][n] = g[n][m];
        }
    }
    return g;
}

/// Squared norm of r_n in V_N, evaluated in product form so it stays finite
/// when alpha beta q^{2n+1} = 1.
template <Field F>
F norm_closed_form(const QRacahParams<F>& p, int n)
{
    const int N = p.N();
    const F& q = p.q();
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    F num = p.qp(static_cast<long>(N) * (N + 1) / 2) * ipow(de * p.qp(-N), n) *
            q_pochhammer(al * be * p.qp(n + 1), q, n) * q_pochhammer(al * be * p.qp(2 * n + 2), q, N - n) *
            q_pochhammer(q, q, n) * q_pochhammer(al / de * q, q, n) * q_pochhammer(be * q, q, n);
    F den = q_pochhammer(q, q, N) * q_pochhammer(p.qp(-N), q, n) * q_pochhammer(be * de * q, q, n) *
            q_pochhammer(al * q, q, n);
    return checked_div(num, den, "norm denominator");
}

/// The same norm as a quotient with (1 - alpha beta q^{2n+1}) in the
/// denominator; empty when that factor vanishes.
template <Field F>
std::optional<F> norm_displayed_quotient(const QRacahParams<F>& p, int n)
{
    const int N = p.N();
    const F& q = p.q();
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    F lead = F(1) - al * be * p.qp(2 * n + 1);
    if (is_zero(lead)) {
        return std::nullopt;
    }
    F num = p.qp(static_cast<long>(N) * (N + 1) / 2) * ipow(de * p.qp(-N), n) *
            q_pochhammer(al * be * p.qp(n + 1), q, N + 1) * q_pochhammer(q, q, n) * q_pochhammer(al / de * q, q, n) *
            q_pochhammer(be * q, q, n);
    F den = lead * q_pochhammer(q, q, N) * q_pochhammer(p.qp(-N), q, n) * q_pochhammer(be * de * q, q, n) *
            q_pochhammer(al * q, q, n);
    return num / den;
}

/// ||r_n(.; n)||^2 = q^n (-delta)^n (alpha q/delta, beta q, alpha beta q^{n+1}; q)_n
///                   / (q, beta delta q, alpha q; q)_n.
template <Field F>
F norm_base_case(const QRacahParams<F>& p, int n)
{
    const F& q = p.q();
    const F& al = p.alpha();
    const F& be = p.beta();
    const F& de = p.delta();
    F num = p.qp(n) * ipow(-de, n) * q_pochhammer(al / de * q, q, n) * q_pochhammer(be * q, q, n) *
            q_pochhammer(al * be * p.qp(n + 1), q, n);
    F den = q_pochhammer(q, q, n) * q_pochhammer(be * de * q, q, n) * q_pochhammer(al * q, q, n);
    return checked_div(num, den, "norm denominator");
}

/// Entrywise check of W_N R = L^T W_{N-1}, where R: V_{N-1} -> V_N and
/// L: V_N -> V_{N-1}. This is the statement that L is the adjoint of R.
template <Field F>
bool adjoint_matrix_check(const BandedOperator<F>& R, const BandedOperator<F>& L, const WeightVector<F>& wN,
                          const WeightVector<F>& wNm1)
{
    const std::size_t rows = wN.w.size();
    const std::size_t cols = wNm1.w.size();
    if (R.codomain_size() != rows || R.domain_size() != cols || L.domain_size() != rows || L.codomain_size() != cols) {
        throw std::invalid_argument("adjoint_matrix_check: shape mismatch");
    }
    for (std::size_t x = 0; x < rows; ++x) {
        for (std::size_t y = 0; y < cols; ++y) {
            if (!field_equal(wN.w[x] * R.entry(x, y), L.entry(y, x) * wNm1.w[y])) {
                return false;
            }
        }
    }
    return true;
}

/// True when every weight is strictly positive.
template <Field F>
bool weight_positive(const WeightVector<F>& w)
{
    return std::all_of(w.w.values().begin(), w.w.values().end(), [](const F& v) { return F(0) < v; });
}

/// True when the values are pairwise distinct.
template <Field F>
bool pairwise_distinct(const std::vector<F>& values)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (field_equal(values[i], values[j])) {
                return false;
            }
        }
    }
    return true;
}

/// Determinant by Gaussian elimination.
template <Field F>
F determinant(Matrix<F> a)
{
    const std::size_t n = a.size();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n; ++r) {
            if constexpr (field_traits<F>::exact) {
                if (!is_zero(a[r][c])) {
                    piv = r;
                    break;
                }
            } else {
                if (!is_zero(a[r][c]) && (piv == n || std::fabs(a[r][c]) > std::fabs(a[piv][c]))) {
                    piv = r;
                }
            }
        }
        if (piv == n) {
            return F(0);
        }
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det = det * a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (is_zero(a[r][c])) {
                continue;
            }
            F m = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) {
                a[r][k] = a[r][k] - m * a[c][k];
            }
        }
    }
    return det;
}

/// Matrix [r_n(x)] with rows x and columns n.
template <Field F>
Matrix<F> value_matrix(const std::vector<GridFunction<F>>& polys)
{
    const std::size_t k = polys.size();
    Matrix<F> m(k, std::vector<F>(k, F(0)));
    for (std::size_t n = 0; n < k; ++n) {
        for (std::size_t x = 0; x < k; ++x) {
            m[x][n] = polys[n][x];
        }
    }
    return m;
}

} // namespace qladder
