#pragma once

// Parameter bundles for the q-Racah family (gamma q = q^{-N}) and the Racah
// family (gamma = -N-1). Both validate admissibility on construction and list
// every vanishing factor, so no later construction divides by zero.

#include <string>
#include <vector>

#include "qladder/errors.hpp"
#include "qladder/field.hpp"

namespace qladder {

/// Divides, or throws AdmissibilityError naming the vanishing denominator.
template <Field F>
F checked_div(const F& num, const F& den, const std::string& den_name)
{
    if (is_zero(den)) {
        throw AdmissibilityError({den_name});
    }
    return num / den;
}

inline std::string qpow_name(const std::string& coeff, long e)
{
    std::string s = "1 - ";
    if (!coeff.empty()) {
        s += coeff + "*";
    }
    return s + "q^(" + std::to_string(e) + ")";
}

template <Field F>
class QRacahParams {
public:
    /// Validates and returns the bundle; throws AdmissibilityError otherwise.
    static QRacahParams create(F alpha, F beta, F delta, F q, int N)
    {
        QRacahParams p(std::move(alpha), std::move(beta), std::move(delta), std::move(q), N);
        auto failures = p.admissibility_failures();
        if (!failures.empty()) {
            throw AdmissibilityError(std::move(failures));
        }
        return p;
    }

    /// Unchecked; for callers that test admissibility themselves.
    static QRacahParams unchecked(F alpha, F beta, F delta, F q, int N)
    {
        return QRacahParams(std::move(alpha), std::move(beta), std::move(delta), std::move(q), N);
    }

    [[nodiscard]] const F& alpha() const { return alpha_; }
    [[nodiscard]] const F& beta() const { return beta_; }
    [[nodiscard]] const F& delta() const { return delta_; }
    [[nodiscard]] const F& q() const { return q_; }
    [[nodiscard]] int N() const { return N_; }

    /// gamma is implicit: gamma = q^{-N-1}.
    [[nodiscard]] F gamma() const { return ipow(q_, -N_ - 1); }

    [[nodiscard]] QRacahParams at_level(int M) const { return create(alpha_, beta_, delta_, q_, M); }

    [[nodiscard]] F qp(long e) const { return ipow(q_, e); }

    [[nodiscard]] std::vector<std::string> admissibility_failures() const
    {
        std::vector<std::string> bad;
        if (N_ < 0) {
            bad.push_back("N < 0");
            return bad;
        }
        auto need = [&](const F& v, std::string name) {
            if (is_zero(v)) {
                bad.push_back(std::move(name));
            }
        };
        need(q_, "q");
        need(F(1) - q_, "1 - q");
        need(alpha_, "alpha");
        need(beta_, "beta");
        need(delta_, "delta");
        if constexpr (field_traits<F>::exact) {
            if (!(F(0) < q_ && q_ < F(1))) {
                bad.push_back("0 < q < 1");
            }
        }
        if (!bad.empty()) {
            return bad;
        }
        // Tridiagonal denominators 1 - delta q^{2x-N+s}, x = 0..N, s = -1, 0, 1.
        for (long e = -N_ - 1; e <= N_ + 1; ++e) {
            need(F(1) - delta_ * qp(e), qpow_name("delta", e));
        }
        // Seed denominators (alpha q, beta delta q; q)_N and (q; q)_N.
        for (long k = 1; k <= N_; ++k) {
            need(F(1) - alpha_ * qp(k), qpow_name("alpha", k));
            need(F(1) - beta_ * delta_ * qp(k), qpow_name("beta*delta", k));
            need(F(1) - qp(k), qpow_name("", k));
        }
        // Weight denominators.
        for (long e = -N_; e <= -1; ++e) {
            need(F(1) - delta_ / alpha_ * qp(e), qpow_name("delta/alpha", e));
            need(F(1) - qp(e) / beta_, qpow_name("1/beta", e));
        }
        for (long e = -N_; e <= N_; ++e) {
            need(F(1) - qp(e) / delta_, qpow_name("1/delta", e));
        }
        return bad;
    }

private:
    QRacahParams(F alpha, F beta, F delta, F q, int N)
        : alpha_(std::move(alpha)), beta_(std::move(beta)), delta_(std::move(delta)), q_(std::move(q)), N_(N)
    {
    }

    F alpha_;
    F beta_;
    F delta_;
    F q_;
    int N_;
};

template <Field F>
class RacahParams {
public:
    static RacahParams create(F alpha, F beta, F delta, int N)
    {
        RacahParams p(std::move(alpha), std::move(beta), std::move(delta), N);
        auto failures = p.admissibility_failures();
        if (!failures.empty()) {
            throw AdmissibilityError(std::move(failures));
        }
        return p;
    }

    [[nodiscard]] const F& alpha() const { return alpha_; }
    [[nodiscard]] const F& beta() const { return beta_; }
    [[nodiscard]] const F& delta() const { return delta_; }
    [[nodiscard]] int N() const { return N_; }

    [[nodiscard]] RacahParams at_level(int M) const { return create(alpha_, beta_, delta_, M); }

    [[nodiscard]] std::vector<std::string> admissibility_failures() const
    {
        std::vector<std::string> bad;
        if (N_ < 0) {
            bad.push_back("N < 0");
            return bad;
        }
        auto need = [&](const F& v, std::string name) {
            if (is_zero(v)) {
                bad.push_back(std::move(name));
            }
        };
        auto shifted = [](const std::string& base, long k) { return base + " + (" + std::to_string(k) + ")"; };
        // 2x + delta - N + s for x = 0..N, s = -1, 0, 1.
        for (long k = -N_ - 1; k <= N_ + 1; ++k) {
            need(delta_ + F(k), shifted("delta", k));
        }
        for (long k = 1; k <= N_; ++k) {
            need(alpha_ + F(k), shifted("alpha", k));
            need(beta_ + delta_ + F(k), shifted("beta + delta", k));
        }
        // Weight denominators (delta - alpha - N)_x, (-beta - N)_x.
        for (long k = 0; k < N_; ++k) {
            need(delta_ - alpha_ + F(k - N_), shifted("delta - alpha", k - N_));
            need(-beta_ + F(k - N_), shifted("-beta", k - N_));
        }
        return bad;
    }

private:
    RacahParams(F alpha, F beta, F delta, int N)
        : alpha_(std::move(alpha)), beta_(std::move(beta)), delta_(std::move(delta)), N_(N)
    {
    }

    F alpha_;
    F beta_;
    F delta_;
    int N_;
};

} // namespace qladder
