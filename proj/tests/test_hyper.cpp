#include <doctest.h>

#include <optional>

#include "qladder/classical.hpp"
#include "qladder/hyper.hpp"
#include "qladder/io.hpp"
#include "qladder/ladder.hpp"
#include "qladder/sampler.hpp"
#include "support.hpp"

using namespace qladder;
using qtest::Q;
using qtest::r;

namespace {

// Brute-force oracles: each term from its Pochhammer products, no term ratios.

Q brute_basic(const std::vector<Q>& num, const std::vector<Q>& den, const Q& q, const Q& z, int n)
{
    Q sum(0);
    for (int k = 0; k <= n; ++k) {
        Q t = ipow(z, k) / q_pochhammer(q, q, k);
        for (const auto& a : num) {
            t = t * q_pochhammer(a, q, k);
        }
        for (const auto& b : den) {
            t = t / q_pochhammer(b, q, k);
        }
        sum = sum + t;
    }
    return sum;
}

Q brute_ordinary(const std::vector<Q>& num, const std::vector<Q>& den, int n)
{
    Q sum(0);
    for (int k = 0; k <= n; ++k) {
        Q t = r(1) / factorial<Q>(k);
        for (const auto& a : num) {
            t = t * pochhammer(a, k);
        }
        for (const auto& b : den) {
            t = t / pochhammer(b, k);
        }
        sum = sum + t;
    }
    return sum;
}

/// Very-well-poised basic series with a = t^2, the pairs q t, -q t over t, -t kept literally.
Q brute_vwp_basic(const Q& t, std::vector<Q> params, int n, const Q& q, const Q& z)
{
    const Q a = t * t;
    params.push_back(ipow(q, -n));
    Q sum(0);
    for (int k = 0; k <= n; ++k) {
        Q term = q_pochhammer(a, q, k) * q_pochhammer(q * t, q, k) * q_pochhammer(-q * t, q, k) /
                 (q_pochhammer(t, q, k) * q_pochhammer(-t, q, k)) * ipow(z, k) / q_pochhammer(q, q, k);
        for (const auto& p : params) {
            term = term * q_pochhammer(p, q, k) / q_pochhammer(a * q / p, q, k);
        }
        sum = sum + term;
    }
    return sum;
}

/// Very-well-poised ordinary series with a = 2t, the pair t + 1 over t kept literally.
Q brute_vwp_ordinary(const Q& t, std::vector<Q> params, int n)
{
    const Q a = r(2) * t;
    params.push_back(Q(-n));
    Q sum(0);
    for (int k = 0; k <= n; ++k) {
        Q term = pochhammer(a, k) * pochhammer(t + r(1), k) / pochhammer(t, k) / factorial<Q>(k);
        for (const auto& p : params) {
            term = term * pochhammer(p, k) / pochhammer(a - p + r(1), k);
        }
        sum = sum + term;
    }
    return sum;
}

/// The oracle value, or nothing where its literal form hits a pole.
template <class Fn>
std::optional<Q> defined(Fn fn)
{
    try {
        return fn();
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

} // namespace

TEST_CASE("terminating series: trivial truncations")
{
    SeriesSpec<Q> s{SeriesKind::basic, {r(2, 3), r(5, 7)}, {r(1, 9)}, r(1, 2), r(3), 0};
    CHECK(eval_terminating(s) == r(1));
    s.n = 4;
    s.numerators = {r(1), r(5, 7)};
    CHECK(eval_terminating(s) == r(1));
    SeriesSpec<Q> o{SeriesKind::ordinary, {r(0), r(5, 7)}, {r(1, 9)}, r(1), r(1), 4};
    CHECK(eval_terminating(o) == r(1));
    const auto p = qtest::example(3);
    for (int n = 0; n <= 3; ++n) {
        CHECK(eval_4phi3_qracah(p, n, 0) == r(1));
        CHECK(eval_4phi3_qracah(p, 0, n) == r(1));
    }
}

TEST_CASE("terminating series match brute-force summation")
{
    ParamSampler s(21, "series");
    for (int i = 0; i < 40; ++i) {
        const int n = static_cast<int>(s.integer(0, 6));
        const Q q = s.unit_interval();
        const std::vector<Q> num{ipow(q, -n), s.nonzero(), s.nonzero()};
        const std::vector<Q> den{s.nonzero(), s.nonzero()};
        const Q z = s.nonzero();
        try {
            const Q got = eval_terminating(SeriesSpec<Q>{SeriesKind::basic, num, den, q, z, n});
            Q want;
            CHECK_NOTHROW(want = brute_basic(num, den, q, z, n));
            CHECK(got == want);
        } catch (const std::domain_error&) {
        }
        const std::vector<Q> onum{Q(-n), s.nonzero(), s.nonzero()};
        try {
            const Q got = eval_terminating(SeriesSpec<Q>{SeriesKind::ordinary, onum, den, r(1), r(1), n});
            Q want;
            CHECK_NOTHROW(want = brute_ordinary(onum, den, n));
            CHECK(got == want);
        } catch (const std::domain_error&) {
        }
    }
}

TEST_CASE("denominators vanishing before termination are rejected, after it allowed")
{
    // (-3)_k first vanishes at k = 4, past the termination index 2.
    SeriesSpec<Q> ok{SeriesKind::ordinary, {r(-2), r(1, 2)}, {r(-3)}, r(1), r(1), 2};
    CHECK(eval_terminating(ok) == brute_ordinary({r(-2), r(1, 2)}, {r(-3)}, 2));
    // (-1)_k vanishes at k = 2 with n = 3.
    SeriesSpec<Q> bad{SeriesKind::ordinary, {r(-3), r(1, 2)}, {r(-1)}, r(1), r(1), 3};
    CHECK_THROWS_AS(eval_terminating(bad), AdmissibilityError);
    // An earlier vanishing numerator does not rescue a vanishing denominator: 0/0.
    SeriesSpec<Q> indet{SeriesKind::ordinary, {r(-1), r(1, 2)}, {r(-1)}, r(1), r(1), 2};
    CHECK_THROWS_AS(eval_terminating(indet), AdmissibilityError);
    const Q q = r(1, 2);
    SeriesSpec<Q> basic_ok{SeriesKind::basic, {ipow(q, -2)}, {ipow(q, -3)}, q, q, 2};
    CHECK(eval_terminating(basic_ok) == brute_basic({ipow(q, -2)}, {ipow(q, -3)}, q, q, 2));
    SeriesSpec<Q> basic_bad{SeriesKind::basic, {ipow(q, -3)}, {ipow(q, -1)}, q, q, 3};
    CHECK_THROWS_AS(eval_terminating(basic_bad), AdmissibilityError);
}

TEST_CASE("the folded paired factor equals its definition")
{
    ParamSampler s(22, "paired");
    for (int i = 0; i < 20; ++i) {
        const Q t = s.nonzero();
        const Q q = s.unit_interval();
        const Q a = t * t;
        if (a == r(1)) {
            continue;
        }
        for (int k = 0; k <= 6; ++k) {
            const Q den = q_pochhammer(t, q, k) * q_pochhammer(-t, q, k);
            if (den.is_zero()) {
                continue;
            }
            CHECK(q_pochhammer(q * t, q, k) * q_pochhammer(-q * t, q, k) / den ==
                  (r(1) - a * ipow(q, 2 * k)) / (r(1) - a));
            if (!pochhammer(t, k).is_zero()) {
                CHECK(pochhammer(t + r(1), k) / pochhammer(t, k) == (r(2) * t + r(2 * k)) / (r(2) * t));
            }
        }
    }
}

TEST_CASE("6phi5 summation")
{
    CHECK(check_6phi5_summation(r(2, 3), r(3, 5), r(-1, 7), 0, r(1, 2)).equal);

    ParamSampler s(23, "6phi5");
    for (int i = 0; i < 40; ++i) {
        const int n = static_cast<int>(s.integer(0, 6));
        const Q t = s.nonzero();
        const Q b = s.nonzero();
        const Q c = s.nonzero();
        const Q q = s.unit_interval();
        try {
            const auto rep = check_6phi5_summation(t * t, b, c, n, q);
            CHECK(rep.equal);
            if (const auto want = defined([&] { return brute_vwp_basic(t, {b, c}, n, q, t * t * ipow(q, n + 1) / (b * c)); })) {
                CHECK(rep.lhs == *want);
            }
        } catch (const std::domain_error&) {
        }
    }

    // Norm specialization a = delta q^{-n}, b = q^{-n}/beta, c = delta q^{-n}/alpha.
    const auto p = qtest::example(5);
    for (int n = 0; n <= 5; ++n) {
        const Q qn = ipow(p.q(), -n);
        const auto rep = check_6phi5_summation(p.delta() * qn, qn / p.beta(), p.delta() / p.alpha() * qn, n, p.q());
        CHECK(rep.equal);
    }
}

TEST_CASE("Watson transformation")
{
    CHECK(check_watson(r(2, 3), r(3, 5), r(-1, 7), r(4, 9), r(5, 2), 0, r(1, 2)).equal);

    ParamSampler s(24, "watson");
    for (int i = 0; i < 40; ++i) {
        const int n = static_cast<int>(s.integer(0, 5));
        const Q t = s.nonzero();
        const Q b = s.nonzero();
        const Q c = s.nonzero();
        const Q d = s.nonzero();
        const Q e = s.nonzero();
        const Q q = s.unit_interval();
        const Q a = t * t;
        try {
            const auto rep = check_watson(a, b, c, d, e, n, q);
            CHECK(rep.equal);
            if (const auto want = defined([&] { return brute_vwp_basic(t, {b, c, d, e}, n, q, a * a * ipow(q, n + 2) / (b * c * d * e)); })) {
                CHECK(rep.lhs == *want);
            }
            const Q rhs = q_pochhammer(a * q, q, n) * q_pochhammer(a * q / (d * e), q, n) /
                          (q_pochhammer(a * q / d, q, n) * q_pochhammer(a * q / e, q, n)) *
                          brute_basic({ipow(q, -n), d, e, a * q / (b * c)},
                                      {a * q / b, a * q / c, d * e * ipow(q, -n) / a}, q, q, n);
            CHECK(rep.rhs == rhs);
        } catch (const std::domain_error&) {
        }
    }

    SUBCASE("a corrupted prefactor is caught")
    {
        const auto bad = check_watson(r(2, 3), r(3, 5), r(-1, 7), r(4, 9), r(5, 2), 3, r(1, 2), r(2));
        CHECK_FALSE(bad.equal);
    }

    SUBCASE("with de = aq the 8phi7 collapses to the 6phi5 series")
    {
        ParamSampler u(25, "collapse");
        for (int i = 0; i < 20; ++i) {
            const int n = static_cast<int>(u.integer(0, 6));
            const Q a = u.nonzero();
            const Q b = u.nonzero();
            const Q c = u.nonzero();
            const Q d = u.nonzero();
            const Q q = u.unit_interval();
            const Q e = a * q / d;
            try {
                const Q z = a * a * ipow(q, n + 2) / (b * c * d * e);
                const Q eight = eval_very_well_poised(VeryWellPoisedSpec<Q>{SeriesKind::basic, a, {b, c, d, e}, n, q, z});
                const Q six = eval_very_well_poised(VeryWellPoisedSpec<Q>{SeriesKind::basic, a, {b, c}, n, q, z});
                CHECK(eight == six);
                CHECK(six == check_6phi5_summation(a, b, c, n, q).rhs);
            } catch (const std::domain_error&) {
            }
        }
    }
}

TEST_CASE("Watson at the q-Racah specialization reproduces the 4phi3 form")
{
    const auto p = qtest::example(4);
    for (int N = 0; N <= 4; ++N) {
        const auto pN = p.at_level(N);
        for (int n = 0; n <= N; ++n) {
            const GridFunction<Q> rn = qracah_values(pN, n, Route::ladder);
            const Q qn = ipow(p.q(), -n);
            for (int x = 0; x <= N - n; ++x) {
                const auto rep = check_watson(p.delta() * qn, qn / p.beta(), p.delta() / p.alpha() * qn,
                                              p.delta() * ipow(p.q(), x - N), ipow(p.q(), -x), n, p.q());
                CHECK(rep.equal);
                const Q pre = q_pochhammer(ipow(p.q(), N - x - n + 1), p.q(), n) *
                              q_pochhammer(p.delta() * ipow(p.q(), x - n + 1), p.q(), n) /
                              (q_pochhammer(ipow(p.q(), N - n + 1), p.q(), n) *
                               q_pochhammer(p.delta() * ipow(p.q(), -n + 1), p.q(), n));
                CHECK(pre * rep.lhs == rn[static_cast<std::size_t>(x)]);
                CHECK(pre * rep.rhs == eval_4phi3_qracah(pN, n, x));
                CHECK(eval_8phi7_qracah(pN, n, x) == rn[static_cast<std::size_t>(x)]);
            }
        }
    }
    CHECK(eval_4phi3_qracah(qtest::example(3), 1, 1) == qracah_values(qtest::example(3), 1, Route::ladder)[1]);
    CHECK_THROWS_AS(eval_8phi7_qracah(qtest::example(3), 2, 2), std::out_of_range);
}

TEST_CASE("elementary transformations behind the 8phi7 form")
{
    ParamSampler s(26, "q-elementary");
    for (int i = 0; i < 5; ++i) {
        const Q q = s.unit_interval();
        const Q de = s.nonzero();
        for (int N = 0; N <= 6; ++N) {
            for (int n = 0; n <= N; ++n) {
                for (int x = 0; x <= N; ++x) {
                    for (int y = std::max(x - N + n, 0); y <= std::min(x, n); ++y) {
                        const Q sign = y % 2 == 0 ? r(1) : r(-1);
                        if (x <= N - n) {
                            CHECK(q_pochhammer(q, q, n) * q_binomial(N - x, n - y, q) ==
                                  sign * ipow(q, y * (y + 1) / 2 + y * (n - y)) *
                                      q_pochhammer(ipow(q, N - x - n + 1), q, n) * q_pochhammer(ipow(q, -n), q, y) /
                                      q_pochhammer(ipow(q, N - x - n + 1), q, y));
                        }
                        CHECK(q_binomial(x, y, q) == sign * ipow(q, y * (x - y) + y * (y + 1) / 2) *
                                                          q_pochhammer(ipow(q, -x), q, y) / q_pochhammer(q, q, y));
                        const Q d3 = q_pochhammer(de * ipow(q, x - n + 1), q, y);
                        const Q d4 = q_pochhammer(de * ipow(q, y - n), q, n + 1) *
                                     q_pochhammer(de * ipow(q, -n + 1), q, n) * q_pochhammer(de * q, q, y) *
                                     (r(1) - de * ipow(q, -n));
                        if (!d3.is_zero()) {
                            CHECK(q_pochhammer(de * ipow(q, x - n + y + 1), q, n - y) ==
                                  q_pochhammer(de * ipow(q, x - n + 1), q, n) / d3);
                        }
                        if (!d4.is_zero()) {
                            // The sqrt(delta) pairs folded: (1 - a q^{2y}) / (1 - a) with a = delta q^{-n}.
                            CHECK((r(1) - de * ipow(q, 2 * y - n)) / q_pochhammer(de * ipow(q, y - n), q, n + 1) ==
                                  r(1) / q_pochhammer(de * ipow(q, -n + 1), q, n) *
                                      q_pochhammer(de * ipow(q, -n), q, y) / q_pochhammer(de * q, q, y) *
                                      (r(1) - de * ipow(q, -n) * ipow(q, 2 * y)) / (r(1) - de * ipow(q, -n)));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("Dougall summation")
{
    CHECK(check_dougall_5F4(r(2, 3), r(3, 5), r(-1, 7), 0).equal);

    ParamSampler s(27, "dougall");
    for (int i = 0; i < 40; ++i) {
        const int n = static_cast<int>(s.integer(0, 6));
        const Q t = s.nonzero();
        const Q c = s.nonzero();
        const Q d = s.nonzero();
        try {
            const auto rep = check_dougall_5F4(r(2) * t, c, d, n);
            CHECK(rep.equal);
            if (const auto want = defined([&] { return brute_vwp_ordinary(t, {c, d}, n); })) {
                CHECK(rep.lhs == *want);
            }
        } catch (const std::domain_error&) {
        }
    }

    // Racah norm specialization a = delta - n, c = -(beta + n), d = -(alpha - delta + n).
    const auto p = qtest::racah_example(5);
    const Q& al = p.alpha();
    const Q& be = p.beta();
    const Q& de = p.delta();
    for (int n = 0; n <= 5; ++n) {
        const auto rep = check_dougall_5F4(de - Q(n), -(be + Q(n)), -(al - de + Q(n)), n);
        CHECK(rep.equal);
        const Q pre = pochhammer(be + r(1), n) * pochhammer(al - de + r(1), n) / (factorial<Q>(n) * pochhammer(-de, n));
        CHECK(pre * rep.rhs == racah_norm_base_case(p.at_level(n), n));
    }
}

TEST_CASE("Whipple transformation")
{
    CHECK(check_whipple_7F6(r(2, 3), r(3, 5), r(-1, 7), r(4, 9), r(5, 2), 0).equal);

    ParamSampler s(28, "whipple");
    for (int i = 0; i < 40; ++i) {
        const int n = static_cast<int>(s.integer(0, 5));
        const Q t = s.nonzero();
        const Q b = s.nonzero();
        const Q c = s.nonzero();
        const Q d = s.nonzero();
        const Q e = s.nonzero();
        const Q a = r(2) * t;
        try {
            const auto rep = check_whipple_7F6(a, b, c, d, e, n);
            CHECK(rep.equal);
            if (const auto want = defined([&] { return brute_vwp_ordinary(t, {b, c, d, e}, n); })) {
                CHECK(rep.lhs == *want);
            }
            const Q rhs = pochhammer(a + r(1), n) * pochhammer(a - d - e + r(1), n) /
                          (pochhammer(a - d + r(1), n) * pochhammer(a - e + r(1), n)) *
                          brute_ordinary({a - b - c + r(1), d, e, Q(-n)}, {a - b + r(1), a - c + r(1), d + e - a - Q(n)}, n);
            CHECK(rep.rhs == rhs);
        } catch (const std::domain_error&) {
        }
    }

    // The Racah specialization turns the 7F6 form into the 4F3 form.
    const auto p = qtest::racah_example(4);
    const Q& al = p.alpha();
    const Q& be = p.beta();
    const Q& de = p.delta();
    for (int N = 0; N <= 4; ++N) {
        const auto pN = p.at_level(N);
        for (int n = 0; n <= N; ++n) {
            const auto rn = racah_values(pN, n, Route::ladder);
            for (int x = 0; x <= N - n; ++x) {
                const auto rep = check_whipple_7F6(de - Q(n), -be - Q(n), -al + de - Q(n), Q(-x), Q(x - N) + de, n);
                CHECK(rep.equal);
                CHECK(eval_7F6_racah(pN, n, x) == rn[static_cast<std::size_t>(x)]);
                CHECK(eval_4F3_racah(pN, n, x) == rn[static_cast<std::size_t>(x)]);
            }
        }
    }
}

TEST_CASE("elementary transformations behind the 7F6 form")
{
    ParamSampler s(29, "elementary");
    for (int i = 0; i < 5; ++i) {
        const Q de = s.nonzero();
        for (int N = 0; N <= 6; ++N) {
            for (int n = 0; n <= N; ++n) {
                for (int x = 0; x <= N; ++x) {
                    for (int y = std::max(x - N + n, 0); y <= std::min(x, n); ++y) {
                        const Q X(x);
                        const Q h = (de - Q(n)) / r(2);
                        const Q den1 = pochhammer(X + de - Q(N), y) * (de - Q(n)) * pochhammer(h + r(1), y);
                        if (!den1.is_zero()) {
                            CHECK(pochhammer(Q(x + y - N) + de, y - x + N - n) * pochhammer(Q(2 * y - n + 1) + de, x - y) ==
                                  pochhammer(X + de - Q(N), N - n + 1) * pochhammer(de + X - Q(n) + r(1), y) *
                                      pochhammer(h, y) / den1);
                        }
                        // Both sides are 0/0 beyond x = N - n; compared where defined.
                        if (x <= N - n) {
                            CHECK(binomial<Q>(N - x, n - y) * binomial<Q>(x, y) / binomial<Q>(N, n) ==
                                  pochhammer(Q(N - x - n + 1), n) / pochhammer(Q(N - n + 1), n) *
                                      pochhammer(-X, y) * pochhammer(Q(-n), y) /
                                      (pochhammer(Q(N - x - n + 1), y) * factorial<Q>(y)));
                        }
                        if (!pochhammer(de + r(1), y).is_zero()) {
                            CHECK(pochhammer(Q(y + 1) + de, x - y) == pochhammer(de + r(1), x) / pochhammer(de + r(1), y));
                        }
                        const Q den4 = pochhammer(de - Q(n), n + x + 1);
                        if (!den4.is_zero()) {
                            CHECK(pochhammer(X + de - Q(N), y - x + N - n) ==
                                  pochhammer(de - Q(n), y) * pochhammer(X + de - Q(N), N + 1) / den4);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("identity reports serialize")
{
    const auto rep = check_dougall_5F4(r(2, 3), r(3, 5), r(-1, 7), 2);
    const auto j = report_json(rep);
    CHECK(j["identity"] == "dougall");
    CHECK(j["params"]["a"] == "2/3");
    CHECK(j["equal"] == true);
    CHECK(j["lhs"] == j["rhs"]);
}
