#include <doctest.h>

#include <thread>
#include <vector>

#include "qladder/field.hpp"
#include "qladder/sampler.hpp"
#include "support.hpp"

using namespace qladder;
using qtest::Q;
using qtest::r;

TEST_CASE("rationals are kept canonical")
{
    CHECK(Q(6, -4).str() == "-3/2");
    CHECK(Q(0, 7).str() == "0");
    CHECK(Q(10, 5).str() == "2");
    CHECK(Q::parse("-12/8") == r(-3, 2));
    CHECK(Q::parse("5").str() == "5");
    CHECK_THROWS_AS(Q::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Q::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(r(1) / r(0), std::domain_error);
}

TEST_CASE("field axioms hold exactly on random rationals")
{
    ParamSampler s(1, "field-axioms");
    for (int i = 0; i < 200; ++i) {
        const Q a = s.any(50, 50);
        const Q b = s.any(50, 50);
        const Q c = s.any(50, 50);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        if (!a.is_zero()) {
            CHECK(a * a.reciprocal() == r(1));
        }
    }
}

TEST_CASE("q-Pochhammer symbol")
{
    CHECK(q_pochhammer(r(7, 3), r(1, 5), 0) == r(1));
    for (int k = 1; k <= 6; ++k) {
        CHECK(q_pochhammer(r(1), r(2, 3), k) == r(0));
    }
    CHECK(q_pochhammer(r(1, 2), r(1, 2), 2) == (r(1) - r(1, 2)) * (r(1) - r(1, 4)));
    CHECK(q_pochhammer(r(1, 2), r(1, 2), 2) == r(3, 8));
    CHECK_THROWS_AS(q_pochhammer(r(1, 2), r(1, 2), -1), std::domain_error);
}

TEST_CASE("rising factorial")
{
    CHECK(pochhammer(r(-4, 9), 0) == r(1));
    for (int n = 1; n <= 5; ++n) {
        CHECK(pochhammer(r(0), n) == r(0));
    }
    CHECK(pochhammer(r(1, 2), 3) == r(1, 2) * r(3, 2) * r(5, 2));
    CHECK(pochhammer(r(1, 2), 3) == r(15, 8));
    CHECK(factorial<Q>(5) == r(120));
}

TEST_CASE("Gaussian binomial")
{
    const Q q = r(1, 2);
    for (int n = 0; n <= 6; ++n) {
        CHECK(q_binomial(n, 0, q) == r(1));
    }
    // 1 + q + 2q^2 + q^3 + q^4 at q = 1/2
    const Q poly = r(1) + q + r(2) * q * q + ipow(q, 3) + ipow(q, 4);
    CHECK(q_binomial(4, 2, q) == poly);
    CHECK(q_binomial(4, 2, q) == r(35, 16));
    CHECK(q_binomial(4, 2, q) == q_pochhammer(ipow(q, 3), q, 2) / q_pochhammer(q, q, 2));

    // q = 1 falls back to Pascal's triangle.
    std::vector<std::vector<long>> pascal{{1}};
    for (int n = 1; n <= 8; ++n) {
        std::vector<long> row(static_cast<std::size_t>(n + 1), 1);
        for (int k = 1; k < n; ++k) {
            row[static_cast<std::size_t>(k)] =
                pascal.back()[static_cast<std::size_t>(k - 1)] + pascal.back()[static_cast<std::size_t>(k)];
        }
        pascal.push_back(row);
    }
    for (int n = 0; n <= 8; ++n) {
        for (int k = 0; k <= n; ++k) {
            CHECK(q_binomial(n, k, r(1)) == r(pascal[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]));
        }
    }
    CHECK_THROWS_AS(q_binomial(3, 4, q), std::domain_error);
    CHECK_THROWS_AS(binomial<Q>(3, -1), std::domain_error);
}

TEST_CASE("integer powers, including exact negative powers")
{
    CHECK(ipow(r(2, 3), 3) == r(8, 27));
    CHECK(ipow(r(2, 3), -2) == r(9, 4));
    CHECK(ipow(r(5), 0) == r(1));
    CHECK_THROWS_AS(ipow(r(0), -1), std::domain_error);
}

TEST_CASE("Pochhammer split (a;q)_{m+n} = (a;q)_m (aq^m;q)_n")
{
    ParamSampler s(2, "split");
    for (int i = 0; i < 30; ++i) {
        const Q a = s.any();
        const Q q = s.nonzero();
        for (int m = 0; m <= 10; ++m) {
            for (int n = 0; m + n <= 20; n += 3) {
                CHECK(q_pochhammer(a, q, m + n) == q_pochhammer(a, q, m) * q_pochhammer(a * ipow(q, m), q, n));
            }
        }
    }
}

TEST_CASE("Gaussian binomial symmetry")
{
    ParamSampler s(3, "symmetry");
    for (int i = 0; i < 10; ++i) {
        const Q q = s.unit_interval();
        for (int n = 0; n <= 12; ++n) {
            for (int k = 0; k <= n; ++k) {
                CHECK(q_binomial(n, k, q) == q_binomial(n, n - k, q));
            }
        }
    }
}

TEST_CASE("elementary identities relating the two weight forms")
{
    ParamSampler s(4, "elementary");
    for (int i = 0; i < 10; ++i) {
        const Q q = s.unit_interval();
        const Q a = s.nonzero();
        const Q de = s.nonzero();
        for (int N = 0; N <= 8; ++N) {
            for (int x = 0; x <= N; ++x) {
                // (aq;q)_N / (a^{-1} q^{-N};q)_x = (-1)^x a^x q^{x(N-x)+x(x+1)/2} (aq;q)_{N-x}
                const Q den = q_pochhammer(a.reciprocal() * ipow(q, -N), q, x);
                if (!den.is_zero()) {
                    const Q sign = x % 2 == 0 ? r(1) : r(-1);
                    CHECK(q_pochhammer(a * q, q, N) / den ==
                          sign * ipow(a, x) * ipow(q, x * (N - x) + x * (x + 1) / 2) * q_pochhammer(a * q, q, N - x));
                }
                // (aq;q)_x = a^x q^{x(x+1)/2} (-1)^x (a^{-1} q^{-x};q)_x
                const Q sign = x % 2 == 0 ? r(1) : r(-1);
                CHECK(q_pochhammer(a * q, q, x) ==
                      ipow(a, x) * ipow(q, x * (x + 1) / 2) * sign * q_pochhammer(a.reciprocal() * ipow(q, -x), q, x));
            }
            // (delta^{-1};q)_N (1 - delta q^{-N}) = -delta q^{-N} (delta^{-1} q;q)_N (1 - delta^{-1})
            CHECK(q_pochhammer(de.reciprocal(), q, N) * (r(1) - de * ipow(q, -N)) ==
                  -de * ipow(q, -N) * q_pochhammer(de.reciprocal() * q, q, N) * (r(1) - de.reciprocal()));
        }
    }
}

TEST_CASE("Pochhammer cache matches direct evaluation")
{
    const Q q = r(2, 7);
    PochhammerCache<Q> cache(q);
    const std::vector<Q> bases{r(1, 3), r(-5, 2), r(7, 9)};
    for (const auto& a : bases) {
        for (int n = 12; n >= 0; --n) {
            CHECK(cache.get(a, n) == q_pochhammer(a, q, n));
        }
    }
    CHECK(cache.size() == bases.size());

    PochhammerCache<double> fcache(0.37);
    for (int n = 0; n <= 30; ++n) {
        // Bit-identical, not merely close.
        CHECK(fcache.get(0.61, n) == q_pochhammer(0.61, 0.37, n));
    }
}

TEST_CASE("Pochhammer cache under concurrent use")
{
    PochhammerCache<double> cache(0.83);
    std::vector<double> expect;
    for (int n = 0; n <= 40; ++n) {
        expect.push_back(q_pochhammer(0.29, 0.83, n));
    }
    std::vector<int> mismatches(8, 0);
    std::vector<std::thread> pool;
    for (int t = 0; t < 8; ++t) {
        pool.emplace_back([&, t] {
            for (int rep = 0; rep < 50; ++rep) {
                for (int n = (t * 7 + rep) % 41; n >= 0; --n) {
                    if (cache.get(0.29, n) != expect[static_cast<std::size_t>(n)]) {
                        ++mismatches[static_cast<std::size_t>(t)];
                    }
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (int m : mismatches) {
        CHECK(m == 0);
    }
}

TEST_CASE("float backend")
{
    CHECK(field_equal(1.0, 1.0 + 1e-12));
    CHECK_FALSE(field_equal(1.0, 1.0 + 1e-6));
    CHECK(field_equal(1e6, 1e6 * (1 + 1e-10)));
    CHECK(to_string(0.1) == "0.1");
    CHECK(std::stod(to_string(1e-4)) == 1e-4);
    CHECK(std::stod(to_string(1.0 / 3)) == 1.0 / 3);
    CHECK(field_traits<double>::from_rational(r(1, 4)) == 0.25);
    CHECK_FALSE(field_traits<double>::exact);
    CHECK(field_traits<Q>::exact);
}
