#include "qladder/sampler.hpp"

#include "qladder/errors.hpp"

namespace qladder {

namespace {

// FNV-1a, so each named stream gets a fixed, platform-independent offset.
std::uint64_t stream_hash(std::string_view s)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

ParamSampler::ParamSampler(std::uint64_t seed, std::string_view stream) : rng_(seed ^ stream_hash(stream)) {}

long ParamSampler::integer(long lo, long hi)
{
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng_() % span);
}

Rational ParamSampler::nonzero(long num_bound, long den_bound)
{
    long num = integer(1, num_bound);
    if (integer(0, 1) == 1) {
        num = -num;
    }
    return Rational(num, integer(1, den_bound));
}

Rational ParamSampler::any(long num_bound, long den_bound)
{
    return Rational(integer(-num_bound, num_bound), integer(1, den_bound));
}

Rational ParamSampler::unit_interval(long den_bound)
{
    long den = integer(2, den_bound);
    return Rational(integer(1, den - 1), den);
}

QRacahParams<Rational> ParamSampler::qracah(int N)
{
    return retry([&] {
        auto p = QRacahParams<Rational>::create(nonzero(), nonzero(), nonzero(), unit_interval(), N);
        // lambda_n = lambda_m for n != m exactly when alpha beta q^(n+m+1) = 1.
        for (int k = 1; k <= 2 * N; ++k) {
            if (p.alpha() * p.beta() * p.qp(k) == Rational(1)) {
                throw AdmissibilityError({"1 - alpha*beta*q^(" + std::to_string(k) + ")"});
            }
        }
        return p;
    });
}

RacahParams<Rational> ParamSampler::racah(int N)
{
    return retry([&] {
        auto p = RacahParams<Rational>::create(nonzero(), nonzero(), nonzero(), N);
        // n(a+b+n+1) = m(a+b+m+1) for n != m exactly when a+b+n+m+1 = 0.
        for (int k = 1; k <= 2 * N; ++k) {
            if ((p.alpha() + p.beta() + Rational(k)).is_zero()) {
                throw AdmissibilityError({"alpha + beta + (" + std::to_string(k) + ")"});
            }
        }
        return p;
    });
}

GridFunction<Rational> ParamSampler::grid_function(int level)
{
    std::vector<Rational> v;
    for (int x = 0; x <= level; ++x) {
        v.push_back(any());
    }
    return GridFunction<Rational>(std::move(v));
}

} // namespace qladder
