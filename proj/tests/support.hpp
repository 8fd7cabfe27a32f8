#pragma once

#include <string>

#include "qladder/field.hpp"
#include "qladder/params.hpp"
#include "qladder/rational.hpp"

namespace qtest {

using Q = qladder::Rational;

inline Q r(long num, long den = 1)
{
    return Q(num, den);
}

/// The worked example used throughout: (alpha, beta, delta, q) = (1/3, 1/2, 1/5, 1/2).
inline qladder::QRacahParams<Q> example(int N)
{
    return qladder::QRacahParams<Q>::create(r(1, 3), r(1, 2), r(1, 5), r(1, 2), N);
}

/// The Racah worked example (alpha, beta, delta) = (1/2, 1/3, 1/7).
inline qladder::RacahParams<Q> racah_example(int N)
{
    return qladder::RacahParams<Q>::create(r(1, 2), r(1, 3), r(1, 7), N);
}

} // namespace qtest
