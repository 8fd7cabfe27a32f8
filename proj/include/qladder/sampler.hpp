#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

#include "qladder/grid.hpp"
#include "qladder/params.hpp"
#include "qladder/rational.hpp"

namespace qladder {

/// Reproducible source of rational parameters.
///
/// Raw 64-bit draws from mt19937_64 are mapped to ranges by modulo, so a
/// given (seed, stream) produces the same parameters on every platform.
/// Inadmissible draws are rejected and counted.
class ParamSampler {
public:
    ParamSampler(std::uint64_t seed, std::string_view stream);

    /// Integer in [lo, hi].
    long integer(long lo, long hi);

    /// num/den with 1 <= |num| <= num_bound and 1 <= den <= den_bound.
    Rational nonzero(long num_bound = 9, long den_bound = 9);

    /// num/den with |num| <= num_bound (zero allowed).
    Rational any(long num_bound = 9, long den_bound = 9);

    /// num/den strictly between 0 and 1, 2 <= den <= den_bound.
    Rational unit_interval(long den_bound = 9);

    /// q-Racah parameters admissible at level N with pairwise distinct
    /// eigenvalues up to that level.
    QRacahParams<Rational> qracah(int N);

    /// Racah parameters admissible at level N with pairwise distinct
    /// eigenvalues up to that level.
    RacahParams<Rational> racah(int N);

    GridFunction<Rational> grid_function(int level);

    /// Calls draw() until it returns without throwing std::domain_error.
    template <class Fn>
    auto retry(Fn draw) -> decltype(draw())
    {
        for (int attempt = 0; attempt < max_attempts; ++attempt) {
            try {
                return draw();
            } catch (const std::domain_error&) {
                ++rejections_;
            }
        }
        throw std::runtime_error("ParamSampler: no admissible draw found");
    }

    [[nodiscard]] std::size_t rejections() const { return rejections_; }

    static constexpr int max_attempts = 10000;

private:
    std::mt19937_64 rng_;
    std::size_t rejections_ = 0;
};

} // namespace qladder
