#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qladder/field.hpp"

namespace qladder {

/// A function on the lattice {0, ..., N}, with f(-1) = f(N+1) = 0 implied.
template <Field F>
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(std::vector<F> values) : values_(std::move(values)) {}
    GridFunction(std::initializer_list<F> values) : values_(values) {}

    static GridFunction zeros(int level) { return GridFunction(std::vector<F>(size_for(level), F(0))); }
    static GridFunction ones(int level) { return GridFunction(std::vector<F>(size_for(level), F(1))); }
    static GridFunction delta(int level, int x0)
    {
        auto g = zeros(level);
        g.values_.at(static_cast<std::size_t>(x0)) = F(1);
        return g;
    }

    /// N such that the domain is {0, ..., N}; -1 for the empty function.
    [[nodiscard]] int level() const { return static_cast<int>(values_.size()) - 1; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }

    const F& operator[](std::size_t x) const { return values_[x]; }
    F& operator[](std::size_t x) { return values_[x]; }

    /// Value at x, or zero outside the lattice.
    [[nodiscard]] F at(long x) const
    {
        if (x < 0 || x >= static_cast<long>(values_.size())) {
            return F(0);
        }
        return values_[static_cast<std::size_t>(x)];
    }

    [[nodiscard]] std::span<const F> values() const { return values_; }

    GridFunction& operator*=(const F& c)
    {
        for (auto& v : values_) {
            v = v * c;
        }
        return *this;
    }
    friend GridFunction operator*(const F& c, GridFunction g) { return g *= c; }

    GridFunction& operator+=(const GridFunction& rhs)
    {
        check_same_size(rhs);
        for (std::size_t i = 0; i < values_.size(); ++i) {
            values_[i] = values_[i] + rhs.values_[i];
        }
        return *this;
    }
    GridFunction& operator-=(const GridFunction& rhs)
    {
        check_same_size(rhs);
        for (std::size_t i = 0; i < values_.size(); ++i) {
            values_[i] = values_[i] - rhs.values_[i];
        }
        return *this;
    }
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }

    friend bool operator==(const GridFunction&, const GridFunction&) = default;

    [[nodiscard]] bool is_zero() const
    {
        for (const auto& v : values_) {
            if (!qladder::is_zero(v)) {
                return false;
            }
        }
        return true;
    }

private:
    static std::size_t size_for(int level)
    {
        if (level < -1) {
            throw std::invalid_argument("GridFunction: level below -1");
        }
        return static_cast<std::size_t>(level + 1);
    }

    void check_same_size(const GridFunction& rhs) const
    {
        if (rhs.size() != size()) {
            throw std::invalid_argument("GridFunction: size mismatch");
        }
    }

    std::vector<F> values_;
};

/// Componentwise comparison through the field's equality (exact or tolerant).
template <Field F>
bool approx_equal(const GridFunction<F>& a, const GridFunction<F>& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!field_equal(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

enum class OperatorKind {
    raising,      // lower bidiagonal, V_N -> V_{N+1}
    lowering,     // upper bidiagonal, V_N -> V_{N-1}
    second_order, // tridiagonal, V_N -> V_N
};

inline std::string kind_tag(OperatorKind kind)
{
    switch (kind) {
    case OperatorKind::raising:
        return "R";
    case OperatorKind::lowering:
        return "L";
    case OperatorKind::second_order:
        return "D";
    }
    return "?";
}

/// Banded difference operator stored as per-site coefficient rows:
/// (Tf)(x) = sum_j coeffs[x][j] * f(x + offsets[j]).
///
/// Offsets are {-1, 0} for R, {0, +1} for L and {-1, 0, +1} for D.
template <Field F>
class BandedOperator {
public:
    BandedOperator(OperatorKind kind, int level, std::vector<std::vector<F>> coeffs)
        : kind_(kind), level_(level), coeffs_(std::move(coeffs))
    {
        if (coeffs_.size() != codomain_size()) {
            throw std::invalid_argument("BandedOperator: wrong number of coefficient rows");
        }
        for (const auto& row : coeffs_) {
            if (row.size() != offsets().size()) {
                throw std::invalid_argument("BandedOperator: wrong band width");
            }
        }
    }

    [[nodiscard]] OperatorKind kind() const { return kind_; }
    /// N of the domain V_N.
    [[nodiscard]] int level() const { return level_; }
    [[nodiscard]] std::size_t domain_size() const { return static_cast<std::size_t>(level_ + 1); }
    [[nodiscard]] std::size_t codomain_size() const
    {
        switch (kind_) {
        case OperatorKind::raising:
            return static_cast<std::size_t>(level_ + 2);
        case OperatorKind::lowering:
            return static_cast<std::size_t>(level_);
        case OperatorKind::second_order:
            break;
        }
        return static_cast<std::size_t>(level_ + 1);
    }

    [[nodiscard]] std::span<const int> offsets() const
    {
        static constexpr int r[] = {-1, 0};
        static constexpr int l[] = {0, 1};
        static constexpr int d[] = {-1, 0, 1};
        switch (kind_) {
        case OperatorKind::raising:
            return r;
        case OperatorKind::lowering:
            return l;
        case OperatorKind::second_order:
            break;
        }
        return d;
    }

    [[nodiscard]] const std::vector<std::vector<F>>& coeffs() const { return coeffs_; }

    /// Matrix entry T[row][col] of the dense representation.
    [[nodiscard]] F entry(std::size_t row, std::size_t col) const
    {
        auto offs = offsets();
        for (std::size_t j = 0; j < offs.size(); ++j) {
            if (static_cast<long>(row) + offs[j] == static_cast<long>(col)) {
                return coeffs_[row][j];
            }
        }
        return F(0);
    }

    [[nodiscard]] GridFunction<F> apply(const GridFunction<F>& f) const
    {
        if (f.size() != domain_size()) {
            throw std::invalid_argument("BandedOperator::apply: function on V_" + std::to_string(f.level()) +
                                        " given to an operator on V_" + std::to_string(level_));
        }
        auto offs = offsets();
        std::vector<F> out;
        out.reserve(codomain_size());
        for (std::size_t x = 0; x < codomain_size(); ++x) {
            F acc(0);
            for (std::size_t j = 0; j < offs.size(); ++j) {
                acc = acc + coeffs_[x][j] * f.at(static_cast<long>(x) + offs[j]);
            }
            out.push_back(acc);
        }
        return GridFunction<F>(std::move(out));
    }

private:
    OperatorKind kind_;
    int level_;
    std::vector<std::vector<F>> coeffs_;
};

template <Field F>
GridFunction<F> apply(const BandedOperator<F>& op, const GridFunction<F>& f)
{
    return op.apply(f);
}

} // namespace qladder
