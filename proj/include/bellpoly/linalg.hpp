#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "bellpoly/rational.hpp"

namespace bellpoly {

using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<mpz_class>;

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Dense row-major rational matrix.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector row(std::size_t r) const;
    RationalMatrix transpose() const;

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalVector operator*(const RationalMatrix& a, std::span<const Rational> x);
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Exact rank over the rationals (fraction-free elimination).
std::size_t rank(const RationalMatrix& m);

struct UniqueSolution {
    RationalVector x;
};
struct NoSolution {};
struct InfiniteSolutions {
    RationalVector particular;
    std::vector<RationalVector> nullspace;
};
using SolveResult = std::variant<UniqueSolution, NoSolution, InfiniteSolutions>;

SolveResult solve_linear(const RationalMatrix& m, std::span<const Rational> rhs);

/// Throws SingularMatrix when m is not invertible.
RationalMatrix invert(const RationalMatrix& m);

/// Dimension of the affine hull; -1 for the empty set.
int affine_dim(std::span<const RationalVector> points);

namespace detail {

/// In-place fraction-free (Bareiss) row echelon form on integer rows.
/// Only the first `pivot_cols` columns are eligible as pivots. Returns the
/// pivot column of each nonzero echelon row.
std::vector<std::size_t> bareiss_echelon(std::vector<IntegerVector>& a, std::size_t pivot_cols);

/// Multiplies a rational row by the lcm of its denominators.
IntegerVector clear_denominators(std::span<const Rational> row);

/// Exact rank of a small-integer matrix; a modular pass settles most cases
/// and an exact Bareiss pass handles the rest. `upper` is a known upper bound.
std::size_t rank_small(const std::vector<std::vector<long>>& rows, std::size_t cols, std::size_t upper);

}  // namespace detail

}  // namespace bellpoly
