#include "bellpoly/linalg.hpp"

#include <cstdint>
#include <numeric>

#include "bellpoly/errors.hpp"

namespace bellpoly {

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: vector sizes differ");
    mpq_class acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i].get() * b[i].get();
    }
    return Rational(acc);
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
    if (rows.empty()) return {};
    RationalMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw DimensionMismatch("from_rows: ragged rows");
        for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
    return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    RationalMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < b.cols_; ++j) {
            mpq_class acc;
            for (std::size_t k = 0; k < a.cols_; ++k) acc += a(i, k).get() * b(k, j).get();
            p(i, j) = Rational(acc);
        }
    }
    return p;
}

RationalVector operator*(const RationalMatrix& a, std::span<const Rational> x) {
    if (a.cols_ != x.size()) throw DimensionMismatch("matrix-vector product: size mismatch");
    RationalVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        mpq_class acc;
        for (std::size_t k = 0; k < a.cols_; ++k) acc += a(i, k).get() * x[k].get();
        y[i] = Rational(acc);
    }
    return y;
}

namespace detail {

IntegerVector clear_denominators(std::span<const Rational> row) {
    mpz_class l = 1;
    for (const auto& v : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.denominator().get_mpz_t());
    IntegerVector out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = row[i].numerator() * (l / row[i].denominator());
    return out;
}

std::vector<std::size_t> bareiss_echelon(std::vector<IntegerVector>& a, std::size_t pivot_cols) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t rows = a.size();
    const std::size_t cols = a.front().size();
    mpz_class prev = 1;
    mpz_class t;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) std::swap(a[p], a[r]);
        const mpz_class& piv = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                t = piv * a[i][j];
                t -= a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

namespace {

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime) + static_cast<std::uint64_t>(p >> 61);
    if (lo >= kPrime) lo -= kPrime;
    return lo;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t to_mod(long v) {
    return v >= 0 ? static_cast<std::uint64_t>(v) % kPrime
                  : (kPrime - (static_cast<std::uint64_t>(-v) % kPrime)) % kPrime;
}

std::size_t rank_mod_p(const std::vector<std::vector<long>>& rows, std::size_t cols, std::size_t upper) {
    std::vector<std::vector<std::uint64_t>> a(rows.size(), std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = to_mod(rows[i][j]);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size() && r < upper; ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        const std::uint64_t inv = powmod(a[r][c], kPrime - 2);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            if (a[i][c] == 0) continue;
            const std::uint64_t f = mulmod(a[i][c], inv);
            for (std::size_t j = c; j < cols; ++j) {
                const std::uint64_t s = mulmod(f, a[r][j]);
                a[i][j] = a[i][j] >= s ? a[i][j] - s : a[i][j] + kPrime - s;
            }
        }
        ++r;
    }
    return r;
}

}  // namespace

std::size_t rank_small(const std::vector<std::vector<long>>& rows, std::size_t cols, std::size_t upper) {
    // rank mod p never exceeds the rational rank
    const std::size_t rp = rank_mod_p(rows, cols, upper);
    if (rp >= upper) return rp;
    std::vector<IntegerVector> a(rows.size(), IntegerVector(cols));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = rows[i][j];
    return bareiss_echelon(a, cols).size();
}

}  // namespace detail

std::size_t rank(const RationalMatrix& m) {
    std::vector<IntegerVector> a;
    a.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(detail::clear_denominators(m.row(r)));
    return detail::bareiss_echelon(a, m.cols()).size();
}

SolveResult solve_linear(const RationalMatrix& m, std::span<const Rational> rhs) {
    if (rhs.size() != m.rows()) throw DimensionMismatch("solve_linear: rhs size differs from row count");
    const std::size_t n = m.cols();
    std::vector<IntegerVector> a;
    a.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        RationalVector row = m.row(r);
        row.push_back(rhs[r]);
        a.push_back(detail::clear_denominators(row));
    }
    const auto pivots = detail::bareiss_echelon(a, n);
    for (std::size_t r = pivots.size(); r < a.size(); ++r) {
        if (a[r][n] != 0) return NoSolution{};
    }

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;

    // back substitution with the free variables fixed by `free_values`
    auto back_substitute = [&](const RationalVector& free_values, bool homogeneous) {
        RationalVector x = free_values;
        for (std::size_t k = pivots.size(); k-- > 0;) {
            const std::size_t c = pivots[k];
            mpq_class acc = homogeneous ? mpq_class(0) : mpq_class(a[k][n]);
            for (std::size_t j = c + 1; j < n; ++j) {
                if (a[k][j] != 0 && !x[j].is_zero()) acc -= mpq_class(a[k][j]) * x[j].get();
            }
            x[c] = Rational(mpq_class(acc / mpq_class(a[k][c])));
        }
        return x;
    };

    RationalVector particular = back_substitute(RationalVector(n), false);
    if (pivots.size() == n) return UniqueSolution{std::move(particular)};

    InfiniteSolutions out;
    out.particular = std::move(particular);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RationalVector e(n);
        e[f] = 1;
        out.nullspace.push_back(back_substitute(e, true));
    }
    return out;
}

RationalMatrix invert(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("invert: matrix is not square");
    const std::size_t n = m.rows();
    // Gauss-Jordan on [m | I] in exact rationals
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).get();
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a[p][c]) == 0) ++p;
        if (p == n) throw SingularMatrix("invert: matrix is singular");
        std::swap(a[p], a[c]);
        const mpq_class inv = 1 / a[c][c];
        for (auto& v : a[c]) v *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(a[i][c]) == 0) continue;
            const mpq_class f = a[i][c];
            for (std::size_t j = c; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    RationalMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = Rational(a[i][n + j]);
    return out;
}

int affine_dim(std::span<const RationalVector> points) {
    if (points.empty()) return -1;
    const std::size_t d = points.front().size();
    std::vector<IntegerVector> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].size() != d) throw DimensionMismatch("affine_dim: points of different dimension");
        RationalVector diff(d);
        for (std::size_t j = 0; j < d; ++j) diff[j] = points[i][j] - points[0][j];
        diffs.push_back(detail::clear_denominators(diff));
    }
    return static_cast<int>(detail::bareiss_echelon(diffs, d).size());
}

}  // namespace bellpoly
