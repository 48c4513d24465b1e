// Exact LP via the dual: max c·x s.t. Ax <= b (x free) is solved as
//   min b·y  s.t.  A^T y = c,  y >= 0
// with a two-phase revised simplex over the rationals and Bland's rule.
// The simplex multipliers of the optimal dual basis are the primal witness.

#include "bellpoly/lp.hpp"

#include "bellpoly/errors.hpp"

namespace bellpoly {

namespace detail {

namespace {

class DualSimplex {
public:
    DualSimplex(const std::vector<const IntegerRow*>& cols, std::size_t dim, std::span<const mpq_class> c)
        : cols_(cols), k_(dim), m_(cols.size()), sign_(dim, 1), binv_(dim, std::vector<mpq_class>(dim)),
          xb_(dim), basis_(dim), in_basis_(cols.size() + dim, false) {
        for (std::size_t i = 0; i < k_; ++i) {
            if (sgn(c[i]) < 0) sign_[i] = -1;
            xb_[i] = sign_[i] < 0 ? mpq_class(-c[i]) : c[i];
            binv_[i][i] = 1;
            basis_[i] = m_ + i;
            in_basis_[m_ + i] = true;
        }
    }

    LpOutcome run() {
        // phase 1: minimize the sum of artificials
        if (!iterate(true)) throw std::logic_error("phase 1 cannot be unbounded");
        mpq_class infeas;
        for (std::size_t i = 0; i < k_; ++i) {
            if (basis_[i] >= m_) infeas += xb_[i];
        }
        if (sgn(infeas) > 0) return {LpStatus::unbounded, {}, {}};  // dual infeasible; caller disambiguates
        drive_out_artificials();
        if (!iterate(false)) return {LpStatus::infeasible, {}, {}};  // dual unbounded

        LpOutcome out;
        out.status = LpStatus::optimal;
        const auto pi = multipliers(false);
        out.witness.resize(k_);
        mpq_class value;
        for (std::size_t i = 0; i < k_; ++i) {
            out.witness[i] = Rational(sign_[i] < 0 ? mpq_class(-pi[i]) : pi[i]);
        }
        for (std::size_t i = 0; i < k_; ++i) {
            if (basis_[i] < m_) value += xb_[i] * mpq_class(cols_[basis_[i]]->bound);
        }
        out.value = Rational(value);
        return out;
    }

private:
    mpq_class cost(std::size_t j, bool phase1) const {
        if (phase1) return j >= m_ ? mpq_class(1) : mpq_class(0);
        return j >= m_ ? mpq_class(0) : mpq_class(cols_[j]->bound);
    }

    std::vector<mpq_class> multipliers(bool phase1) const {
        std::vector<mpq_class> pi(k_);
        for (std::size_t i = 0; i < k_; ++i) {
            const mpq_class cb = cost(basis_[i], phase1);
            if (sgn(cb) == 0) continue;
            for (std::size_t t = 0; t < k_; ++t) {
                if (sgn(binv_[i][t]) != 0) pi[t] += cb * binv_[i][t];
            }
        }
        return pi;
    }

    // π · E'_j for a real column j
    mpq_class price(const std::vector<mpq_class>& pi, std::size_t j) const {
        mpq_class acc;
        const auto& a = cols_[j]->coeffs;
        for (std::size_t i = 0; i < k_; ++i) {
            if (a[i] == 0 || sgn(pi[i]) == 0) continue;
            if (sign_[i] > 0) acc += pi[i] * a[i];
            else acc -= pi[i] * a[i];
        }
        return acc;
    }

    std::vector<mpq_class> column(std::size_t j) const {
        std::vector<mpq_class> u(k_);
        const auto& a = cols_[j]->coeffs;
        for (std::size_t t = 0; t < k_; ++t) {
            if (a[t] == 0) continue;
            const mpq_class e = sign_[t] > 0 ? mpq_class(a[t]) : mpq_class(-a[t]);
            for (std::size_t i = 0; i < k_; ++i) {
                if (sgn(binv_[i][t]) != 0) u[i] += binv_[i][t] * e;
            }
        }
        return u;
    }

    void pivot(std::size_t leave_row, std::size_t enter, const std::vector<mpq_class>& u) {
        const mpq_class inv = 1 / u[leave_row];
        for (auto& v : binv_[leave_row]) v *= inv;
        xb_[leave_row] *= inv;
        for (std::size_t i = 0; i < k_; ++i) {
            if (i == leave_row || sgn(u[i]) == 0) continue;
            for (std::size_t t = 0; t < k_; ++t) {
                if (sgn(binv_[leave_row][t]) != 0) binv_[i][t] -= u[i] * binv_[leave_row][t];
            }
            xb_[i] -= u[i] * xb_[leave_row];
        }
        in_basis_[basis_[leave_row]] = false;
        basis_[leave_row] = enter;
        in_basis_[enter] = true;
    }

    // Returns false on an unbounded direction.
    bool iterate(bool phase1) {
        for (;;) {
            const auto pi = multipliers(phase1);
            std::size_t enter = m_;
            for (std::size_t j = 0; j < m_; ++j) {
                if (in_basis_[j]) continue;
                if (cost(j, phase1) - price(pi, j) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == m_) return true;
            const auto u = column(enter);
            std::size_t leave = k_;
            mpq_class best;
            for (std::size_t i = 0; i < k_; ++i) {
                if (sgn(u[i]) <= 0) continue;
                mpq_class ratio = xb_[i] / u[i];
                if (leave == k_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == k_) return false;
            pivot(leave, enter, u);
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < k_; ++i) {
            if (basis_[i] < m_) continue;
            for (std::size_t j = 0; j < m_; ++j) {
                if (in_basis_[j]) continue;
                const auto u = column(j);
                if (sgn(u[i]) != 0) {
                    pivot(i, j, u);
                    break;
                }
            }
        }
    }

    const std::vector<const IntegerRow*>& cols_;
    std::size_t k_;
    std::size_t m_;
    std::vector<int> sign_;
    std::vector<std::vector<mpq_class>> binv_;
    std::vector<mpq_class> xb_;
    std::vector<std::size_t> basis_;
    std::vector<bool> in_basis_;
};

LpOutcome solve(const std::vector<const IntegerRow*>& cols, std::size_t dim, std::span<const mpq_class> c) {
    LpOutcome out = DualSimplex(cols, dim, c).run();
    if (out.status != LpStatus::unbounded) return out;
    // dual infeasible: primal is unbounded or infeasible
    const std::vector<mpq_class> zero(dim);
    if (DualSimplex(cols, dim, zero).run().status == LpStatus::infeasible) return {LpStatus::infeasible, {}, {}};
    return out;
}

}  // namespace

LpOutcome lp_max_rows(const std::vector<IntegerRow>& rows, std::size_t dim, std::span<const mpq_class> objective,
                      std::optional<std::size_t> skip) {
    if (objective.size() != dim) throw DimensionMismatch("lp_max: objective width differs from dim");
    std::vector<const IntegerRow*> cols;
    cols.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (skip && *skip == i) continue;
        if (rows[i].coeffs.size() != dim) throw DimensionMismatch("lp_max: row width differs from dim");
        cols.push_back(&rows[i]);
    }
    return solve(cols, dim, objective);
}

bool is_redundant_row(const std::vector<IntegerRow>& rows, std::size_t dim, std::size_t row_index,
                      std::span<const std::size_t> active) {
    std::vector<const IntegerRow*> cols;
    cols.reserve(active.size());
    for (auto i : active) {
        if (i != row_index) cols.push_back(&rows[i]);
    }
    const IntegerRow& target = rows[row_index];
    std::vector<mpq_class> c(dim);
    for (std::size_t i = 0; i < dim; ++i) c[i] = target.coeffs[i];
    const LpOutcome out = solve(cols, dim, c);
    switch (out.status) {
        case LpStatus::infeasible: return true;
        case LpStatus::unbounded: return false;
        case LpStatus::optimal: return out.value.get() <= mpq_class(target.bound);
    }
    return false;
}

}  // namespace detail

namespace {

std::vector<IntegerRow> integer_rows(const InequalitySystem& s) {
    std::vector<IntegerRow> rows;
    rows.reserve(s.rows.size());
    for (const auto& r : s.rows) {
        if (r.dim() != s.dim) throw DimensionMismatch("row width differs from system dim");
        rows.push_back(to_integer_row(r));
    }
    return rows;
}

}  // namespace

LpOutcome lp_max(const InequalitySystem& s, std::span<const Rational> objective) {
    std::vector<mpq_class> c;
    c.reserve(objective.size());
    for (const auto& v : objective) c.push_back(v.get());
    return detail::lp_max_rows(integer_rows(s), s.dim, c);
}

bool is_feasible(const InequalitySystem& s) {
    const std::vector<mpq_class> zero(s.dim);
    return detail::lp_max_rows(integer_rows(s), s.dim, zero).status == LpStatus::optimal;
}

bool is_redundant(const InequalitySystem& s, std::size_t row_index) {
    if (row_index >= s.rows.size()) throw std::out_of_range("is_redundant: row index out of range");
    const auto rows = integer_rows(s);
    std::vector<std::size_t> active(rows.size());
    for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
    return detail::is_redundant_row(rows, s.dim, row_index, active);
}

}  // namespace bellpoly
