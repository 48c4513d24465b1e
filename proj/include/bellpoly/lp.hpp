#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bellpoly/polyhedron.hpp"

namespace bellpoly {

enum class LpStatus { optimal, unbounded, infeasible };

struct LpOutcome {
    LpStatus status = LpStatus::infeasible;
    Rational value;          // valid when optimal
    RationalVector witness;  // a point attaining `value`, satisfying every row
};

/// Exact simplex (Bland's rule) for max objective·x subject to the rows of s,
/// with x free.
LpOutcome lp_max(const InequalitySystem& s, std::span<const Rational> objective);

bool is_feasible(const InequalitySystem& s);

/// True iff the row is implied by the remaining rows (or the remainder is
/// infeasible).
bool is_redundant(const InequalitySystem& s, std::size_t row_index);

namespace detail {

/// Integer-row entry point used by the elimination engine; `skip` excludes
/// one row from the constraint set.
LpOutcome lp_max_rows(const std::vector<IntegerRow>& rows, std::size_t dim, std::span<const mpq_class> objective,
                      std::optional<std::size_t> skip = std::nullopt);

bool is_redundant_row(const std::vector<IntegerRow>& rows, std::size_t dim, std::size_t row_index,
                      std::span<const std::size_t> active);

}  // namespace detail

}  // namespace bellpoly
