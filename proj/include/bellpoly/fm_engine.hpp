#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "bellpoly/lp.hpp"
#include "bellpoly/polyhedron.hpp"

namespace bellpoly {

/// Serial reference path or OpenMP kernel. Both produce identical output.
enum class Execution { serial, parallel };

enum class OrderStrategy {
    min_product,  // next variable minimizes (#positive rows) x (#negative rows)
    given         // the order the caller listed
};

enum class RedundancyMode {
    none,       // duplicates and Chernikov-pruned rows only
    lp,         // exact LP test for every row after each step
    certified   // keep rows whose tight vertices span a facet of a known 0/1 V-representation
};

using Ancestry = boost::dynamic_bitset<>;

/// An inequality system in which every row remembers which rows of the
/// originally tracked system it was combined from.
struct TrackedSystem {
    InequalitySystem system;
    std::vector<Ancestry> ancestry;
    std::size_t steps_done = 0;
    /// False once redundancy removal dropped a combined row. The Chernikov
    /// rule relies on every earlier combination being present, so it is
    /// switched off from then on.
    bool chernikov_sound = true;

    /// Starts tracking: row i gets ancestry {i}.
    static TrackedSystem track(InequalitySystem s);
};

struct StepStats {
    std::string variable;  // label or 1-based position of the eliminated coordinate
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
    std::size_t pairs_skipped = 0;  // Chernikov or adjacency pre-filter
    std::size_t combined = 0;       // distinct rows after the step, before redundancy removal
    std::size_t kept = 0;           // rows after redundancy removal
    double seconds = 0.0;
};

struct FmOptions {
    /// Honoured while the tracked history is complete (see
    /// TrackedSystem::chernikov_sound).
    bool chernikov = true;
    Execution exec = Execution::parallel;
    OrderStrategy order = OrderStrategy::min_product;
    RedundancyMode redundancy = RedundancyMode::lp;
    /// Vertices of the polytope described by the input system, in its
    /// coordinates; required for RedundancyMode::certified.
    const VertexSet* certificate = nullptr;
    /// Abort with GuardExceeded when a step would hold more rows; 0 disables.
    std::size_t max_rows = 0;
    std::function<void(const StepStats&)> on_step;
};

/// One Fourier-Motzkin step on coordinate `var`. Removes duplicates and
/// Chernikov-pruned rows; no further redundancy removal.
TrackedSystem eliminate_one(const TrackedSystem& s, std::size_t var, const FmOptions& options = {});

/// Eliminates every coordinate in `vars` (positions in s.system), applying
/// the configured redundancy removal after each step.
TrackedSystem eliminate_many(const TrackedSystem& s, const std::vector<std::size_t>& vars,
                             const FmOptions& options = {});

/// Sequentially drops rows implied by the remaining ones (exact LP).
/// The parallel path screens rows against the full system first; rows it
/// proves irredundant are final, the rest are confirmed in order.
InequalitySystem remove_redundant(const InequalitySystem& s, Execution exec = Execution::parallel);

namespace detail {

std::vector<std::size_t> remove_redundant_rows(const std::vector<IntegerRow>& rows, std::size_t dim, Execution exec);

}  // namespace detail

}  // namespace bellpoly
