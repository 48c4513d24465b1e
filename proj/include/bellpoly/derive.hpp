#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bellpoly/fm_engine.hpp"
#include "bellpoly/hull_oracle.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

/// Correlation polytope of the pivot observables joined with one setting of
/// the replicated side. Coordinates: every nonempty subset of `pivot`, the
/// singleton {setting}, and T ∪ {setting} for nonempty T ⊆ pivot whenever
/// that set is a context of `sc` (the pairs {i, setting} in the bipartite
/// case). Labels use the numbering of `sc`.
InequalitySystem base_block_hrep(const Scenario& sc, Subset pivot, std::size_t setting,
                                 const HullOptions& hull = {});

struct DeriveOptions {
    OrderStrategy order = OrderStrategy::min_product;
    /// certified uses the scenario's vertices to decide facets after each
    /// step; lp runs the exact LP sweep instead.
    RedundancyMode redundancy = RedundancyMode::certified;
    bool chernikov = true;
    Execution exec = Execution::parallel;
    HullOptions hull;
    std::size_t max_rows = 0;
    std::function<void(const StepStats&)> on_step;
};

struct DeriveResult {
    InequalitySystem facets;      // canonical, over sc.coordinates()
    InequalitySystem stacked;     // replicated blocks before elimination
    std::vector<std::string> eliminated;  // labels, in the order eliminated
    std::size_t block_rows = 0;
    std::vector<StepStats> steps;
};

/// Pivot observables for derive_tree: the chosen party when there are two
/// parties, otherwise every party but the last.
Subset pivot_block(const Scenario& sc, std::size_t pivot_party);

/// Facets of the correlation polytope of `sc` via the tree-graph
/// decomposition: replicate the base block for every setting outside the
/// pivot, stack, and eliminate the pivot subsets that are not contexts.
DeriveResult derive_tree(const Scenario& sc, std::size_t pivot_party = 0, const DeriveOptions& options = {});

}  // namespace bellpoly
