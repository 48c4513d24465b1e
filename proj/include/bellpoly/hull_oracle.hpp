#pragma once

#include <chrono>
#include <cstddef>
#include <optional>

#include "bellpoly/fm_engine.hpp"
#include "bellpoly/polyhedron.hpp"

namespace bellpoly {

enum class DdOrder {
    min_cutoff,  // next constraint is the one violated by the fewest current rays
    lex_min      // constraints in lexicographic order of their rows
};

struct HullOptions {
    /// facets_bruteforce refuses inputs with C(|v|, d) above this.
    std::size_t subset_guard = 1'000'000;
    /// Double description aborts once it holds more rays; 0 disables.
    std::size_t max_rays = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    DdOrder order = DdOrder::min_cutoff;
    Execution exec = Execution::parallel;
    /// vertices_from_hrep seeds its search by scanning the 0/1 cube when the
    /// scan is small enough.
    bool binary_scan = true;
};

/// Facets from every affinely independent d-subset of vertices. Desk-scale
/// oracle; throws GuardExceeded or NotFullDimensional.
InequalitySystem facets_bruteforce(const VertexSet& v, const HullOptions& options = {});

/// Facets via the double description method on the polar cone.
InequalitySystem hull_dd(const VertexSet& v, const HullOptions& options = {});

/// Vertices of a bounded H-polytope whose vertices are all 0/1. Throws
/// UnboundedPolyhedron, or NonBinaryVertex when a basic solution is
/// fractional (the H-representation is incomplete or wrong).
/// Known vertices are grown until every facet of their hull holds on s,
/// which certifies that none are missing.
VertexSet vertices_from_hrep(const InequalitySystem& s, const HullOptions& options = {});

namespace detail {

/// Extreme rays of the pointed cone {y : g·y >= 0 for every g}; returns
/// std::nullopt when the constraints do not have full column rank.
std::optional<std::vector<IntegerVector>> extreme_rays(const std::vector<IntegerVector>& constraints,
                                                       std::size_t dim, const HullOptions& options);

}  // namespace detail

}  // namespace bellpoly
