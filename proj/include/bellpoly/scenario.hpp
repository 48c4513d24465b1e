#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "bellpoly/polyhedron.hpp"

namespace bellpoly {

/// Set of observables as a bitmask; bit i is observable i+1.
using Subset = std::uint32_t;

constexpr std::size_t kMaxObservables = 24;

inline std::size_t subset_size(Subset s) { return static_cast<std::size_t>(__builtin_popcount(s)); }
inline bool is_subset_of(Subset a, Subset b) { return (a & ~b) == 0; }

/// 1-based member list, ascending.
std::vector<std::size_t> members(Subset s);

/// Order used for coordinates: by size, then lexicographically on the
/// ascending member list.
bool coordinate_less(Subset a, Subset b);

/// "13" for {1,3}; with more than 9 observables members are dot-separated
/// ("1.10").
std::string subset_label(Subset s, std::size_t n);
/// Inverse of subset_label. Throws ParseError.
Subset parse_subset_label(const std::string& label, std::size_t n);

/// Bijection between coordinate positions and the subsets they measure.
class CoordinateIndex {
public:
    CoordinateIndex() = default;
    /// Sorts and deduplicates the subsets.
    CoordinateIndex(std::vector<Subset> subsets, std::size_t n);

    std::size_t size() const { return order_.size(); }
    std::size_t observables() const { return n_; }
    Subset subset(std::size_t pos) const { return order_[pos]; }
    const std::vector<Subset>& subsets() const { return order_; }
    bool contains(Subset s) const { return pos_.count(s) != 0; }
    /// Throws std::out_of_range for a subset that is not a coordinate.
    std::size_t position(Subset s) const;
    std::vector<std::string> labels() const;

private:
    std::size_t n_ = 0;
    std::vector<Subset> order_;
    std::unordered_map<Subset, std::size_t> pos_;
};

struct Scenario {
    std::size_t n = 0;
    /// Family of jointly measurable sets; every singleton is present.
    std::vector<Subset> contexts;
    /// Observables (0-based) of each party, settings in order. Empty when
    /// the scenario has no party structure.
    std::vector<std::vector<std::size_t>> parties;

    /// Validates and sorts contexts; adds missing singletons.
    static Scenario make(std::size_t n, std::vector<Subset> contexts, std::vector<std::vector<std::size_t>> parties = {});

    CoordinateIndex coordinates() const { return CoordinateIndex(contexts, n); }
    bool is_context(Subset s) const;
    std::size_t party_of(std::size_t observable) const;
};

/// Parties with the given numbers of dichotomic settings; contexts are all
/// nonempty sets with at most one observable per party.
Scenario build_multipartite(const std::vector<std::size_t>& settings_per_party);

/// 2^n vertices; the coordinate for S is the product of eps_i over i in S.
/// Vertex k is the assignment whose bit i is eps_{i+1}.
VertexSet enumerate_vertices(const Scenario& sc);
/// Same, for an arbitrary coordinate index.
VertexSet enumerate_vertices(const CoordinateIndex& index);

/// H-representation of the complete probability polytope CP_n: one row
/// -h(eps) <= 0 per eps in {0,1}^n, coordinates over all nonempty subsets.
InequalitySystem complete_polytope_hrep(std::size_t n, std::size_t guard = 16);

Scenario complete_scenario(std::size_t n);

// Scenario file: "SCENARIO n", optional "PARTIES k1 k2 ...", then one context
// per line as 1-based indices.
Scenario read_scenario(std::istream& is);
void write_scenario(std::ostream& os, const Scenario& sc);

}  // namespace bellpoly
