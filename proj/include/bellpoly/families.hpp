#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "bellpoly/polyhedron.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

// Symmetry group of a party-structured scenario, generated by setting
// permutations within a party, permutations of parties with equal numbers
// of settings, and outcome flips eps_i -> 1 - eps_i. A flip of i maps the
// coordinate m_S (i in S) to m_{S\i} - m_S.

/// Normalized images of `ineq` under the group, sorted; the first entry is
/// the canonical representative. Inequalities are over sc.coordinates().
std::vector<LinearInequality> family_orbit(const LinearInequality& ineq, const Scenario& sc,
                                           std::size_t max_orbit = 5'000'000);

/// Lexicographically smallest normalized image of `ineq`.
LinearInequality canonicalize_family(const LinearInequality& ineq, const Scenario& sc);

/// Every coordinate with a nonzero coefficient lies inside a single context.
bool is_trivial_facet(const LinearInequality& ineq, const Scenario& sc);

/// Scenario-independent name of the family of `ineq`: the canonical form
/// in the multipartite scenario made of the settings it actually uses.
std::string family_signature(const LinearInequality& ineq, const Scenario& sc);

struct Family {
    LinearInequality representative;  // canonical, over sc.coordinates()
    std::size_t orbit_size = 0;
    std::size_t members = 0;  // rows of the partitioned system in this orbit
    bool trivial = false;
    std::string signature;
};

/// Splits a facet system into symmetry orbits, ordered by representative.
std::vector<Family> partition_families(const InequalitySystem& facets, const Scenario& sc);

std::set<std::string> family_signatures(const InequalitySystem& facets, const Scenario& sc);

}  // namespace bellpoly
