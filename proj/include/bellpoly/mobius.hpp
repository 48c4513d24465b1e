#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "bellpoly/linalg.hpp"
#include "bellpoly/scenario.hpp"

namespace bellpoly {

/// Values f(S) in [0,1] for every nonempty S ⊆ {1..n}, indexed by the
/// subset bitmask. Slot 0 holds f(∅) = 1.
class MeasureTable {
public:
    /// `values` has 2^n entries; entry 0 is ignored and set to 1. Throws
    /// InvalidMeasure on values outside [0,1].
    MeasureTable(std::size_t n, std::vector<Rational> values);

    std::size_t n() const { return n_; }
    const Rational& operator[](Subset s) const { return values_[s]; }
    const std::vector<Rational>& values() const { return values_; }
    /// Coordinates p in CoordinateIndex order over all nonempty subsets.
    RationalVector point() const;

    friend bool operator==(const MeasureTable&, const MeasureTable&) = default;

private:
    std::size_t n_;
    std::vector<Rational> values_;
};

/// Weights λ(ε) for ε ∈ {0,1}^n, indexed by the bitmask of ε (bit i is
/// ε_{i+1}). Entries may be negative.
class AtomTable {
public:
    /// Throws InvalidMeasure unless the entries sum to 1.
    AtomTable(std::size_t n, std::vector<Rational> values);

    std::size_t n() const { return n_; }
    const Rational& operator[](Subset eps) const { return values_[eps]; }
    const std::vector<Rational>& values() const { return values_; }
    bool nonnegative() const;
    /// Smallest entry, first one in bitmask order on ties.
    Subset argmin() const;

    friend bool operator==(const AtomTable&, const AtomTable&) = default;

private:
    std::size_t n_;
    std::vector<Rational> values_;
};

/// λ(ε) = Σ_{T ⊇ S} (-1)^{|T \ S|} f(T) with S the support of ε.
AtomTable mobius_forward(const MeasureTable& f);

/// f(S) = Σ_{ε ⊇ S} λ(ε). Throws InvalidMeasure on an entry outside [0,1].
MeasureTable mobius_inverse(const AtomTable& a);

struct AtomMatrices {
    RationalMatrix M;
    RationalMatrix N;
};

/// M has the columns (u_ε, 1) for ε in bitmask order; rows are the
/// coordinates of all nonempty subsets followed by the constant. N = M^-1.
AtomMatrices atom_matrix(std::size_t n, std::size_t guard = 12);

/// "ε1ε2…εn" as 0/1 characters.
std::string eps_bitstring(Subset eps, std::size_t n);

// MEASURE / ATOMS text formats.
MeasureTable read_measure(std::istream& is);
void write_measure(std::ostream& os, const MeasureTable& f);
AtomTable read_atoms(std::istream& is);
void write_atoms(std::ostream& os, const AtomTable& a);

}  // namespace bellpoly
