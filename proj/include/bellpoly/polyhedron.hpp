#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bellpoly/linalg.hpp"

namespace bellpoly {

/// A half-space a·x <= bound.
struct LinearInequality {
    RationalVector coeffs;
    Rational bound;
    std::string provenance;

    std::size_t dim() const { return coeffs.size(); }
    /// True when every coefficient is zero (0 <= bound).
    bool is_trivial() const;
    Rational evaluate(std::span<const Rational> x) const { return dot(coeffs, x); }
};

/// Normalized integer form: coprime integer coefficients and bound.
struct IntegerRow {
    IntegerVector coeffs;
    mpz_class bound;

    friend bool operator==(const IntegerRow&, const IntegerRow&) = default;
    friend std::strong_ordering operator<=>(const IntegerRow& a, const IntegerRow& b);
};

struct IntegerRowHash {
    std::size_t operator()(const IntegerRow& r) const;
};

/// Scales by a positive rational so that coefficients and bound are coprime
/// integers. The direction of the inequality is never flipped.
LinearInequality normalize(const LinearInequality& ineq);
IntegerRow to_integer_row(const LinearInequality& ineq);
LinearInequality from_integer_row(const IntegerRow& row, std::string provenance = {});

struct InequalitySystem {
    std::size_t dim = 0;
    std::vector<LinearInequality> rows;
    std::vector<std::string> labels;  // optional, one per coordinate

    InequalitySystem() = default;
    explicit InequalitySystem(std::size_t d, std::vector<std::string> coordinate_labels = {})
        : dim(d), labels(std::move(coordinate_labels)) {}

    /// Appends a row; throws DimensionMismatch on a wrong width.
    void add(LinearInequality ineq);
    std::size_t size() const { return rows.size(); }
};

/// Normalizes every row, drops duplicates and sorts lexicographically on the
/// normalized integer rows.
InequalitySystem canonicalize(const InequalitySystem& sys);

/// 0/1 point.
using BinaryPoint = std::vector<std::uint8_t>;

class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t dim, std::vector<std::string> labels = {}) : dim_(dim), labels_(std::move(labels)) {}

    /// Throws on entries outside {0,1}, wrong width, or duplicates.
    void add(BinaryPoint v);
    static VertexSet from_rational(std::size_t dim, const std::vector<RationalVector>& pts,
                                   std::vector<std::string> labels = {});

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }
    const BinaryPoint& operator[](std::size_t i) const { return vertices_[i]; }
    const std::vector<BinaryPoint>& vertices() const { return vertices_; }
    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels) { labels_ = std::move(labels); }

    RationalVector as_rational(std::size_t i) const;
    std::vector<RationalVector> as_rational() const;
    /// Vertices in lexicographic order (for set comparison).
    std::vector<BinaryPoint> sorted() const;
    bool contains(const BinaryPoint& v) const;

private:
    std::size_t dim_ = 0;
    std::vector<BinaryPoint> vertices_;
    std::vector<std::string> labels_;
};

/// Affine dimension of a set of 0/1 points.
int affine_dim(const std::vector<BinaryPoint>& points);
int affine_dim(const VertexSet& v);

bool is_valid(const LinearInequality& ineq, const VertexSet& v);
VertexSet saturating_vertices(const LinearInequality& ineq, const VertexSet& v);

enum class Classification { invalid, valid_nonfacet, facet };
const char* to_string(Classification c);

Classification classify(const LinearInequality& ineq, const VertexSet& v);
/// Same as classify with a precomputed affine dimension of v.
Classification classify(const LinearInequality& ineq, const VertexSet& v, int dim_v);

/// Normalized facet rows of a system, canonical order.
std::vector<IntegerRow> facet_rows(const InequalitySystem& sys, const VertexSet& v);

bool systems_equivalent(const InequalitySystem& a, const InequalitySystem& b, const VertexSet& v);

std::ostream& operator<<(std::ostream& os, const LinearInequality& ineq);
/// Human-readable form using coordinate labels, e.g. "p13 + p14 - p1 <= 0".
std::string format_inequality(const LinearInequality& ineq, const std::vector<std::string>& labels);

// H-file / V-file text formats.
void write_hrep(std::ostream& os, const InequalitySystem& sys);
InequalitySystem read_hrep(std::istream& is);
void write_vrep(std::ostream& os, const VertexSet& v);
VertexSet read_vrep(std::istream& is);

InequalitySystem read_hrep_file(const std::string& path);
VertexSet read_vrep_file(const std::string& path);

}  // namespace bellpoly
