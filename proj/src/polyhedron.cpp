#include "bellpoly/polyhedron.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "bellpoly/errors.hpp"

namespace bellpoly {

bool LinearInequality::is_trivial() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& r) { return r.is_zero(); });
}

std::strong_ordering operator<=>(const IntegerRow& a, const IntegerRow& b) {
    const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = compare(a.coeffs[i], b.coeffs[i]); c != 0) return c;
    }
    if (a.coeffs.size() != b.coeffs.size()) return a.coeffs.size() <=> b.coeffs.size();
    return compare(a.bound, b.bound);
}

std::size_t IntegerRowHash::operator()(const IntegerRow& r) const {
    std::size_t h = hash_mpz(r.bound);
    for (const auto& c : r.coeffs) h = h * 1000003u ^ hash_mpz(c);
    return h;
}

IntegerRow to_integer_row(const LinearInequality& ineq) {
    RationalVector all = ineq.coeffs;
    all.push_back(ineq.bound);
    IntegerVector ints = detail::clear_denominators(all);
    mpz_class g = 0;
    for (const auto& v : ints) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    IntegerRow row;
    row.bound = ints.back();
    ints.pop_back();
    row.coeffs = std::move(ints);
    if (g > 1) {
        for (auto& c : row.coeffs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(row.bound.get_mpz_t(), row.bound.get_mpz_t(), g.get_mpz_t());
    }
    return row;
}

LinearInequality from_integer_row(const IntegerRow& row, std::string provenance) {
    LinearInequality out;
    out.coeffs.reserve(row.coeffs.size());
    for (const auto& c : row.coeffs) out.coeffs.emplace_back(c);
    out.bound = Rational(row.bound);
    out.provenance = std::move(provenance);
    return out;
}

LinearInequality normalize(const LinearInequality& ineq) {
    return from_integer_row(to_integer_row(ineq), ineq.provenance);
}

void InequalitySystem::add(LinearInequality ineq) {
    if (ineq.coeffs.size() != dim) throw DimensionMismatch("InequalitySystem::add: row width differs from dim");
    rows.push_back(std::move(ineq));
}

InequalitySystem canonicalize(const InequalitySystem& sys) {
    std::vector<std::pair<IntegerRow, std::string>> rows;
    rows.reserve(sys.rows.size());
    for (const auto& r : sys.rows) {
        if (r.dim() != sys.dim) throw DimensionMismatch("canonicalize: row width differs from dim");
        rows.emplace_back(to_integer_row(r), r.provenance);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    InequalitySystem out(sys.dim, sys.labels);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].first == rows[i - 1].first) continue;
        out.rows.push_back(from_integer_row(rows[i].first, rows[i].second));
    }
    return out;
}

void VertexSet::add(BinaryPoint v) {
    if (v.size() != dim_) throw DimensionMismatch("VertexSet::add: vertex width differs from dim");
    for (auto e : v) {
        if (e > 1) throw std::invalid_argument("VertexSet::add: entry outside {0,1}");
    }
    if (contains(v)) throw std::invalid_argument("VertexSet::add: duplicate vertex");
    vertices_.push_back(std::move(v));
}

VertexSet VertexSet::from_rational(std::size_t dim, const std::vector<RationalVector>& pts,
                                   std::vector<std::string> labels) {
    VertexSet out(dim, std::move(labels));
    for (const auto& p : pts) {
        if (p.size() != dim) throw DimensionMismatch("VertexSet::from_rational: width differs from dim");
        BinaryPoint b(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (p[i] == Rational(1)) b[i] = 1;
            else if (!p[i].is_zero()) throw std::invalid_argument("VertexSet: entry outside {0,1}");
        }
        out.add(std::move(b));
    }
    return out;
}

RationalVector VertexSet::as_rational(std::size_t i) const {
    RationalVector out(dim_);
    for (std::size_t j = 0; j < dim_; ++j) out[j] = vertices_[i][j];
    return out;
}

std::vector<RationalVector> VertexSet::as_rational() const {
    std::vector<RationalVector> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(as_rational(i));
    return out;
}

std::vector<BinaryPoint> VertexSet::sorted() const {
    auto out = vertices_;
    std::sort(out.begin(), out.end());
    return out;
}

bool VertexSet::contains(const BinaryPoint& v) const {
    return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
}

int affine_dim(const std::vector<BinaryPoint>& points) {
    if (points.empty()) return -1;
    const std::size_t d = points.front().size();
    std::vector<std::vector<long>> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
        std::vector<long> row(d);
        for (std::size_t j = 0; j < d; ++j) row[j] = static_cast<long>(points[i][j]) - points[0][j];
        diffs.push_back(std::move(row));
    }
    return static_cast<int>(detail::rank_small(diffs, d, std::min(d, diffs.size())));
}

int affine_dim(const VertexSet& v) { return affine_dim(v.vertices()); }

namespace {

void check_dims(const LinearInequality& ineq, const VertexSet& v) {
    if (ineq.dim() != v.dim()) throw DimensionMismatch("inequality and vertex set dimensions differ");
}

// a·u for a 0/1 point u
mpq_class evaluate01(const LinearInequality& ineq, const BinaryPoint& u) {
    mpq_class acc;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (u[j]) acc += ineq.coeffs[j].get();
    }
    return acc;
}

}  // namespace

bool is_valid(const LinearInequality& ineq, const VertexSet& v) {
    check_dims(ineq, v);
    return std::all_of(v.vertices().begin(), v.vertices().end(),
                       [&](const BinaryPoint& u) { return evaluate01(ineq, u) <= ineq.bound.get(); });
}

VertexSet saturating_vertices(const LinearInequality& ineq, const VertexSet& v) {
    check_dims(ineq, v);
    VertexSet out(v.dim(), v.labels());
    for (const auto& u : v.vertices()) {
        const mpq_class lhs = evaluate01(ineq, u);
        if (lhs > ineq.bound.get()) throw std::invalid_argument("saturating_vertices: inequality is not valid");
        if (lhs == ineq.bound.get()) out.add(u);
    }
    return out;
}

const char* to_string(Classification c) {
    switch (c) {
        case Classification::invalid: return "invalid";
        case Classification::valid_nonfacet: return "valid";
        case Classification::facet: return "facet";
    }
    return "?";
}

Classification classify(const LinearInequality& ineq, const VertexSet& v, int dim_v) {
    check_dims(ineq, v);
    std::vector<BinaryPoint> tight;
    for (const auto& u : v.vertices()) {
        const mpq_class lhs = evaluate01(ineq, u);
        if (lhs > ineq.bound.get()) return Classification::invalid;
        if (lhs == ineq.bound.get()) tight.push_back(u);
    }
    if (static_cast<int>(tight.size()) < dim_v) return Classification::valid_nonfacet;
    return affine_dim(tight) == dim_v - 1 ? Classification::facet : Classification::valid_nonfacet;
}

Classification classify(const LinearInequality& ineq, const VertexSet& v) {
    return classify(ineq, v, affine_dim(v));
}

std::vector<IntegerRow> facet_rows(const InequalitySystem& sys, const VertexSet& v) {
    const int dv = affine_dim(v);
    std::set<IntegerRow> out;
    for (const auto& r : sys.rows) {
        if (classify(r, v, dv) == Classification::facet) out.insert(to_integer_row(r));
    }
    return {out.begin(), out.end()};
}

bool systems_equivalent(const InequalitySystem& a, const InequalitySystem& b, const VertexSet& v) {
    if (a.dim != b.dim) throw DimensionMismatch("systems_equivalent: dimensions differ");
    return facet_rows(a, v) == facet_rows(b, v);
}

std::string format_inequality(const LinearInequality& ineq, const std::vector<std::string>& labels) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < ineq.coeffs.size(); ++i) {
        const Rational& c = ineq.coeffs[i];
        if (c.is_zero()) continue;
        const std::string name = i < labels.size() ? "p" + labels[i] : "x" + std::to_string(i + 1);
        const bool neg = c.sign() < 0;
        const Rational mag = neg ? -c : c;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        if (mag != Rational(1)) os << mag << " ";
        os << name;
        first = false;
    }
    if (first) os << "0";
    os << " <= " << ineq.bound;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const LinearInequality& ineq) {
    return os << format_inequality(ineq, {});
}

}  // namespace bellpoly
