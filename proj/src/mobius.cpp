#include "bellpoly/mobius.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "bellpoly/errors.hpp"

namespace bellpoly {

namespace {

std::size_t table_size(std::size_t n) {
    if (n == 0 || n > kMaxObservables) throw std::invalid_argument("table: n out of range");
    return std::size_t{1} << n;
}

bool in_unit_interval(const Rational& r) { return r.sign() >= 0 && r <= Rational(1); }

}  // namespace

MeasureTable::MeasureTable(std::size_t n, std::vector<Rational> values) : n_(n), values_(std::move(values)) {
    if (values_.size() != table_size(n)) throw DimensionMismatch("MeasureTable: expected 2^n values");
    values_[0] = Rational(1);
    for (Subset s = 1; s < values_.size(); ++s) {
        if (!in_unit_interval(values_[s])) {
            throw InvalidMeasure("f(" + subset_label(s, n) + ") = " + values_[s].to_string() + " is outside [0,1]");
        }
    }
}

RationalVector MeasureTable::point() const {
    const CoordinateIndex index = complete_scenario(n_).coordinates();
    RationalVector p;
    p.reserve(index.size());
    for (auto s : index.subsets()) p.push_back(values_[s]);
    return p;
}

AtomTable::AtomTable(std::size_t n, std::vector<Rational> values) : n_(n), values_(std::move(values)) {
    if (values_.size() != table_size(n)) throw DimensionMismatch("AtomTable: expected 2^n values");
    Rational sum(0);
    for (const auto& v : values_) sum += v;
    if (sum != Rational(1)) throw InvalidMeasure("atoms sum to " + sum.to_string() + ", not 1");
}

bool AtomTable::nonnegative() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& r) { return r.sign() >= 0; });
}

Subset AtomTable::argmin() const {
    return static_cast<Subset>(std::min_element(values_.begin(), values_.end()) - values_.begin());
}

AtomTable mobius_forward(const MeasureTable& f) {
    std::vector<Rational> g = f.values();
    const std::size_t n = f.n();
    for (std::size_t i = 0; i < n; ++i) {
        const Subset bit = Subset{1} << i;
        for (Subset s = 0; s < g.size(); ++s) {
            if (!(s & bit)) g[s] -= g[s | bit];
        }
    }
    return AtomTable(n, std::move(g));
}

MeasureTable mobius_inverse(const AtomTable& a) {
    const std::size_t n = a.n();
    for (Subset e = 0; e < a.values().size(); ++e) {
        if (!in_unit_interval(a[e])) {
            throw InvalidMeasure("atom " + eps_bitstring(e, n) + " = " + a[e].to_string() + " is not a probability");
        }
    }
    std::vector<Rational> g = a.values();
    for (std::size_t i = 0; i < n; ++i) {
        const Subset bit = Subset{1} << i;
        for (Subset s = 0; s < g.size(); ++s) {
            if (!(s & bit)) g[s] += g[s | bit];
        }
    }
    return MeasureTable(n, std::move(g));
}

AtomMatrices atom_matrix(std::size_t n, std::size_t guard) {
    if (n == 0) throw std::invalid_argument("atom_matrix: n must be positive");
    if (n > guard) throw GuardExceeded("atom_matrix: n = " + std::to_string(n) + " exceeds the guard " + std::to_string(guard));
    const CoordinateIndex index = complete_scenario(n).coordinates();
    const std::size_t k = std::size_t{1} << n;
    RationalMatrix m(k, k);
    for (Subset eps = 0; eps < k; ++eps) {
        for (std::size_t r = 0; r < index.size(); ++r) {
            if (is_subset_of(index.subset(r), eps)) m(r, eps) = 1;
        }
        m(k - 1, eps) = 1;
    }
    RationalMatrix inv = invert(m);
    if (!(m * inv == RationalMatrix::identity(k))) throw std::logic_error("atom_matrix: M*N is not the identity");
    return {std::move(m), std::move(inv)};
}

std::string eps_bitstring(Subset eps, std::size_t n) {
    std::string out(n, '0');
    for (std::size_t i = 0; i < n; ++i) {
        if (eps >> i & 1u) out[i] = '1';
    }
    return out;
}

namespace {

struct Lines {
    std::istream& is;
    std::size_t line_no = 0;

    // Next nonblank line with comments stripped; false at end of input.
    bool next(std::string& out) {
        for (std::string line; std::getline(is, line);) {
            ++line_no;
            if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            out = line;
            return true;
        }
        return false;
    }
    std::string where() const { return "line " + std::to_string(line_no) + ": "; }
};

std::size_t read_header(Lines& in, const std::string& keyword) {
    std::string line;
    if (!in.next(line)) throw ParseError("missing " + keyword + " header");
    std::istringstream ss(line);
    std::string kw, count, extra;
    ss >> kw >> count;
    if (kw != keyword || count.empty() || (ss >> extra) ||
        !std::all_of(count.begin(), count.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError(in.where() + "expected '" + keyword + " n'");
    }
    const std::size_t n = std::stoul(count);
    if (n == 0 || n > kMaxObservables) throw ParseError(in.where() + "n out of range");
    return n;
}

}  // namespace

MeasureTable read_measure(std::istream& is) {
    Lines in{is};
    const std::size_t n = read_header(in, "MEASURE");
    std::vector<Rational> values(std::size_t{1} << n);
    std::vector<bool> seen(values.size(), false);
    std::string line;
    while (in.next(line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(in.where() + "expected 'indices = value'");
        std::istringstream lhs(line.substr(0, eq));
        Subset s = 0;
        for (std::string t; lhs >> t;) {
            if (!std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                throw ParseError(in.where() + "bad index '" + t + "'");
            }
            const std::size_t i = std::stoul(t);
            if (i < 1 || i > n) throw ParseError(in.where() + "index " + t + " out of range");
            s |= Subset{1} << (i - 1);
        }
        if (s == 0) throw ParseError(in.where() + "empty subset");
        if (seen[s]) throw ParseError(in.where() + "subset listed twice");
        std::istringstream rhs(line.substr(eq + 1));
        std::string value, extra;
        if (!(rhs >> value) || (rhs >> extra)) throw ParseError(in.where() + "expected one value");
        values[s] = Rational::parse(value);
        seen[s] = true;
    }
    for (Subset s = 1; s < values.size(); ++s) {
        if (!seen[s]) throw ParseError("MEASURE: missing value for subset " + subset_label(s, n));
    }
    return MeasureTable(n, std::move(values));
}

void write_measure(std::ostream& os, const MeasureTable& f) {
    os << "MEASURE " << f.n() << '\n';
    const CoordinateIndex index = complete_scenario(f.n()).coordinates();
    for (auto s : index.subsets()) {
        const auto m = members(s);
        for (std::size_t i = 0; i < m.size(); ++i) os << (i ? " " : "") << m[i];
        os << " = " << f[s].to_string() << '\n';
    }
}

AtomTable read_atoms(std::istream& is) {
    Lines in{is};
    const std::size_t n = read_header(in, "ATOMS");
    std::vector<Rational> values(std::size_t{1} << n);
    std::vector<bool> seen(values.size(), false);
    std::string line;
    while (in.next(line)) {
        std::istringstream ss(line);
        std::string bits, value, extra;
        if (!(ss >> bits >> value) || (ss >> extra)) throw ParseError(in.where() + "expected 'bitstring value'");
        if (bits.size() != n || !std::all_of(bits.begin(), bits.end(), [](char c) { return c == '0' || c == '1'; })) {
            throw ParseError(in.where() + "bad bitstring '" + bits + "'");
        }
        Subset eps = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (bits[i] == '1') eps |= Subset{1} << i;
        }
        if (seen[eps]) throw ParseError(in.where() + "atom listed twice");
        values[eps] = Rational::parse(value);
        seen[eps] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw ParseError("ATOMS: expected 2^n entries");
    return AtomTable(n, std::move(values));
}

void write_atoms(std::ostream& os, const AtomTable& a) {
    os << "ATOMS " << a.n() << '\n';
    for (Subset e = 0; e < a.values().size(); ++e) os << eps_bitstring(e, a.n()) << ' ' << a[e].to_string() << '\n';
}

}  // namespace bellpoly
