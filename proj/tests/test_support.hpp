#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bellpoly/polyhedron.hpp"
#include "bellpoly/scenario.hpp"

namespace testing_support {

using bellpoly::LinearInequality;
using bellpoly::Rational;
using Terms = std::vector<std::pair<std::string, long>>;

inline std::size_t label_pos(const std::vector<std::string>& labels, const std::string& l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw std::out_of_range("no coordinate " + l);
    return static_cast<std::size_t>(it - labels.begin());
}

/// Σ c·p_label <= bound
inline LinearInequality le(const std::vector<std::string>& labels, const Terms& terms, long bound) {
    LinearInequality r;
    r.coeffs.assign(labels.size(), Rational(0));
    for (const auto& [l, c] : terms) r.coeffs[label_pos(labels, l)] += c;
    r.bound = bound;
    return r;
}

/// constant + Σ c·p_label >= 0
inline LinearInequality ge(const std::vector<std::string>& labels, long constant, const Terms& terms) {
    Terms neg;
    for (const auto& [l, c] : terms) neg.emplace_back(l, -c);
    return le(labels, neg, constant);
}

inline std::string pair_label(const std::string& a, const std::string& b) {
    return std::stoi(a) < std::stoi(b) ? a + b : b + a;
}

/// The sixteen Bell-Wigner half-spaces on observables i, j, s.
inline std::vector<LinearInequality> bell_wigner(const std::vector<std::string>& L, const std::string& i,
                                                const std::string& j, const std::string& s) {
    std::vector<LinearInequality> out;
    const std::string ij = pair_label(i, j), is = pair_label(i, s), js = pair_label(j, s);
    for (auto [a, b] : {std::pair{i, j}, std::pair{i, s}, std::pair{j, s}}) {
        const std::string ab = pair_label(a, b);
        out.push_back(ge(L, 0, {{ab, 1}}));
        out.push_back(ge(L, 0, {{a, 1}, {ab, -1}}));
        out.push_back(ge(L, 0, {{b, 1}, {ab, -1}}));
        out.push_back(le(L, {{a, 1}, {b, 1}, {ab, -1}}, 1));
    }
    out.push_back(ge(L, 1, {{i, -1}, {j, -1}, {s, -1}, {ij, 1}, {is, 1}, {js, 1}}));
    out.push_back(ge(L, 0, {{i, 1}, {ij, -1}, {is, -1}, {js, 1}}));
    out.push_back(ge(L, 0, {{j, 1}, {ij, -1}, {js, -1}, {is, 1}}));
    out.push_back(ge(L, 0, {{s, 1}, {is, -1}, {js, -1}, {ij, 1}}));
    return out;
}

/// The eight CHSH half-spaces -1 <= E <= 0 with Alice settings a1, a2 and Bob
/// settings b1, b2 in the roles of 1, 2, 3, 4.
inline std::vector<LinearInequality> chsh(const std::vector<std::string>& L, const std::string& a1,
                                          const std::string& a2, const std::string& b1, const std::string& b2) {
    const std::string p13 = a1 + b1, p14 = a1 + b2, p23 = a2 + b1, p24 = a2 + b2;
    const std::vector<Terms> exprs = {
        {{p13, 1}, {p14, 1}, {p24, 1}, {p23, -1}, {a1, -1}, {b2, -1}},
        {{p23, 1}, {p24, 1}, {p14, 1}, {p13, -1}, {a2, -1}, {b2, -1}},
        {{p14, 1}, {p13, 1}, {p23, 1}, {p24, -1}, {a1, -1}, {b1, -1}},
        {{p24, 1}, {p23, 1}, {p13, 1}, {p14, -1}, {a2, -1}, {b1, -1}},
    };
    std::vector<LinearInequality> out;
    for (const auto& e : exprs) {
        out.push_back(le(L, e, 0));
        Terms neg;
        for (const auto& [l, c] : e) neg.emplace_back(l, -c);
        out.push_back(le(L, neg, 1));
    }
    return out;
}

/// Normalized integer rows, sorted and deduplicated.
inline std::vector<bellpoly::IntegerRow> row_set(const std::vector<LinearInequality>& rows) {
    std::vector<bellpoly::IntegerRow> out;
    for (const auto& r : rows) out.push_back(bellpoly::to_integer_row(r));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Vertices computed directly from the labels: coordinate "ijk" is the
/// product of the assigned bits. Independent of enumerate_vertices.
inline std::vector<bellpoly::BinaryPoint> product_vertices(const std::vector<std::string>& labels, std::size_t n) {
    std::vector<bellpoly::BinaryPoint> out;
    for (unsigned eps = 0; eps < (1u << n); ++eps) {
        bellpoly::BinaryPoint p;
        for (const auto& l : labels) {
            int v = 1;
            for (char c : l) v *= (eps >> (c - '1')) & 1u;
            p.push_back(static_cast<std::uint8_t>(v));
        }
        out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den) {
    std::uniform_int_distribution<long> den(1, max_den);
    const long d = den(rng);
    std::uniform_int_distribution<long> num(lo * d, hi * d);
    return Rational(num(rng), d);
}

}  // namespace testing_support
