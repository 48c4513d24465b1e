#include "doctest.h"

#include <random>

#include "bellpoly/derive.hpp"
#include "bellpoly/errors.hpp"
#include "bellpoly/hull_oracle.hpp"
#include "bellpoly/scenario.hpp"
#include "test_support.hpp"

using namespace bellpoly;
using namespace testing_support;

namespace {

VertexSet from_labels(const std::vector<std::string>& labels, std::size_t n) {
    VertexSet v(labels.size(), labels);
    for (auto& p : product_vertices(labels, n)) v.add(p);
    return v;
}

VertexSet square() {
    VertexSet v(2);
    for (BinaryPoint p : {BinaryPoint{0, 0}, {1, 0}, {0, 1}, {1, 1}}) v.add(p);
    return v;
}

LinearInequality row(RationalVector a, Rational b) {
    LinearInequality r;
    r.coeffs = std::move(a);
    r.bound = b;
    return r;
}

const std::vector<std::string> kBw{"1", "2", "3", "12", "13", "23"};
const std::vector<std::string> kChsh{"1", "2", "3", "4", "13", "14", "23", "24"};

}  // namespace

TEST_CASE("unit square") {
    const auto expected = row_set({row({-1, 0}, 0), row({0, -1}, 0), row({1, 0}, 1), row({0, 1}, 1)});
    CHECK(row_set(facets_bruteforce(square()).rows) == expected);
    CHECK(row_set(hull_dd(square()).rows) == expected);
    InequalitySystem h(2);
    for (auto& r : hull_dd(square()).rows) h.add(r);
    CHECK(vertices_from_hrep(h).sorted() == square().sorted());
}

TEST_CASE("Bell-Wigner polytope") {
    const auto v = from_labels(kBw, 3);
    const auto expected = row_set(bell_wigner(kBw, "1", "2", "3"));
    CHECK(expected.size() == 16);
    CHECK(row_set(facets_bruteforce(v).rows) == expected);
    CHECK(row_set(hull_dd(v).rows) == expected);
}

TEST_CASE("CHSH polytope has 24 facets") {
    const auto v = from_labels(kChsh, 4);
    const auto brute = facets_bruteforce(v);
    CHECK(brute.size() == 24);
    const auto dd = hull_dd(v);
    CHECK(row_set(dd.rows) == row_set(brute.rows));
    for (const auto& r : brute.rows) CHECK(classify(r, v) == Classification::facet);
    CHECK(vertices_from_hrep(brute).sorted() == v.sorted());
}

TEST_CASE("CP4 hull matches the closed form") {
    const auto h = complete_polytope_hrep(4);
    const auto v = enumerate_vertices(complete_scenario(4));
    CHECK(row_set(hull_dd(v).rows) == row_set(h.rows));
    CHECK(vertices_from_hrep(h).sorted() == v.sorted());
}

TEST_CASE("CP2 vertices from the closed form") {
    const auto v = vertices_from_hrep(complete_polytope_hrep(2));
    const std::vector<BinaryPoint> expected{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}};
    CHECK(v.sorted() == expected);
}

TEST_CASE("(2,3) hull agrees with the tree derivation") {
    const auto sc = build_multipartite({2, 3});
    const auto v = enumerate_vertices(sc);
    CHECK(row_set(hull_dd(v).rows) == row_set(derive_tree(sc).facets.rows));
}

TEST_CASE("both double description orders agree") {
    const auto v = enumerate_vertices(build_multipartite({2, 3}));
    HullOptions lex;
    lex.order = DdOrder::lex_min;
    HullOptions serial;
    serial.exec = Execution::serial;
    const auto a = row_set(hull_dd(v).rows);
    CHECK(row_set(hull_dd(v, lex).rows) == a);
    CHECK(row_set(hull_dd(v, serial).rows) == a);
}

TEST_CASE("guards and degenerate inputs") {
    VertexSet flat(2);
    flat.add({0, 0});
    flat.add({1, 1});
    CHECK_THROWS_AS(facets_bruteforce(flat), NotFullDimensional);
    HullOptions tiny;
    tiny.subset_guard = 10;
    CHECK_THROWS_AS(facets_bruteforce(from_labels(kChsh, 4), tiny), GuardExceeded);
    HullOptions few;
    few.max_rays = 3;
    CHECK_THROWS_AS(hull_dd(from_labels(kChsh, 4), few), GuardExceeded);
    HullOptions past;
    past.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    CHECK_THROWS_AS(hull_dd(from_labels(kChsh, 4), past), GuardExceeded);
}

TEST_CASE("vertex enumeration diagnostics") {
    InequalitySystem half(1);
    half.add(row({-1}, 0));
    CHECK_THROWS_AS(vertices_from_hrep(half), UnboundedPolyhedron);
    // CHSH with one facet missing gains a fractional vertex
    const auto h = facets_bruteforce(from_labels(kChsh, 4));
    InequalitySystem missing(h.dim, h.labels);
    const auto ch = row_set(chsh(kChsh, "1", "2", "3", "4"));
    bool dropped = false;
    for (const auto& r : h.rows) {
        if (!dropped && std::binary_search(ch.begin(), ch.end(), to_integer_row(r))) {
            dropped = true;
            continue;
        }
        missing.add(r);
    }
    CHECK_THROWS_AS(vertices_from_hrep(missing), NonBinaryVertex);
    HullOptions no_scan;
    no_scan.binary_scan = false;
    CHECK_THROWS_AS(vertices_from_hrep(missing, no_scan), NonBinaryVertex);
    CHECK_THROWS_AS(vertices_from_hrep(half, no_scan), UnboundedPolyhedron);
    CHECK(vertices_from_hrep(h, no_scan).sorted() == from_labels(kChsh, 4).sorted());
}

TEST_CASE("vertex enumeration of a lower-dimensional polytope") {
    // the diagonal of the unit square
    InequalitySystem seg(2);
    seg.add(row({1, -1}, 0));
    seg.add(row({-1, 1}, 0));
    seg.add(row({-1, 0}, 0));
    seg.add(row({1, 0}, 1));
    HullOptions no_scan;
    no_scan.binary_scan = false;
    const std::vector<BinaryPoint> expected{{0, 0}, {1, 1}};
    CHECK(vertices_from_hrep(seg).sorted() == expected);
    CHECK(vertices_from_hrep(seg, no_scan).sorted() == expected);
    InequalitySystem empty(2);
    empty.add(row({1, 0}, -1));
    empty.add(row({-1, 0}, 0));
    CHECK(vertices_from_hrep(empty).size() == 0);
}

TEST_CASE("property: random 0/1 sets round trip and oracles agree") {
    std::mt19937_64 rng(43);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 2 + rng() % 4;
        VertexSet v(d);
        for (std::size_t k = 0; k < (std::size_t{1} << d); ++k) {
            if (rng() % 3 == 0) continue;
            BinaryPoint p(d);
            for (std::size_t j = 0; j < d; ++j) p[j] = (k >> j) & 1u;
            v.add(p);
        }
        if (affine_dim(v) != static_cast<int>(d)) continue;
        const auto brute = facets_bruteforce(v);
        const auto dd = hull_dd(v);
        CHECK(row_set(brute.rows) == row_set(dd.rows));
        for (const auto& r : dd.rows) CHECK(classify(r, v) == Classification::facet);
        CHECK(vertices_from_hrep(brute).sorted() == v.sorted());
        HullOptions no_scan;
        no_scan.binary_scan = false;
        CHECK(vertices_from_hrep(brute, no_scan).sorted() == v.sorted());
        // dropping a facet enlarges the polytope; the enumeration must notice
        InequalitySystem cut(brute.dim, brute.labels);
        const std::size_t drop = rng() % brute.size();
        for (std::size_t i = 0; i < brute.size(); ++i) {
            if (i != drop) cut.add(brute.rows[i]);
        }
        for (const auto& opts : {HullOptions{}, no_scan}) {
            const bool noticed = [&] {
                try {
                    return vertices_from_hrep(cut, opts).sorted() != v.sorted();
                } catch (const NonBinaryVertex&) {
                    return true;
                } catch (const UnboundedPolyhedron&) {
                    return true;
                }
            }();
            CHECK(noticed);
        }
        ++checked;
    }
    CHECK(checked > 20);
}
