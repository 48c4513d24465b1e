#include "doctest.h"

#include <random>

#include "bellpoly/derive.hpp"
#include "bellpoly/errors.hpp"
#include "bellpoly/fm_engine.hpp"
#include "bellpoly/hull_oracle.hpp"
#include "bellpoly/lp.hpp"
#include "test_support.hpp"

using namespace bellpoly;
using namespace testing_support;

namespace {

LinearInequality row(RationalVector a, Rational b) {
    LinearInequality r;
    r.coeffs = std::move(a);
    r.bound = b;
    return r;
}

InequalitySystem sys(std::size_t d, std::vector<LinearInequality> rows, std::vector<std::string> labels = {}) {
    InequalitySystem s(d, std::move(labels));
    for (auto& r : rows) s.add(std::move(r));
    return s;
}

const std::vector<std::string> kStackLabels{"1", "2", "3", "4", "12", "13", "14", "23", "24"};
const std::vector<std::string> kChshLabels{"1", "2", "3", "4", "13", "14", "23", "24"};

InequalitySystem stacked_bell_wigner() {
    InequalitySystem s(kStackLabels.size(), kStackLabels);
    for (auto& r : bell_wigner(kStackLabels, "1", "2", "3")) s.add(r);
    for (auto& r : bell_wigner(kStackLabels, "1", "2", "4")) s.add(r);
    return canonicalize(s);
}

InequalitySystem random_system(std::mt19937_64& rng, std::size_t& dim) {
    std::uniform_int_distribution<std::size_t> d(1, 6), m(1, 12);
    std::uniform_int_distribution<long> c(-5, 5);
    dim = d(rng);
    InequalitySystem s(dim);
    const std::size_t rows = m(rng);
    for (std::size_t i = 0; i < rows; ++i) {
        LinearInequality r;
        for (std::size_t j = 0; j < dim; ++j) r.coeffs.emplace_back(c(rng));
        r.bound = c(rng);
        s.add(std::move(r));
    }
    return s;
}

bool point_satisfies(const InequalitySystem& s, const RationalVector& x) {
    for (const auto& r : s.rows) {
        if (r.evaluate(x) > r.bound) return false;
    }
    return true;
}

// Rows of s with the first x.size() coordinates fixed to x.
InequalitySystem fix_prefix(const InequalitySystem& s, const RationalVector& x) {
    InequalitySystem out(s.dim - x.size());
    for (const auto& r : s.rows) {
        LinearInequality f;
        f.bound = r.bound;
        for (std::size_t j = 0; j < x.size(); ++j) f.bound -= r.coeffs[j] * x[j];
        f.coeffs.assign(r.coeffs.begin() + static_cast<std::ptrdiff_t>(x.size()), r.coeffs.end());
        out.add(std::move(f));
    }
    return out;
}

}  // namespace

TEST_CASE("eliminate_one examples") {
    auto s = TrackedSystem::track(sys(2, {row({1, 1}, 1), row({-1, 0}, 0), row({1, -1}, 0)}));
    auto out = eliminate_one(s, 0);
    CHECK(out.system.dim == 1);
    CHECK(row_set(out.system.rows) == row_set({row({1}, 1), row({-1}, 0)}));
    CHECK(out.steps_done == 1);
    for (const auto& a : out.ancestry) CHECK(a.count() == 2);

    auto single = eliminate_one(TrackedSystem::track(sys(1, {row({1}, 1)})), 0);
    CHECK(single.system.size() == 0);
    CHECK(single.system.dim == 0);
}

TEST_CASE("eliminating p12 from the stacked Bell-Wigner systems yields CHSH") {
    const auto stacked = stacked_bell_wigner();
    CHECK(stacked.size() == 28);  // 16 + 16 minus the 4 rows on p1, p2, p12 only
    FmOptions raw;
    raw.redundancy = RedundancyMode::none;
    const auto out = eliminate_one(TrackedSystem::track(stacked), 4, raw);
    CHECK(out.system.labels == kChshLabels);
    const auto got = row_set(out.system.rows);
    for (const auto& r : row_set(chsh(kChshLabels, "1", "2", "3", "4"))) {
        CHECK(std::binary_search(got.begin(), got.end(), r));
    }

    VertexSet v(8, kChshLabels);
    for (auto& p : product_vertices(kChshLabels, 4)) v.add(p);
    for (auto mode : {RedundancyMode::lp, RedundancyMode::none}) {
        FmOptions o;
        o.redundancy = mode;
        const auto many = eliminate_many(TrackedSystem::track(stacked), {4}, o);
        CHECK(systems_equivalent(many.system, facets_bruteforce(v), v));
        if (mode == RedundancyMode::lp) CHECK(many.system.size() == 24);
    }
}

TEST_CASE("eliminate_many corner cases") {
    const auto feasible = sys(2, {row({1, 0}, 1), row({0, 1}, 1), row({-1, -1}, 0)});
    CHECK(eliminate_many(TrackedSystem::track(feasible), {0, 1}).system.size() == 0);
    const auto infeasible = sys(1, {row({1}, 0), row({-1}, -1)});
    FmOptions raw;
    raw.redundancy = RedundancyMode::none;
    const auto cert = eliminate_many(TrackedSystem::track(infeasible), {0}, raw);
    REQUIRE(cert.system.size() == 1);
    CHECK(cert.system.rows[0].is_trivial());
    CHECK(cert.system.rows[0].bound < 0);
}

TEST_CASE("lp examples") {
    const auto box = sys(1, {row({1}, 1), row({-1}, 0)});
    auto r = lp_max(box, RationalVector{1});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == 1);
    CHECK(r.witness == RationalVector{1});
    CHECK(lp_max(sys(1, {row({1}, 0), row({-1}, -1)}), RationalVector{1}).status == LpStatus::infeasible);
    CHECK(lp_max(sys(1, {row({-1}, 0)}), RationalVector{1}).status == LpStatus::unbounded);
    CHECK(is_redundant(sys(1, {row({1}, 1), row({1}, 2)}), 1));
    CHECK_FALSE(is_redundant(sys(1, {row({1}, 1), row({1}, 2)}), 0));
    CHECK(is_redundant(sys(1, {row({1}, 1), row({0}, 1)}), 1));
    CHECK(is_feasible(InequalitySystem(3)));
    CHECK_FALSE(is_feasible(sys(1, {row({1}, 0), row({-1}, -1)})));
}

TEST_CASE("Bell-Wigner system admits p12 for a classical marginal") {
    const std::vector<std::string> L{"1", "2", "3", "12", "13", "23"};
    InequalitySystem s(6, L);
    for (auto& r : bell_wigner(L, "1", "2", "3")) s.add(r);
    for (auto [l, v] : {std::pair{"1", Rational(1, 2)}, {"2", Rational(1, 2)}, {"3", Rational(1, 2)},
                        {"13", Rational(1, 4)}, {"23", Rational(1, 4)}}) {
        LinearInequality up = le(L, {{l, 1}}, 0), down = le(L, {{l, -1}}, 0);
        up.bound = v;
        down.bound = -v;
        s.add(up);
        s.add(down);
    }
    auto r = lp_max(s, RationalVector{0, 0, 0, 1, 0, 0});
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(point_satisfies(s, r.witness));
}

TEST_CASE("LP witnesses satisfy the system") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t dim = 0;
        const auto s = random_system(rng, dim);
        RationalVector obj;
        for (std::size_t j = 0; j < dim; ++j) obj.push_back(random_rational(rng, -3, 3, 2));
        const auto r = lp_max(s, obj);
        if (r.status == LpStatus::optimal) {
            CHECK(point_satisfies(s, r.witness));
            CHECK(dot(obj, r.witness) == r.value);
        }
        if (r.status == LpStatus::infeasible) CHECK_FALSE(is_feasible(s));
        else CHECK(is_feasible(s));
    }
}

TEST_CASE("property: projection soundness") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t dim = 0;
        const auto s = random_system(rng, dim);
        if (dim < 2) continue;
        FmOptions raw;
        raw.redundancy = RedundancyMode::none;
        const auto p = eliminate_one(TrackedSystem::track(s), dim - 1, raw);
        for (int k = 0; k < 20; ++k) {
            RationalVector q;
            for (std::size_t j = 0; j + 1 < dim; ++j) q.push_back(random_rational(rng, -3, 3, 2));
            CHECK(point_satisfies(p.system, q) == is_feasible(fix_prefix(s, q)));
        }
    }
}

TEST_CASE("property: feasibility invariance, Chernikov and determinism") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t dim = 0;
        const auto s = random_system(rng, dim);
        std::vector<std::size_t> vars;
        for (std::size_t j = 0; j < dim; ++j) {
            if (rng() % 2) vars.push_back(j);
        }
        FmOptions with, without, serial;
        without.chernikov = false;
        serial.exec = Execution::serial;
        const auto a = eliminate_many(TrackedSystem::track(s), vars, with);
        const auto b = eliminate_many(TrackedSystem::track(s), vars, without);
        const auto c = eliminate_many(TrackedSystem::track(s), vars, serial);
        CHECK(is_feasible(s) == is_feasible(a.system));
        CHECK(is_feasible(a.system) == is_feasible(b.system));
        CHECK(row_set(a.system.rows) == row_set(c.system.rows));
        // same region: each output's rows are implied by the other
        if (is_feasible(a.system)) {
            for (const auto& r : b.system.rows) {
                auto lp = lp_max(a.system, r.coeffs);
                CHECK((lp.status == LpStatus::optimal && lp.value <= r.bound));
            }
            for (const auto& r : a.system.rows) {
                auto lp = lp_max(b.system, r.coeffs);
                CHECK((lp.status == LpStatus::optimal && lp.value <= r.bound));
            }
        }
    }
}

TEST_CASE("row order does not change the output") {
    auto s = stacked_bell_wigner();
    std::mt19937_64 rng(37);
    std::vector<std::vector<IntegerRow>> outputs;
    for (int k = 0; k < 4; ++k) {
        std::shuffle(s.rows.begin(), s.rows.end(), rng);
        outputs.push_back(row_set(eliminate_many(TrackedSystem::track(s), {4}).system.rows));
    }
    for (const auto& o : outputs) CHECK(o == outputs.front());
}

TEST_CASE("projection of a 0/1 polytope has the projected vertices") {
    const std::vector<std::string> L{"1", "2", "3", "12", "13", "23", "123"};
    VertexSet cp3(7, L);
    for (auto& p : product_vertices(L, 3)) cp3.add(p);
    const auto h = facets_bruteforce(cp3);
    const auto proj = eliminate_many(TrackedSystem::track(h), {6, 3});
    VertexSet expected(5);
    for (const auto& p : cp3.vertices()) {
        BinaryPoint q{p[0], p[1], p[2], p[4], p[5]};
        if (!expected.contains(q)) expected.add(q);
    }
    CHECK(systems_equivalent(proj.system, facets_bruteforce(expected), expected));
}

TEST_CASE("certified redundancy removal matches the LP sweep") {
    const auto stacked = stacked_bell_wigner();
    const CoordinateIndex idx = build_multipartite({2, 2}).coordinates();
    std::vector<Subset> all = idx.subsets();
    all.push_back(0b11);
    const auto cert = enumerate_vertices(CoordinateIndex(all, 4));
    FmOptions c;
    c.redundancy = RedundancyMode::certified;
    c.certificate = &cert;
    const auto a = eliminate_many(TrackedSystem::track(stacked), {4}, c);
    const auto b = eliminate_many(TrackedSystem::track(stacked), {4});
    CHECK(row_set(a.system.rows) == row_set(b.system.rows));
    FmOptions missing;
    missing.redundancy = RedundancyMode::certified;
    CHECK_THROWS(eliminate_many(TrackedSystem::track(stacked), {4}, missing));
}

TEST_CASE("row guard") {
    FmOptions o;
    o.max_rows = 3;
    o.redundancy = RedundancyMode::none;
    CHECK_THROWS_AS(eliminate_many(TrackedSystem::track(stacked_bell_wigner()), {4}, o), GuardExceeded);
}

TEST_CASE("remove_redundant serial and parallel agree") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t dim = 0;
        const auto s = random_system(rng, dim);
        CHECK(row_set(remove_redundant(s, Execution::serial).rows) ==
              row_set(remove_redundant(s, Execution::parallel).rows));
    }
}
