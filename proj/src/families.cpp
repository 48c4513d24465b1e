#include "bellpoly/families.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "bellpoly/errors.hpp"

namespace bellpoly {

namespace {

// Slot 0 is the constant term b; slot 1 + j is -a_j, so an inequality reads
// ext[0] + Σ ext[1+j] m_j >= 0.
using Ext = std::vector<long>;

struct ExtHash {
    std::size_t operator()(const Ext& e) const {
        std::size_t h = 0;
        for (long v : e) h = h * 1000003u ^ static_cast<std::size_t>(v);
        return h;
    }
};

struct Generator {
    std::vector<std::size_t> perm;                         // ext slot -> ext slot
    std::vector<std::pair<std::size_t, std::size_t>> flip;  // (slot of S, slot of S\i)
};

class Group {
public:
    explicit Group(const Scenario& sc) : index_(sc.coordinates()) {
        if (sc.parties.empty()) throw std::invalid_argument("family canonicalization needs a party structure");
        const std::size_t n = sc.n;
        auto add_perm = [&](const std::vector<std::size_t>& obs_map) {
            Generator g;
            g.perm.resize(index_.size() + 1);
            g.perm[0] = 0;
            for (std::size_t j = 0; j < index_.size(); ++j) {
                Subset image = 0;
                for (auto m : members(index_.subset(j))) image |= Subset{1} << obs_map[m - 1];
                g.perm[j + 1] = slot(image);
            }
            gens_.push_back(std::move(g));
        };
        std::vector<std::size_t> id(n);
        for (std::size_t i = 0; i < n; ++i) id[i] = i;
        for (const auto& party : sc.parties) {
            for (std::size_t t = 0; t + 1 < party.size(); ++t) {
                auto m = id;
                std::swap(m[party[t]], m[party[t + 1]]);
                add_perm(m);
            }
        }
        for (std::size_t p = 0; p + 1 < sc.parties.size(); ++p) {
            for (std::size_t q = p + 1; q < sc.parties.size(); ++q) {
                if (sc.parties[p].size() != sc.parties[q].size()) continue;
                auto m = id;
                for (std::size_t t = 0; t < sc.parties[p].size(); ++t) std::swap(m[sc.parties[p][t]], m[sc.parties[q][t]]);
                add_perm(m);
                break;  // adjacent equal-arity swaps generate the rest
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            Generator g;
            const Subset b = Subset{1} << i;
            for (std::size_t j = 0; j < index_.size(); ++j) {
                const Subset s = index_.subset(j);
                if (s & b) g.flip.emplace_back(j + 1, slot(s & ~b));
            }
            gens_.push_back(std::move(g));
        }
    }

    std::size_t slot(Subset s) const {
        if (s == 0) return 0;
        if (!index_.contains(s)) throw std::invalid_argument("scenario contexts are not closed under the symmetry group");
        return index_.position(s) + 1;
    }

    const CoordinateIndex& index() const { return index_; }

    Ext apply(const Generator& g, const Ext& e) const {
        Ext out(e.size());
        if (!g.perm.empty()) {
            for (std::size_t k = 0; k < e.size(); ++k) out[g.perm[k]] = e[k];
            return out;
        }
        out = e;
        for (auto [from, to] : g.flip) {
            out[from] = -e[from];
            if (__builtin_add_overflow(out[to], e[from], &out[to])) throw GuardExceeded("family orbit: coefficient overflow");
        }
        return out;
    }

    std::vector<Ext> orbit(const Ext& start, std::size_t max_orbit) const {
        std::unordered_set<Ext, ExtHash> seen{start};
        std::deque<Ext> queue{start};
        while (!queue.empty()) {
            Ext cur = std::move(queue.front());
            queue.pop_front();
            for (const auto& g : gens_) {
                Ext next = apply(g, cur);
                if (seen.insert(next).second) {
                    if (seen.size() > max_orbit) throw GuardExceeded("family orbit exceeds the guard");
                    queue.push_back(std::move(next));
                }
            }
        }
        return {seen.begin(), seen.end()};
    }

private:
    CoordinateIndex index_;
    std::vector<Generator> gens_;
};

Ext to_ext(const LinearInequality& ineq, std::size_t dim) {
    if (ineq.dim() != dim) throw DimensionMismatch("inequality width does not match the scenario");
    const IntegerRow r = to_integer_row(ineq);
    Ext e(dim + 1);
    auto narrow = [](const mpz_class& z) {
        if (!z.fits_slong_p()) throw GuardExceeded("family orbit: coefficient too large");
        return z.get_si();
    };
    e[0] = narrow(r.bound);
    for (std::size_t j = 0; j < dim; ++j) e[j + 1] = -narrow(r.coeffs[j]);
    return e;
}

IntegerRow to_row(const Ext& e) {
    IntegerRow r;
    r.bound = e[0];
    r.coeffs.reserve(e.size() - 1);
    for (std::size_t j = 1; j < e.size(); ++j) r.coeffs.emplace_back(-e[j]);
    return r;
}

std::vector<IntegerRow> orbit_rows(const Group& g, const LinearInequality& ineq, std::size_t max_orbit) {
    std::vector<IntegerRow> rows;
    for (const auto& e : g.orbit(to_ext(ineq, g.index().size()), max_orbit)) rows.push_back(to_row(e));
    std::sort(rows.begin(), rows.end());
    return rows;
}

}  // namespace

std::vector<LinearInequality> family_orbit(const LinearInequality& ineq, const Scenario& sc, std::size_t max_orbit) {
    const Group g(sc);
    std::vector<LinearInequality> out;
    for (const auto& r : orbit_rows(g, ineq, max_orbit)) out.push_back(from_integer_row(r, "family orbit"));
    return out;
}

LinearInequality canonicalize_family(const LinearInequality& ineq, const Scenario& sc) {
    const Group g(sc);
    return from_integer_row(orbit_rows(g, ineq, 5'000'000).front(), ineq.provenance);
}

bool is_trivial_facet(const LinearInequality& ineq, const Scenario& sc) {
    const CoordinateIndex index = sc.coordinates();
    if (ineq.dim() != index.size()) throw DimensionMismatch("inequality width does not match the scenario");
    Subset support = 0;
    for (std::size_t j = 0; j < index.size(); ++j) {
        if (!ineq.coeffs[j].is_zero()) support |= index.subset(j);
    }
    // contexts are closed under subsets, so one context holds all terms iff
    // their union is a context
    return support == 0 || sc.is_context(support);
}

std::string family_signature(const LinearInequality& ineq, const Scenario& sc) {
    const CoordinateIndex index = sc.coordinates();
    if (ineq.dim() != index.size()) throw DimensionMismatch("inequality width does not match the scenario");
    if (sc.parties.empty()) throw std::invalid_argument("family signature needs a party structure");
    Subset used = 0;
    for (std::size_t j = 0; j < index.size(); ++j) {
        if (!ineq.coeffs[j].is_zero()) used |= index.subset(j);
    }
    std::vector<std::size_t> renumber(sc.n, sc.n);
    std::vector<std::size_t> arity;
    std::size_t next = 0;
    for (const auto& party : sc.parties) {
        std::size_t k = 0;
        for (auto o : party) {
            if (used & (Subset{1} << o)) {
                renumber[o] = next++;
                ++k;
            }
        }
        if (k) arity.push_back(k);
    }
    std::string head = "(";
    for (std::size_t i = 0; i < arity.size(); ++i) head += (i ? "," : "") + std::to_string(arity[i]);
    head += ")";
    if (arity.empty()) return head + " " + normalize(ineq).bound.to_string() + " >= 0";

    const Scenario sub = build_multipartite(arity);
    const CoordinateIndex sub_index = sub.coordinates();
    LinearInequality compact;
    compact.coeffs.assign(sub_index.size(), Rational(0));
    compact.bound = ineq.bound;
    for (std::size_t j = 0; j < index.size(); ++j) {
        if (ineq.coeffs[j].is_zero()) continue;
        Subset image = 0;
        for (auto m : members(index.subset(j))) image |= Subset{1} << renumber[m - 1];
        compact.coeffs[sub_index.position(image)] = ineq.coeffs[j];
    }
    return head + " " + format_inequality(canonicalize_family(compact, sub), sub_index.labels());
}

std::vector<Family> partition_families(const InequalitySystem& facets, const Scenario& sc) {
    const Group g(sc);
    const InequalitySystem canon = canonicalize(facets);
    std::map<IntegerRow, std::size_t> row_family;
    std::vector<Family> out;
    for (const auto& ineq : canon.rows) {
        const IntegerRow r = to_integer_row(ineq);
        if (row_family.count(r)) continue;
        const auto orbit = orbit_rows(g, ineq, 5'000'000);
        Family f;
        f.representative = from_integer_row(orbit.front(), "family representative");
        f.orbit_size = orbit.size();
        f.trivial = is_trivial_facet(f.representative, sc);
        f.signature = family_signature(f.representative, sc);
        const std::size_t id = out.size();
        for (const auto& o : orbit) row_family.emplace(o, id);
        out.push_back(std::move(f));
    }
    for (const auto& ineq : canon.rows) ++out[row_family.at(to_integer_row(ineq))].members;
    std::sort(out.begin(), out.end(), [](const Family& a, const Family& b) {
        return to_integer_row(a.representative) < to_integer_row(b.representative);
    });
    return out;
}

std::set<std::string> family_signatures(const InequalitySystem& facets, const Scenario& sc) {
    std::set<std::string> out;
    for (const auto& f : partition_families(facets, sc)) out.insert(f.signature);
    return out;
}

}  // namespace bellpoly
