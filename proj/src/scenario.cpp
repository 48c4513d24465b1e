#include "bellpoly/scenario.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "bellpoly/errors.hpp"

namespace bellpoly {

std::vector<std::size_t> members(Subset s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; s != 0; ++i, s >>= 1) {
        if (s & 1u) out.push_back(i + 1);
    }
    return out;
}

bool coordinate_less(Subset a, Subset b) {
    const auto sa = subset_size(a);
    const auto sb = subset_size(b);
    if (sa != sb) return sa < sb;
    return members(a) < members(b);
}

std::string subset_label(Subset s, std::size_t n) {
    std::string out;
    for (auto m : members(s)) {
        if (n > 9 && !out.empty()) out += '.';
        out += std::to_string(m);
    }
    return out;
}

Subset parse_subset_label(const std::string& label, std::size_t n) {
    if (label.empty()) throw ParseError("empty subset label");
    std::vector<std::string> parts;
    if (n > 9) {
        std::stringstream ss(label);
        for (std::string p; std::getline(ss, p, '.');) parts.push_back(p);
    } else {
        for (char c : label) parts.emplace_back(1, c);
    }
    Subset s = 0;
    for (const auto& p : parts) {
        if (p.empty() || !std::all_of(p.begin(), p.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw ParseError("bad subset label '" + label + "'");
        }
        const std::size_t i = std::stoul(p);
        if (i < 1 || i > n) throw ParseError("subset label '" + label + "' names an observable out of range");
        const Subset bit = Subset{1} << (i - 1);
        if (s & bit) throw ParseError("subset label '" + label + "' repeats an observable");
        s |= bit;
    }
    return s;
}

CoordinateIndex::CoordinateIndex(std::vector<Subset> subsets, std::size_t n) : n_(n), order_(std::move(subsets)) {
    std::sort(order_.begin(), order_.end(), coordinate_less);
    order_.erase(std::unique(order_.begin(), order_.end()), order_.end());
    for (std::size_t i = 0; i < order_.size(); ++i) {
        if (order_[i] == 0) throw std::invalid_argument("CoordinateIndex: empty subset");
        pos_.emplace(order_[i], i);
    }
}

std::size_t CoordinateIndex::position(Subset s) const {
    auto it = pos_.find(s);
    if (it == pos_.end()) throw std::out_of_range("subset " + subset_label(s, n_) + " is not a coordinate");
    return it->second;
}

std::vector<std::string> CoordinateIndex::labels() const {
    std::vector<std::string> out;
    out.reserve(order_.size());
    for (auto s : order_) out.push_back(subset_label(s, n_));
    return out;
}

Scenario Scenario::make(std::size_t n, std::vector<Subset> contexts, std::vector<std::vector<std::size_t>> parties) {
    if (n == 0) throw std::invalid_argument("scenario needs at least one observable");
    if (n > kMaxObservables) throw GuardExceeded("scenario has more than " + std::to_string(kMaxObservables) + " observables");
    const Subset all = n == 32 ? ~Subset{0} : ((Subset{1} << n) - 1);
    for (auto c : contexts) {
        if (c == 0) throw std::invalid_argument("scenario context is empty");
        if (!is_subset_of(c, all)) throw std::invalid_argument("scenario context names an observable out of range");
    }
    for (std::size_t i = 0; i < n; ++i) contexts.push_back(Subset{1} << i);
    std::sort(contexts.begin(), contexts.end(), coordinate_less);
    contexts.erase(std::unique(contexts.begin(), contexts.end()), contexts.end());
    if (!parties.empty()) {
        std::vector<int> seen(n, 0);
        for (const auto& p : parties) {
            if (p.empty()) throw std::invalid_argument("party without settings");
            for (auto o : p) {
                if (o >= n) throw std::invalid_argument("party lists an observable out of range");
                ++seen[o];
            }
        }
        if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
            throw std::invalid_argument("parties must partition the observables");
        }
    }
    Scenario sc;
    sc.n = n;
    sc.contexts = std::move(contexts);
    sc.parties = std::move(parties);
    return sc;
}

bool Scenario::is_context(Subset s) const {
    return std::binary_search(contexts.begin(), contexts.end(), s, coordinate_less);
}

std::size_t Scenario::party_of(std::size_t observable) const {
    for (std::size_t p = 0; p < parties.size(); ++p) {
        if (std::find(parties[p].begin(), parties[p].end(), observable) != parties[p].end()) return p;
    }
    throw std::out_of_range("observable has no party");
}

Scenario build_multipartite(const std::vector<std::size_t>& settings_per_party) {
    if (settings_per_party.empty()) throw std::invalid_argument("build_multipartite: no parties");
    std::vector<std::vector<std::size_t>> parties;
    std::size_t n = 0;
    for (auto k : settings_per_party) {
        if (k == 0) throw std::invalid_argument("build_multipartite: a party has zero settings");
        std::vector<std::size_t> obs(k);
        for (std::size_t j = 0; j < k; ++j) obs[j] = n + j;
        n += k;
        parties.push_back(std::move(obs));
    }
    if (n > kMaxObservables) throw GuardExceeded("build_multipartite: too many observables");
    // choose at most one setting per party
    std::vector<Subset> contexts{0};
    for (const auto& p : parties) {
        const std::size_t existing = contexts.size();
        for (std::size_t c = 0; c < existing; ++c) {
            for (auto o : p) contexts.push_back(contexts[c] | (Subset{1} << o));
        }
    }
    contexts.erase(contexts.begin());
    return Scenario::make(n, std::move(contexts), std::move(parties));
}

VertexSet enumerate_vertices(const CoordinateIndex& index) {
    const std::size_t n = index.observables();
    if (n > kMaxObservables) throw GuardExceeded("enumerate_vertices: too many observables");
    VertexSet v(index.size(), index.labels());
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t eps = 0; eps < count; ++eps) {
        BinaryPoint p(index.size());
        for (std::size_t j = 0; j < index.size(); ++j) {
            const Subset s = index.subset(j);
            p[j] = (static_cast<Subset>(eps) & s) == s ? 1 : 0;
        }
        v.add(std::move(p));
    }
    return v;
}

VertexSet enumerate_vertices(const Scenario& sc) { return enumerate_vertices(sc.coordinates()); }

Scenario complete_scenario(std::size_t n) {
    if (n == 0 || n > kMaxObservables) throw GuardExceeded("complete_scenario: n out of range");
    std::vector<Subset> all;
    for (Subset s = 1; s < (Subset{1} << n); ++s) all.push_back(s);
    return Scenario::make(n, std::move(all));
}

InequalitySystem complete_polytope_hrep(std::size_t n, std::size_t guard) {
    if (n == 0) throw std::invalid_argument("complete_polytope_hrep: n must be positive");
    if (n > guard || n > kMaxObservables) {
        throw GuardExceeded("complete_polytope_hrep: n = " + std::to_string(n) + " exceeds the guard " +
                            std::to_string(guard));
    }
    const CoordinateIndex index = complete_scenario(n).coordinates();
    InequalitySystem sys(index.size(), index.labels());
    const Subset full = (Subset{1} << n) - 1;
    for (Subset support = 0; support <= full; ++support) {
        // h(eps) = sum over T ⊇ S of (-1)^{|T \ S|} p_T, with p_∅ = 1; stored as -h <= 0
        LinearInequality row;
        row.coeffs.assign(index.size(), Rational(0));
        row.bound = support == 0 ? 1 : 0;
        const Subset rest = full & ~support;
        for (Subset extra = rest;; extra = (extra - 1) & rest) {
            const Subset t = support | extra;
            if (t != 0) row.coeffs[index.position(t)] = (subset_size(extra) % 2 == 0) ? -1 : 1;
            if (extra == 0) break;
        }
        std::string eps;
        for (std::size_t i = 0; i < n; ++i) eps += (support >> i & 1u) ? '1' : '0';
        row.provenance = "h(" + eps + ") >= 0";
        sys.add(std::move(row));
    }
    return sys;
}

Scenario read_scenario(std::istream& is) {
    std::size_t n = 0;
    bool have_header = false;
    std::vector<std::size_t> party_sizes;
    std::vector<Subset> contexts;
    std::size_t line_no = 0;
    for (std::string line; std::getline(is, line);) {
        ++line_no;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        const std::string where = "scenario line " + std::to_string(line_no) + ": ";
        auto to_count = [&](const std::string& t) -> std::size_t {
            if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                throw ParseError(where + "expected a positive integer, got '" + t + "'");
            }
            return std::stoul(t);
        };
        if (!have_header) {
            if (tok.size() != 2 || tok[0] != "SCENARIO") throw ParseError(where + "expected 'SCENARIO n'");
            n = to_count(tok[1]);
            if (n == 0 || n > kMaxObservables) throw ParseError(where + "observable count out of range");
            have_header = true;
            continue;
        }
        if (tok[0] == "PARTIES") {
            for (std::size_t i = 1; i < tok.size(); ++i) party_sizes.push_back(to_count(tok[i]));
            continue;
        }
        Subset s = 0;
        for (const auto& t : tok) {
            const std::size_t i = to_count(t);
            if (i < 1 || i > n) throw ParseError(where + "observable " + t + " out of range");
            s |= Subset{1} << (i - 1);
        }
        contexts.push_back(s);
    }
    if (!have_header) throw ParseError("missing SCENARIO header");
    std::vector<std::vector<std::size_t>> parties;
    std::size_t next = 0;
    for (auto k : party_sizes) {
        std::vector<std::size_t> p;
        for (std::size_t j = 0; j < k; ++j) p.push_back(next++);
        parties.push_back(std::move(p));
    }
    if (!parties.empty() && next != n) throw ParseError("PARTIES sizes do not add up to n");
    try {
        return Scenario::make(n, std::move(contexts), std::move(parties));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

void write_scenario(std::ostream& os, const Scenario& sc) {
    os << "SCENARIO " << sc.n << '\n';
    if (!sc.parties.empty()) {
        os << "PARTIES";
        for (const auto& p : sc.parties) os << ' ' << p.size();
        os << '\n';
    }
    for (auto c : sc.contexts) {
        const auto m = members(c);
        for (std::size_t i = 0; i < m.size(); ++i) os << (i ? " " : "") << m[i];
        os << '\n';
    }
}

}  // namespace bellpoly
