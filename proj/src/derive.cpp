#include "bellpoly/derive.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "bellpoly/errors.hpp"

namespace bellpoly {

namespace {

Subset bit(std::size_t observable) { return Subset{1} << observable; }

// Nonempty subsets of `s`.
std::vector<Subset> nonempty_subsets(Subset s) {
    std::vector<Subset> out;
    for (Subset t = s; t != 0; t = (t - 1) & s) out.push_back(t);
    return out;
}

std::vector<Subset> block_subsets(const Scenario& sc, Subset pivot, std::size_t setting) {
    std::vector<Subset> out = nonempty_subsets(pivot);
    out.push_back(bit(setting));
    for (Subset t : nonempty_subsets(pivot)) {
        if (sc.is_context(t | bit(setting))) out.push_back(t | bit(setting));
    }
    return out;
}

// Replaces observable `from` by `to` in s.
Subset substitute(Subset s, std::size_t from, std::size_t to) {
    return (s & bit(from)) ? ((s & ~bit(from)) | bit(to)) : s;
}

}  // namespace

InequalitySystem base_block_hrep(const Scenario& sc, Subset pivot, std::size_t setting, const HullOptions& hull) {
    if (setting >= sc.n) throw std::invalid_argument("base_block_hrep: setting out of range");
    if (pivot == 0) throw std::invalid_argument("base_block_hrep: empty pivot");
    if (pivot & bit(setting)) throw std::invalid_argument("base_block_hrep: setting belongs to the pivot");
    if (!is_subset_of(pivot, (Subset{1} << sc.n) - 1)) throw std::invalid_argument("base_block_hrep: pivot out of range");
    // vertices live on the full numbering; only pivot ∪ {setting} varies
    const CoordinateIndex index(block_subsets(sc, pivot, setting), sc.n);
    const Subset support = pivot | bit(setting);
    VertexSet verts(index.size(), index.labels());
    for (Subset eps : nonempty_subsets(support)) {
        BinaryPoint p(index.size());
        for (std::size_t j = 0; j < index.size(); ++j) p[j] = is_subset_of(index.subset(j), eps) ? 1 : 0;
        verts.add(std::move(p));
    }
    verts.add(BinaryPoint(index.size(), 0));
    InequalitySystem h = hull_dd(verts, hull);
    h.labels = index.labels();
    return h;
}

Subset pivot_block(const Scenario& sc, std::size_t pivot_party) {
    if (sc.parties.size() < 2) throw std::invalid_argument("derive_tree: needs a scenario with at least two parties");
    Subset pivot = 0;
    if (sc.parties.size() == 2) {
        if (pivot_party > 1) throw std::invalid_argument("derive_tree: pivot party out of range");
        for (auto o : sc.parties[pivot_party]) pivot |= bit(o);
    } else {
        if (pivot_party != 0) {
            throw std::invalid_argument("derive_tree: with more than two parties the pivot is every party but the last");
        }
        for (std::size_t p = 0; p + 1 < sc.parties.size(); ++p) {
            for (auto o : sc.parties[p]) pivot |= bit(o);
        }
    }
    return pivot;
}

DeriveResult derive_tree(const Scenario& sc, std::size_t pivot_party, const DeriveOptions& options) {
    const Subset pivot = pivot_block(sc, pivot_party);
    std::vector<std::size_t> replicated;
    for (std::size_t o = 0; o < sc.n; ++o) {
        if (!(pivot & bit(o))) replicated.push_back(o);
    }
    // every context must be covered by some block
    for (Subset c : sc.contexts) {
        const Subset outside = c & ~pivot;
        if (subset_size(outside) > 1) {
            throw std::invalid_argument("derive_tree: context " + subset_label(c, sc.n) +
                                        " holds two observables outside the pivot");
        }
    }

    DeriveResult result;
    const std::size_t s0 = replicated.front();
    const InequalitySystem block = base_block_hrep(sc, pivot, s0, options.hull);
    result.block_rows = block.size();
    const CoordinateIndex block_index(block_subsets(sc, pivot, s0), sc.n);

    std::vector<Subset> work_subsets = nonempty_subsets(pivot);
    work_subsets.insert(work_subsets.end(), sc.contexts.begin(), sc.contexts.end());
    const CoordinateIndex work(work_subsets, sc.n);

    InequalitySystem stacked(work.size(), work.labels());
    for (std::size_t s : replicated) {
        for (std::size_t r = 0; r < block.size(); ++r) {
            LinearInequality row;
            row.coeffs.assign(work.size(), Rational(0));
            row.bound = block.rows[r].bound;
            bool touches_setting = false;
            for (std::size_t j = 0; j < block_index.size(); ++j) {
                if (block.rows[r].coeffs[j].is_zero()) continue;
                const Subset b = block_index.subset(j);
                touches_setting = touches_setting || (b & bit(s0));
                row.coeffs[work.position(substitute(b, s0, s))] = block.rows[r].coeffs[j];
            }
            // pivot-only rows are identical in every copy
            if (!touches_setting && s != s0) continue;
            row.provenance = touches_setting ? "block " + subset_label(bit(s), sc.n) + " row " + std::to_string(r + 1)
                                             : "pivot row " + std::to_string(r + 1);
            stacked.add(std::move(row));
        }
    }
    result.stacked = stacked;

    std::vector<std::size_t> vars;
    for (std::size_t j = 0; j < work.size(); ++j) {
        const Subset t = work.subset(j);
        if (is_subset_of(t, pivot) && subset_size(t) >= 2 && !sc.is_context(t)) vars.push_back(j);
    }
    for (auto v : vars) result.eliminated.push_back(work.labels()[v]);

    const VertexSet certificate = enumerate_vertices(work);
    FmOptions fm;
    fm.chernikov = options.chernikov;
    fm.exec = options.exec;
    fm.order = options.order;
    fm.redundancy = options.redundancy;
    fm.certificate = options.redundancy == RedundancyMode::certified ? &certificate : nullptr;
    fm.max_rows = options.max_rows;
    fm.on_step = [&](const StepStats& st) {
        result.steps.push_back(st);
        if (options.on_step) options.on_step(st);
    };
    TrackedSystem projected = eliminate_many(TrackedSystem::track(stacked), vars, fm);
    if (options.order == OrderStrategy::min_product) {
        result.eliminated.clear();
        for (const auto& st : result.steps) result.eliminated.push_back(st.variable);
    }

    const CoordinateIndex target = sc.coordinates();
    if (projected.system.labels != target.labels()) {
        throw std::logic_error("derive_tree: projected coordinates do not match the scenario");
    }
    const VertexSet verts = enumerate_vertices(target);
    const int dim_v = affine_dim(verts);
    InequalitySystem out(target.size(), target.labels());
    for (const auto& row : projected.system.rows) {
        switch (classify(row, verts, dim_v)) {
        case Classification::invalid:
            throw std::logic_error("derive_tree: derived row is violated by a scenario vertex");
        case Classification::valid_nonfacet:
            break;
        case Classification::facet:
            out.add(row);
            break;
        }
    }
    result.facets = canonicalize(out);
    return result;
}

}  // namespace bellpoly
