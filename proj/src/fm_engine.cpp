#include "bellpoly/fm_engine.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include <omp.h>

#include "bellpoly/errors.hpp"

namespace bellpoly {

TrackedSystem TrackedSystem::track(InequalitySystem s) {
    TrackedSystem t;
    t.ancestry.reserve(s.rows.size());
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        Ancestry a(s.rows.size());
        a.set(i);
        t.ancestry.push_back(std::move(a));
    }
    t.system = std::move(s);
    return t;
}

namespace {

using Bits = boost::dynamic_bitset<>;

struct WorkRow {
    IntegerRow row;
    Ancestry anc;
    Bits sat;  // tight vertices, certified mode only
    bool facet = false;  // certified mode: already known to be a facet
};

struct WorkState {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<std::size_t> origin;  // input position of each current column
    std::vector<WorkRow> rows;
    std::size_t steps = 0;
    std::size_t tracked_rows = 0;
    std::vector<std::string> provenance;  // of the originally tracked rows
    bool certified = false;
    bool chernikov_sound = true;
    std::vector<BinaryPoint> verts;
};

bool is_tautology(const IntegerRow& r) {
    return r.bound >= 0 && std::all_of(r.coeffs.begin(), r.coeffs.end(), [](const mpz_class& c) { return c == 0; });
}

void reduce(IntegerRow& r) {
    mpz_class g = r.bound;
    for (const auto& c : r.coeffs) {
        if (g == 1) break;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    g = abs(g);
    if (g > 1) {
        for (auto& c : r.coeffs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(r.bound.get_mpz_t(), r.bound.get_mpz_t(), g.get_mpz_t());
    }
}

Bits tight_set(const IntegerRow& r, const std::vector<BinaryPoint>& verts) {
    Bits sat(verts.size());
    mpz_class lhs;
    for (std::size_t v = 0; v < verts.size(); ++v) {
        lhs = 0;
        for (std::size_t j = 0; j < verts[v].size(); ++j) {
            if (verts[v][j]) lhs += r.coeffs[j];
        }
        if (lhs > r.bound) throw std::logic_error("certificate vertex violates an input row");
        if (lhs == r.bound) sat.set(v);
    }
    return sat;
}

// Affine rank of the tight vertices equals dim-1, where dim counts the
// vertex columns other than `skip`.
bool spans_facet(const Bits& sat, const std::vector<BinaryPoint>& verts, std::size_t dim,
                 std::size_t skip = static_cast<std::size_t>(-1)) {
    if (dim == 0) return false;
    if (sat.count() < dim) return false;
    const std::size_t width = verts.empty() ? 0 : verts.front().size();
    std::vector<std::vector<long>> diffs;
    diffs.reserve(sat.count());
    const std::size_t first = sat.find_first();
    for (std::size_t v = sat.find_next(first); v != Bits::npos; v = sat.find_next(v)) {
        std::vector<long> d;
        d.reserve(dim);
        for (std::size_t j = 0; j < width; ++j) {
            if (j != skip) d.push_back(static_cast<long>(verts[v][j]) - verts[first][j]);
        }
        diffs.push_back(std::move(d));
    }
    return detail::rank_small(diffs, dim, dim - 1) == dim - 1;
}

bool ancestry_less(const Ancestry& a, const Ancestry& b) {
    const auto ca = a.count();
    const auto cb = b.count();
    if (ca != cb) return ca < cb;
    return a < b;
}

// Sort by row, keep one copy per row with the smallest ancestry.
void dedupe(std::vector<WorkRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const WorkRow& a, const WorkRow& b) {
        if (auto c = a.row <=> b.row; c != 0) return c < 0;
        return ancestry_less(a.anc, b.anc);
    });
    rows.erase(std::unique(rows.begin(), rows.end(), [](const WorkRow& a, const WorkRow& b) { return a.row == b.row; }),
               rows.end());
}

WorkState make_state(const TrackedSystem& s, const FmOptions& options) {
    WorkState w;
    w.dim = s.system.dim;
    w.labels = s.system.labels;
    w.origin.resize(w.dim);
    std::iota(w.origin.begin(), w.origin.end(), std::size_t{0});
    w.steps = s.steps_done;
    w.chernikov_sound = s.chernikov_sound;
    if (s.ancestry.size() != s.system.rows.size()) throw std::invalid_argument("TrackedSystem: ancestry size mismatch");
    w.tracked_rows = s.ancestry.empty() ? 0 : s.ancestry.front().size();
    w.provenance.assign(w.tracked_rows, std::string{});
    for (std::size_t i = 0; i < s.system.rows.size(); ++i) {
        const auto& r = s.system.rows[i];
        if (r.dim() != w.dim) throw DimensionMismatch("TrackedSystem: row width differs from dim");
        if (s.ancestry[i].count() == 1 && !r.provenance.empty()) w.provenance[s.ancestry[i].find_first()] = r.provenance;
        w.rows.push_back({to_integer_row(r), s.ancestry[i], {}});
    }
    if (options.redundancy == RedundancyMode::certified) {
        if (options.certificate == nullptr) throw std::invalid_argument("certified redundancy needs a vertex set");
        if (options.certificate->dim() != w.dim) throw DimensionMismatch("certificate dimension differs from system");
        w.certified = true;
        w.verts = options.certificate->vertices();
        if (affine_dim(w.verts) != static_cast<int>(w.dim)) {
            throw NotFullDimensional("certified redundancy needs a full-dimensional vertex set");
        }
        for (auto& r : w.rows) r.sat = tight_set(r.row, w.verts);
    }
    return w;
}

std::string provenance_of(const WorkState& w, const Ancestry& anc) {
    if (anc.count() == 1) {
        const auto i = anc.find_first();
        return w.provenance[i].empty() ? "row #" + std::to_string(i + 1) : w.provenance[i];
    }
    std::string out = "FM combination of ";
    bool first = true;
    for (auto i = anc.find_first(); i != Ancestry::npos; i = anc.find_next(i)) {
        out += (first ? "#" : "+#") + std::to_string(i + 1);
        first = false;
    }
    return out;
}

TrackedSystem to_tracked(const WorkState& w) {
    TrackedSystem t;
    t.system = InequalitySystem(w.dim, w.labels);
    t.steps_done = w.steps;
    t.chernikov_sound = w.chernikov_sound;
    std::vector<const WorkRow*> order;
    for (const auto& r : w.rows) order.push_back(&r);
    std::sort(order.begin(), order.end(), [](const WorkRow* a, const WorkRow* b) { return a->row < b->row; });
    for (const WorkRow* r : order) {
        t.system.rows.push_back(from_integer_row(r->row, provenance_of(w, r->anc)));
        t.ancestry.push_back(r->anc);
    }
    return t;
}

std::string column_name(const WorkState& w, std::size_t col) {
    return col < w.labels.size() ? w.labels[col] : std::to_string(w.origin[col] + 1);
}

// Combines every (+,-) pair on `col`; the returned rows still carry `col`
// (with coefficient 0) and are neither deduplicated nor sorted.
std::vector<WorkRow> combine_pairs(const WorkState& w, std::size_t col, const std::vector<std::size_t>& pos,
                                   const std::vector<std::size_t>& neg, bool chernikov, Execution exec,
                                   std::size_t& skipped) {
    // Chernikov: after this step (w.steps + 1 eliminations) a row combined
    // from more than w.steps + 2 tracked rows is redundant.
    const std::size_t ancestry_limit = w.steps + 2;
    const std::size_t need_tight = w.dim - 1;
    const int threads = exec == Execution::parallel ? omp_get_max_threads() : 1;
    std::vector<std::vector<WorkRow>> local(static_cast<std::size_t>(threads));
    std::vector<std::size_t> local_skipped(static_cast<std::size_t>(threads), 0);

    auto combine_one = [&](std::size_t pi, std::vector<WorkRow>& out, std::size_t& skip) {
        const WorkRow& p = w.rows[pos[pi]];
        const mpz_class& cp = p.row.coeffs[col];
        mpz_class g, mp, mn;
        for (std::size_t ni : neg) {
            const WorkRow& n = w.rows[ni];
            Bits sat;
            if (w.certified) {
                sat = p.sat & n.sat;
                if (sat.count() < need_tight) {
                    ++skip;
                    continue;
                }
            }
            Ancestry anc = p.anc | n.anc;
            if (chernikov && anc.count() > ancestry_limit) {
                ++skip;
                continue;
            }
            // the combination has a zero on `col`, so its facet test can run
            // in the projected space before the row is built
            if (w.certified && !spans_facet(sat, w.verts, w.dim - 1, col)) {
                ++skip;
                continue;
            }
            const mpz_class& cn = n.row.coeffs[col];  // negative
            mpz_gcd(g.get_mpz_t(), cp.get_mpz_t(), cn.get_mpz_t());
            mp = -cn / g;
            mn = cp / g;
            WorkRow r;
            r.row.coeffs.resize(w.dim);
            for (std::size_t j = 0; j < w.dim; ++j) {
                if (j == col) continue;
                r.row.coeffs[j] = mp * p.row.coeffs[j] + mn * n.row.coeffs[j];
            }
            r.row.bound = mp * p.row.bound + mn * n.row.bound;
            reduce(r.row);
            if (is_tautology(r.row)) continue;
            r.anc = std::move(anc);
            r.sat = std::move(sat);
            r.facet = w.certified;
            out.push_back(std::move(r));
        }
    };

    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::size_t pi = 0; pi < pos.size(); ++pi) {
            const auto t = static_cast<std::size_t>(omp_get_thread_num());
            combine_one(pi, local[t], local_skipped[t]);
        }
    } else {
        for (std::size_t pi = 0; pi < pos.size(); ++pi) combine_one(pi, local[0], local_skipped[0]);
    }

    std::vector<WorkRow> out;
    std::size_t total = 0;
    for (const auto& l : local) total += l.size();
    out.reserve(total);
    for (auto& l : local) std::move(l.begin(), l.end(), std::back_inserter(out));
    skipped = std::accumulate(local_skipped.begin(), local_skipped.end(), std::size_t{0});
    return out;
}

void drop_column(IntegerRow& r, std::size_t col) { r.coeffs.erase(r.coeffs.begin() + static_cast<std::ptrdiff_t>(col)); }

std::vector<std::size_t> certified_keep(const WorkState& w, Execution exec) {
    std::vector<char> keep(w.rows.size(), 0);
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::size_t i = 0; i < w.rows.size(); ++i) keep[i] = w.rows[i].facet || spans_facet(w.rows[i].sat, w.verts, w.dim);
    } else {
        for (std::size_t i = 0; i < w.rows.size(); ++i) keep[i] = w.rows[i].facet || spans_facet(w.rows[i].sat, w.verts, w.dim);
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i]) out.push_back(i);
    }
    return out;
}

void apply_redundancy(WorkState& w, RedundancyMode mode, Execution exec) {
    std::vector<std::size_t> keep;
    switch (mode) {
        case RedundancyMode::none: return;
        case RedundancyMode::certified: keep = certified_keep(w, exec); break;
        case RedundancyMode::lp: {
            std::vector<IntegerRow> rows;
            rows.reserve(w.rows.size());
            for (const auto& r : w.rows) rows.push_back(r.row);
            keep = detail::remove_redundant_rows(rows, w.dim, exec);
            break;
        }
    }
    // dropping input rows before any combination just shrinks the base system
    if (keep.size() < w.rows.size() && w.steps > 0) w.chernikov_sound = false;
    std::vector<WorkRow> kept;
    kept.reserve(keep.size());
    for (auto i : keep) kept.push_back(std::move(w.rows[i]));
    w.rows = std::move(kept);
}

StepStats step(WorkState& w, std::size_t col, const FmOptions& options) {
    StepStats stats;
    stats.variable = column_name(w, col);
    std::vector<std::size_t> pos, neg;
    std::vector<WorkRow> next;
    for (std::size_t i = 0; i < w.rows.size(); ++i) {
        const int s = sgn(w.rows[i].row.coeffs[col]);
        if (s > 0) pos.push_back(i);
        else if (s < 0) neg.push_back(i);
    }
    stats.positive = pos.size();
    stats.negative = neg.size();
    stats.zero = w.rows.size() - pos.size() - neg.size();

    std::size_t skipped = 0;
    next = combine_pairs(w, col, pos, neg, options.chernikov && w.chernikov_sound, options.exec, skipped);
    stats.pairs_skipped = skipped;
    for (auto& r : w.rows) {
        if (sgn(r.row.coeffs[col]) == 0) {
            r.facet = false;  // a facet before projecting need not stay one
            next.push_back(std::move(r));
        }
    }
    for (auto& r : next) drop_column(r.row, col);
    std::erase_if(next, [](const WorkRow& r) { return is_tautology(r.row); });
    dedupe(next);
    if (options.max_rows != 0 && next.size() > options.max_rows) {
        throw GuardExceeded("elimination step produced " + std::to_string(next.size()) + " rows (guard " +
                            std::to_string(options.max_rows) + ")");
    }

    w.rows = std::move(next);
    w.dim -= 1;
    if (!w.labels.empty()) w.labels.erase(w.labels.begin() + static_cast<std::ptrdiff_t>(col));
    w.origin.erase(w.origin.begin() + static_cast<std::ptrdiff_t>(col));
    if (w.certified) {
        for (auto& v : w.verts) v.erase(v.begin() + static_cast<std::ptrdiff_t>(col));
    }
    w.steps += 1;
    stats.combined = w.rows.size();
    return stats;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TrackedSystem eliminate_one(const TrackedSystem& s, std::size_t var, const FmOptions& options) {
    if (var >= s.system.dim) throw std::out_of_range("eliminate_one: variable position out of range");
    FmOptions opts = options;
    opts.redundancy = RedundancyMode::none;
    WorkState w = make_state(s, opts);
    const auto t0 = std::chrono::steady_clock::now();
    StepStats stats = step(w, var, opts);
    stats.kept = w.rows.size();
    stats.seconds = seconds_since(t0);
    if (opts.on_step) opts.on_step(stats);
    return to_tracked(w);
}

TrackedSystem eliminate_many(const TrackedSystem& s, const std::vector<std::size_t>& vars, const FmOptions& options) {
    WorkState w = make_state(s, options);
    for (auto v : vars) {
        if (v >= s.system.dim) throw std::out_of_range("eliminate_many: variable position out of range");
    }
    std::vector<std::size_t> pending = vars;
    std::sort(pending.begin(), pending.end());
    pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    if (options.order == OrderStrategy::given) {
        pending.clear();
        for (auto v : vars) {
            if (std::find(pending.begin(), pending.end(), v) == pending.end()) pending.push_back(v);
        }
    }
    apply_redundancy(w, options.redundancy, options.exec);

    while (!pending.empty()) {
        // current column of each pending input position
        auto current_col = [&](std::size_t input_pos) {
            return static_cast<std::size_t>(std::find(w.origin.begin(), w.origin.end(), input_pos) - w.origin.begin());
        };
        std::size_t pick = 0;
        if (options.order == OrderStrategy::min_product) {
            mpz_class best = -1;
            for (std::size_t k = 0; k < pending.size(); ++k) {
                const std::size_t col = current_col(pending[k]);
                std::size_t p = 0, n = 0;
                for (const auto& r : w.rows) {
                    const int sg = sgn(r.row.coeffs[col]);
                    p += sg > 0;
                    n += sg < 0;
                }
                const mpz_class product = mpz_class(static_cast<unsigned long>(p)) * static_cast<unsigned long>(n);
                if (best < 0 || product < best) {
                    best = product;
                    pick = k;
                }
            }
        }
        const std::size_t col = current_col(pending[pick]);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));

        const auto t0 = std::chrono::steady_clock::now();
        StepStats stats = step(w, col, options);
        apply_redundancy(w, options.redundancy, options.exec);
        stats.kept = w.rows.size();
        stats.seconds = seconds_since(t0);
        if (options.on_step) options.on_step(stats);
    }
    return to_tracked(w);
}

namespace detail {

std::vector<std::size_t> remove_redundant_rows(const std::vector<IntegerRow>& rows, std::size_t dim, Execution exec) {
    const std::size_t m = rows.size();
    std::vector<char> candidate(m, 1);
    if (exec == Execution::parallel) {
        std::vector<std::size_t> all(m);
        std::iota(all.begin(), all.end(), std::size_t{0});
        // a row irredundant in the full system stays irredundant in every subsystem
#pragma omp parallel for schedule(dynamic, 1)
        for (std::size_t i = 0; i < m; ++i) candidate[i] = is_redundant_row(rows, dim, i, all);
    }
    std::vector<char> alive(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        if (!candidate[i]) continue;
        std::vector<std::size_t> active;
        active.reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            if (alive[j]) active.push_back(j);
        }
        if (is_redundant_row(rows, dim, i, active)) alive[i] = 0;
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < m; ++i) {
        if (alive[i]) keep.push_back(i);
    }
    return keep;
}

}  // namespace detail

InequalitySystem remove_redundant(const InequalitySystem& s, Execution exec) {
    const InequalitySystem canon = canonicalize(s);
    std::vector<IntegerRow> rows;
    rows.reserve(canon.rows.size());
    for (const auto& r : canon.rows) rows.push_back(to_integer_row(r));
    InequalitySystem out(canon.dim, canon.labels);
    for (auto i : detail::remove_redundant_rows(rows, canon.dim, exec)) out.rows.push_back(canon.rows[i]);
    return out;
}

}  // namespace bellpoly
