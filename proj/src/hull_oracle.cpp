#include "bellpoly/hull_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>

#include <omp.h>

#include "bellpoly/errors.hpp"
#include "bellpoly/lp.hpp"

namespace bellpoly {

namespace {

using Bits = boost::dynamic_bitset<>;

bool past(const std::optional<std::chrono::steady_clock::time_point>& deadline) {
    return deadline && std::chrono::steady_clock::now() > *deadline;
}

// Incrementally grown row echelon basis over Q with undo.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

    bool try_add(std::vector<mpq_class> v) {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const std::size_t c = pivots_[k];
            if (sgn(v[c]) == 0) continue;
            const mpq_class f = v[c];
            for (std::size_t j = c; j < dim_; ++j) {
                if (sgn(rows_[k][j]) != 0) v[j] -= f * rows_[k][j];
            }
        }
        std::size_t c = 0;
        while (c < dim_ && sgn(v[c]) == 0) ++c;
        if (c == dim_) return false;
        const mpq_class inv = 1 / v[c];
        for (std::size_t j = c; j < dim_; ++j) v[j] *= inv;
        rows_.push_back(std::move(v));
        pivots_.push_back(c);
        return true;
    }
    void pop() {
        rows_.pop_back();
        pivots_.pop_back();
    }
    std::size_t size() const { return rows_.size(); }

private:
    std::size_t dim_;
    std::vector<std::vector<mpq_class>> rows_;
    std::vector<std::size_t> pivots_;
};

// C(n, k), saturating at limit + 1
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t limit) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    long double acc = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (acc > static_cast<long double>(limit)) return limit + 1;
    }
    return static_cast<std::size_t>(acc + 0.5L);
}

IntegerVector primitive(IntegerVector v) {
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1) {
        for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
    return v;
}

// Hyperplane a·x = b through d affinely independent 0/1 points; returns the
// facet row when all vertices lie weakly on one side.
std::optional<IntegerRow> supporting_row(const VertexSet& v, const std::vector<std::size_t>& subset) {
    const std::size_t d = v.dim();
    RationalMatrix m(subset.size(), d + 1);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) m(i, j) = v[subset[i]][j];
        m(i, d) = -1;
    }
    const RationalVector zero(subset.size());
    const auto sol = solve_linear(m, zero);
    const auto* inf = std::get_if<InfiniteSolutions>(&sol);
    if (inf == nullptr || inf->nullspace.size() != 1) return std::nullopt;
    IntegerVector n = primitive(detail::clear_denominators(inf->nullspace.front()));
    IntegerRow row;
    row.coeffs.assign(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(d));
    row.bound = n[d];
    int side = 0;
    mpz_class lhs;
    for (const auto& u : v.vertices()) {
        lhs = 0;
        for (std::size_t j = 0; j < d; ++j) {
            if (u[j]) lhs += row.coeffs[j];
        }
        const int s = cmp(lhs, row.bound);
        if (s == 0) continue;
        if (side == 0) side = s;
        else if (s != side) return std::nullopt;
    }
    if (side > 0) {
        for (auto& c : row.coeffs) c = -c;
        row.bound = -row.bound;
    }
    return row;
}

}  // namespace

InequalitySystem facets_bruteforce(const VertexSet& v, const HullOptions& options) {
    const std::size_t d = v.dim();
    const std::size_t n = v.size();
    if (affine_dim(v) != static_cast<int>(d)) throw NotFullDimensional("facets_bruteforce: vertex set is not full-dimensional");
    if (binomial_capped(n, d, options.subset_guard) > options.subset_guard) {
        throw GuardExceeded("facets_bruteforce: C(" + std::to_string(n) + ", " + std::to_string(d) +
                            ") exceeds the subset guard " + std::to_string(options.subset_guard));
    }

    auto diff = [&](std::size_t i, std::size_t base) {
        std::vector<mpq_class> out(d);
        for (std::size_t j = 0; j < d; ++j) out[j] = static_cast<long>(v[i][j]) - static_cast<long>(v[base][j]);
        return out;
    };

    const int threads = options.exec == Execution::parallel ? omp_get_max_threads() : 1;
    std::vector<std::set<IntegerRow>> found(static_cast<std::size_t>(threads));

    auto search_from = [&](std::size_t first, std::set<IntegerRow>& out) {
        EchelonBasis basis(d);
        std::vector<std::size_t> subset{first};
        // depth-first over increasing indices, pruning affinely dependent prefixes
        auto dfs = [&](auto&& self, std::size_t next) -> void {
            if (subset.size() == d) {
                if (auto row = supporting_row(v, subset)) out.insert(std::move(*row));
                return;
            }
            const std::size_t still_needed = d - subset.size();
            for (std::size_t i = next; i + still_needed <= n; ++i) {
                if (!basis.try_add(diff(i, first))) continue;
                subset.push_back(i);
                self(self, i + 1);
                subset.pop_back();
                basis.pop();
            }
        };
        dfs(dfs, first + 1);
    };

    if (d == 0) {
        return InequalitySystem(0, v.labels());
    }
    if (options.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::size_t first = 0; first < n; ++first) {
            search_from(first, found[static_cast<std::size_t>(omp_get_thread_num())]);
        }
    } else {
        for (std::size_t first = 0; first < n; ++first) search_from(first, found[0]);
    }

    std::set<IntegerRow> all;
    for (auto& f : found) all.insert(f.begin(), f.end());
    InequalitySystem out(d, v.labels());
    for (const auto& r : all) out.rows.push_back(from_integer_row(r, "hull facet"));
    return out;
}

namespace detail {

namespace {

struct Ray {
    IntegerVector y;
    Bits zero;  // processed constraints tight at y
};

mpz_class eval(const IntegerVector& g, const IntegerVector& y) {
    mpz_class acc;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] != 0 && y[i] != 0) acc += g[i] * y[i];
    }
    return acc;
}

}  // namespace

std::optional<std::vector<IntegerVector>> extreme_rays(const std::vector<IntegerVector>& constraints, std::size_t dim,
                                                       const HullOptions& options) {
    const std::size_t m = constraints.size();
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    if (options.order == DdOrder::lex_min) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return constraints[a] < constraints[b]; });
    }

    // initial simplicial cone from the first dim independent constraints
    EchelonBasis basis(dim);
    std::vector<std::size_t> initial;
    for (std::size_t idx : order) {
        std::vector<mpq_class> g(dim);
        for (std::size_t j = 0; j < dim; ++j) g[j] = constraints[idx][j];
        if (basis.try_add(std::move(g))) initial.push_back(idx);
        if (initial.size() == dim) break;
    }
    if (initial.size() < dim) return std::nullopt;

    RationalMatrix g0(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g0(i, j) = Rational(constraints[initial[i]][j]);
    const RationalMatrix inv = invert(g0);
    std::vector<Ray> rays;
    for (std::size_t c = 0; c < dim; ++c) {
        RationalVector col(dim);
        for (std::size_t i = 0; i < dim; ++i) col[i] = inv(i, c);
        Ray r{primitive(clear_denominators(col)), Bits(m)};
        for (std::size_t i = 0; i < dim; ++i) {
            if (i != c) r.zero.set(initial[i]);
        }
        rays.push_back(std::move(r));
    }

    std::vector<char> done(m, 0);
    for (auto i : initial) done[i] = 1;
    std::vector<std::size_t> remaining;
    for (auto idx : order) {
        if (!done[idx]) remaining.push_back(idx);
    }

    const bool parallel = options.exec == Execution::parallel;
    while (!remaining.empty()) {
        if (past(options.deadline)) throw GuardExceeded("double description: deadline exceeded");
        std::size_t pick = 0;
        if (options.order == DdOrder::min_cutoff) {
            std::vector<std::size_t> cutoff(remaining.size(), 0);
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
            for (std::size_t k = 0; k < remaining.size(); ++k) {
                std::size_t count = 0;
                for (const auto& r : rays) count += sgn(eval(constraints[remaining[k]], r.y)) < 0;
                cutoff[k] = count;
            }
            pick = static_cast<std::size_t>(std::min_element(cutoff.begin(), cutoff.end()) - cutoff.begin());
        }
        const std::size_t ci = remaining[pick];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
        const IntegerVector& g = constraints[ci];

        std::vector<mpz_class> s(rays.size());
#pragma omp parallel for schedule(static) if (parallel)
        for (std::size_t r = 0; r < rays.size(); ++r) s[r] = eval(g, rays[r].y);

        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            const int sg = sgn(s[r]);
            if (sg > 0) pos.push_back(r);
            else if (sg < 0) neg.push_back(r);
            else rays[r].zero.set(ci);
        }
        if (neg.empty()) continue;

        const int threads = parallel ? omp_get_max_threads() : 1;
        std::vector<std::vector<Ray>> fresh(static_cast<std::size_t>(threads));
        std::atomic<bool> timed_out{false};
        auto combine = [&](std::size_t pi, std::vector<Ray>& out) {
            const Ray& p = rays[pos[pi]];
            for (std::size_t ni = 0; ni < neg.size(); ++ni) {
                const Ray& q = rays[neg[ni]];
                Bits z = p.zero & q.zero;
                if (z.count() + 2 < dim) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == pos[pi] || r == neg[ni]) continue;
                    if (z.is_subset_of(rays[r].zero)) adjacent = false;
                }
                if (!adjacent) continue;
                IntegerVector y(dim);
                const mpz_class& sp = s[pos[pi]];
                const mpz_class& sn = s[neg[ni]];
                for (std::size_t j = 0; j < dim; ++j) y[j] = sp * q.y[j] - sn * p.y[j];
                z.set(ci);
                out.push_back({primitive(std::move(y)), std::move(z)});
            }
            if ((pi & 15) == 0 && past(options.deadline)) timed_out = true;
        };
        if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
            for (std::size_t pi = 0; pi < pos.size(); ++pi) {
                if (!timed_out) combine(pi, fresh[static_cast<std::size_t>(omp_get_thread_num())]);
            }
        } else {
            for (std::size_t pi = 0; pi < pos.size() && !timed_out; ++pi) combine(pi, fresh[0]);
        }
        if (timed_out) throw GuardExceeded("double description: deadline exceeded");

        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (sgn(s[r]) >= 0) next.push_back(std::move(rays[r]));
        }
        for (auto& f : fresh) std::move(f.begin(), f.end(), std::back_inserter(next));
        std::sort(next.begin(), next.end(), [](const Ray& a, const Ray& b) { return a.y < b.y; });
        rays = std::move(next);
        if (options.max_rays != 0 && rays.size() > options.max_rays) {
            throw GuardExceeded("double description: " + std::to_string(rays.size()) + " rays exceed the guard " +
                                std::to_string(options.max_rays));
        }
    }

    std::vector<IntegerVector> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.y));
    return out;
}

}  // namespace detail

InequalitySystem hull_dd(const VertexSet& v, const HullOptions& options) {
    if (v.empty()) throw std::invalid_argument("hull_dd: empty vertex set");
    const std::size_t d = v.dim();
    // polar cone over (a, b): b - a·u >= 0 for every vertex u
    std::vector<IntegerVector> constraints;
    constraints.reserve(v.size());
    for (const auto& u : v.vertices()) {
        IntegerVector g(d + 1);
        for (std::size_t j = 0; j < d; ++j) g[j] = -static_cast<long>(u[j]);
        g[d] = 1;
        constraints.push_back(std::move(g));
    }
    auto rays = detail::extreme_rays(constraints, d + 1, options);
    if (!rays) throw NotFullDimensional("hull_dd: vertex set is not full-dimensional");
    InequalitySystem out(d, v.labels());
    for (auto& y : *rays) {
        IntegerRow row;
        row.bound = y[d];
        y.pop_back();
        row.coeffs = std::move(y);
        out.rows.push_back(from_integer_row(row, "hull facet"));
    }
    return canonicalize(out);
}

namespace {

std::string format_point(const std::vector<mpq_class>& x) {
    std::string out;
    for (std::size_t k = 0; k < x.size(); ++k) out += (k ? " " : "") + Rational(x[k]).to_string();
    return out;
}

mpq_class row_value(const IntegerRow& r, const std::vector<mpq_class>& x) {
    mpq_class v = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (sgn(r.coeffs[j]) != 0 && sgn(x[j]) != 0) v += mpq_class(r.coeffs[j]) * x[j];
    }
    return v;
}

template <class Direction>
mpq_class row_slope(const IntegerRow& r, const Direction& y) {
    mpq_class v = 0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (sgn(r.coeffs[j]) != 0 && sgn(y[j]) != 0) v += mpq_class(r.coeffs[j]) * y[j];
    }
    return v;
}

// Largest step t with x + t y feasible; nullopt when no row bounds it.
template <class Direction>
std::optional<mpq_class> ratio_test(const std::vector<IntegerRow>& rows, const std::vector<mpq_class>& x,
                                    const Direction& y) {
    std::optional<mpq_class> best;
    for (const auto& r : rows) {
        const mpq_class slope = row_slope(r, y);
        if (sgn(slope) <= 0) continue;
        mpq_class t = (mpq_class(r.bound) - row_value(r, x)) / slope;
        if (!best || t < *best) best = std::move(t);
    }
    return best;
}

// Walks from a feasible point to a vertex, adding one independent tight row
// per move. With an objective, no move decreases it.
std::vector<mpq_class> move_to_vertex(const std::vector<IntegerRow>& rows, std::vector<mpq_class> x,
                                      const std::vector<mpq_class>* objective = nullptr) {
    const std::size_t d = x.size();
    for (;;) {
        std::vector<const IntegerRow*> tight;
        for (const auto& r : rows) {
            if (row_value(r, x) == mpq_class(r.bound)) tight.push_back(&r);
        }
        std::vector<mpq_class> y(d, 0);
        if (tight.empty()) {
            if (d == 0) return x;
            y[0] = 1;
        } else {
            RationalMatrix m(tight.size(), d);
            for (std::size_t i = 0; i < tight.size(); ++i)
                for (std::size_t j = 0; j < d; ++j) m(i, j) = Rational(tight[i]->coeffs[j]);
            const auto sol = solve_linear(m, RationalVector(tight.size()));
            const auto* inf = std::get_if<InfiniteSolutions>(&sol);
            if (inf == nullptr) return x;
            for (std::size_t j = 0; j < d; ++j) y[j] = inf->nullspace.front()[j].get();
        }
        if (objective != nullptr) {
            mpq_class gain = 0;
            for (std::size_t j = 0; j < d; ++j) gain += (*objective)[j] * y[j];
            if (sgn(gain) < 0) {
                for (auto& c : y) c = -c;
            }
        }
        auto t = ratio_test(rows, x, y);
        if (!t && objective != nullptr) {
            mpq_class gain = 0;
            for (std::size_t j = 0; j < d; ++j) gain += (*objective)[j] * y[j];
            if (sgn(gain) > 0) throw UnboundedPolyhedron("vertices_from_hrep: polyhedron is unbounded");
        }
        if (!t) {
            for (auto& c : y) c = -c;
            t = ratio_test(rows, x, y);
        }
        if (!t) throw UnboundedPolyhedron("vertices_from_hrep: system contains a line");
        for (std::size_t j = 0; j < d; ++j) x[j] += *t * y[j];
    }
}

BinaryPoint as_binary(const std::vector<mpq_class>& x) {
    BinaryPoint p(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] == 1) p[j] = 1;
        else if (sgn(x[j]) != 0) throw NonBinaryVertex("vertex (" + format_point(x) + ") is not a 0/1 point");
    }
    return p;
}

std::vector<mpq_class> to_mpq(const RationalVector& v) {
    std::vector<mpq_class> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.get());
    return out;
}

// Vertex of s maximizing `objective`; nullopt when the maximum is unbounded.
std::optional<std::vector<mpq_class>> best_vertex(const InequalitySystem& s, const std::vector<IntegerRow>& rows,
                                                  const RationalVector& objective) {
    const auto lp = lp_max(s, objective);
    if (lp.status == LpStatus::unbounded) return std::nullopt;
    const auto c = to_mpq(objective);
    return move_to_vertex(rows, to_mpq(lp.witness), &c);
}

// Cheap discovery before the certified loop: every vertex is 0/1, so scan
// the cube in Gray-code order with machine-integer row values. A feasible
// point whose tight rows have full rank is a vertex. Skipped when the scan
// is too large or the row values could overflow.
std::vector<BinaryPoint> scan_binary_vertices(const std::vector<IntegerRow>& rows, std::size_t d, bool parallel) {
    constexpr double kMaxWork = 2e10;
    if (d >= 40 || std::ldexp(static_cast<double>(rows.size()), static_cast<int>(d)) > kMaxWork) return {};
    const std::size_t m = rows.size();
    std::vector<long> a(m * d), b(m);
    for (std::size_t i = 0; i < m; ++i) {
        mpz_class total = abs(rows[i].bound);
        for (std::size_t j = 0; j < d; ++j) {
            total += abs(rows[i].coeffs[j]);
            if (!rows[i].coeffs[j].fits_slong_p()) return {};
            a[j * m + i] = rows[i].coeffs[j].get_si();
        }
        if (total > mpz_class(1L << 60)) return {};
        b[i] = rows[i].bound.get_si();
    }
    // chunks share the high bits and walk the low bits in Gray order
    const std::size_t low = std::min<std::size_t>(d, 16);
    const std::uint64_t chunks = std::uint64_t{1} << (d - low);
    std::vector<std::vector<BinaryPoint>> found(chunks);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::uint64_t hi = 0; hi < chunks; ++hi) {
        std::vector<long> value(m, 0);
        BinaryPoint p(d, 0);
        for (std::size_t j = low; j < d; ++j) {
            if (hi >> (j - low) & 1u) {
                p[j] = 1;
                for (std::size_t i = 0; i < m; ++i) value[i] += a[j * m + i];
            }
        }
        for (std::uint64_t k = 0;; ++k) {
            bool feasible = true;
            for (std::size_t i = 0; i < m && feasible; ++i) feasible = value[i] <= b[i];
            if (feasible) {
                std::vector<std::vector<long>> tight;
                for (std::size_t i = 0; i < m; ++i) {
                    if (value[i] != b[i]) continue;
                    std::vector<long> r(d);
                    for (std::size_t j = 0; j < d; ++j) r[j] = a[j * m + i];
                    tight.push_back(std::move(r));
                }
                if (tight.size() >= d && detail::rank_small(tight, d, d) == d) found[hi].push_back(p);
            }
            if (k + 1 == (std::uint64_t{1} << low)) break;
            const std::size_t j = static_cast<std::size_t>(__builtin_ctzll(k + 1));
            const long sign = p[j] ? -1 : 1;
            p[j] ^= 1;
            for (std::size_t i = 0; i < m; ++i) value[i] += sign * a[j * m + i];
        }
    }
    std::vector<BinaryPoint> out;
    for (auto& f : found) std::move(f.begin(), f.end(), std::back_inserter(out));
    return out;
}

// Graph search from one vertex, reading the edge directions at each vertex off
// its tangent cone. Used when the polytope is not full-dimensional.
VertexSet vertices_by_traversal(const InequalitySystem& s, const std::vector<IntegerRow>& rows,
                                std::vector<mpq_class> start, const HullOptions& options) {
    const std::size_t d = s.dim;
    std::set<BinaryPoint> seen;
    std::vector<std::vector<mpq_class>> queue{std::move(start)};
    while (!queue.empty()) {
        if (past(options.deadline)) throw GuardExceeded("vertices_from_hrep: deadline exceeded");
        const auto x = std::move(queue.back());
        queue.pop_back();
        if (!seen.insert(as_binary(x)).second) continue;
        std::vector<IntegerVector> cone;
        for (const auto& r : rows) {
            if (row_value(r, x) != mpq_class(r.bound)) continue;
            IntegerVector g(d);
            for (std::size_t j = 0; j < d; ++j) g[j] = -r.coeffs[j];
            cone.push_back(std::move(g));
        }
        HullOptions inner = options;
        inner.order = DdOrder::lex_min;
        const auto edges = detail::extreme_rays(cone, d, inner).value();
        for (const auto& y : edges) {
            const auto t = ratio_test(rows, x, y);
            if (!t) throw UnboundedPolyhedron("vertices_from_hrep: polyhedron is unbounded");
            std::vector<mpq_class> next = x;
            for (std::size_t j = 0; j < d; ++j) {
                if (sgn(y[j]) != 0) next[j] += *t * mpq_class(y[j]);
            }
            queue.push_back(std::move(next));
        }
    }
    VertexSet out(d, s.labels);
    for (const auto& p : seen) out.add(p);
    return out;
}

}  // namespace

VertexSet vertices_from_hrep(const InequalitySystem& s, const HullOptions& options) {
    const std::size_t d = s.dim;
    std::vector<IntegerRow> rows;
    rows.reserve(s.size());
    for (const auto& r : s.rows) {
        if (r.dim() != d) throw DimensionMismatch("vertices_from_hrep: row width differs from dim");
        rows.push_back(to_integer_row(r));
    }
    VertexSet found(d, s.labels);
    const auto feasible = lp_max(s, RationalVector(d));
    if (feasible.status == LpStatus::infeasible) return found;
    auto x0 = move_to_vertex(rows, to_mpq(feasible.witness));
    if (d == 0) {
        found.add(BinaryPoint{});
        return found;
    }

    std::vector<std::vector<mpq_class>> points{x0};
    std::set<BinaryPoint> seen{as_binary(x0)};
    found.add(as_binary(x0));
    if (options.binary_scan) {
        for (auto& p : scan_binary_vertices(rows, d, options.exec == Execution::parallel)) {
            if (seen.insert(p).second) found.add(std::move(p));
        }
    }
    // Without a full-dimensional start, push outward along a normal of the
    // affine hull of the LP vertices.
    while (points.size() < d + 1 && affine_dim(found) < static_cast<int>(d)) {
        RationalMatrix diffs(points.size(), d + 1);
        for (std::size_t i = 0; i < points.size(); ++i) {
            for (std::size_t j = 0; j < d; ++j) diffs(i, j) = Rational(points[i][j]);
            diffs(i, d) = Rational(-1);
        }
        const auto sol = solve_linear(diffs, RationalVector(points.size()));
        const auto& normal_full = std::get<InfiniteSolutions>(sol).nullspace.front();
        RationalVector normal(normal_full.begin(), normal_full.begin() + static_cast<std::ptrdiff_t>(d));
        bool grown = false;
        for (int sign : {1, -1}) {
            RationalVector c = normal;
            if (sign < 0) {
                for (auto& v : c) v = -v;
            }
            const auto x = best_vertex(s, rows, c);
            if (!x) throw UnboundedPolyhedron("vertices_from_hrep: polyhedron is unbounded");
            if (row_value(IntegerRow{detail::clear_denominators(normal), 0}, *x) !=
                row_value(IntegerRow{detail::clear_denominators(normal), 0}, x0)) {
                const auto p = as_binary(*x);
                points.push_back(*x);
                if (seen.insert(p).second) found.add(p);
                grown = true;
                break;
            }
        }
        if (!grown) return vertices_by_traversal(s, rows, std::move(x0), options);
    }

    // Grow until every facet of the hull of the known vertices holds on s;
    // then s lies inside that hull and the known vertices are all of them.
    std::set<IntegerRow> given(rows.begin(), rows.end());
    const bool parallel = options.exec == Execution::parallel;
    for (;;) {
        if (past(options.deadline)) throw GuardExceeded("vertices_from_hrep: deadline exceeded");
        const auto hull = hull_dd(found, options);
        std::vector<const LinearInequality*> open;
        for (const auto& f : hull.rows) {
            if (!given.count(to_integer_row(f))) open.push_back(&f);
        }
        std::vector<std::optional<std::vector<mpq_class>>> beyond(open.size());
        std::atomic<bool> unbounded{false};
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
        for (std::size_t k = 0; k < open.size(); ++k) {
            if (unbounded) continue;
            const auto x = best_vertex(s, rows, open[k]->coeffs);
            if (!x) {
                unbounded = true;
                continue;
            }
            const IntegerRow f = to_integer_row(*open[k]);
            if (row_value(f, *x) > mpq_class(f.bound)) beyond[k] = *x;
        }
        if (unbounded) throw UnboundedPolyhedron("vertices_from_hrep: polyhedron is unbounded");
        bool grown = false;
        for (const auto& x : beyond) {
            if (!x) continue;
            if (seen.insert(as_binary(*x)).second) {
                found.add(as_binary(*x));
                grown = true;
            }
        }
        if (!grown) break;
    }
    VertexSet out(d, s.labels);
    for (const auto& p : seen) out.add(p);
    return out;
}

}  // namespace bellpoly
