// bellpoly command-line driver.
//
// Exit codes: 0 success, 1 domain failure, 2 usage error, 3 guard exceeded.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "bellpoly/derive.hpp"
#include "bellpoly/errors.hpp"
#include "bellpoly/families.hpp"
#include "bellpoly/hull_oracle.hpp"
#include "bellpoly/mobius.hpp"
#include "bellpoly/scenario.hpp"

namespace bp = bellpoly;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;
constexpr int kGuard = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    int jobs = 0;
    long guard = -1;  // negative: module defaults
};

std::vector<std::size_t> parse_settings(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, ',');) {
        if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw UsageError("--settings expects positive integers separated by commas, got '" + s + "'");
        }
        out.push_back(std::stoul(t));
    }
    if (out.empty()) throw UsageError("--settings is empty");
    return out;
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw UsageError("cannot write " + path);
    fn(os);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot read " + path);
    return is;
}

bp::Scenario load_scenario(const std::string& settings, const std::string& file) {
    if (settings.empty() == file.empty()) throw UsageError("give exactly one of --settings and --scenario");
    if (!settings.empty()) return bp::build_multipartite(parse_settings(settings));
    auto is = open_input(file);
    return bp::read_scenario(is);
}

// Coordinate token: a label of the system if it matches one, otherwise a
// 1-based position.
std::size_t resolve_var(const std::string& tok, const bp::InequalitySystem& sys) {
    auto it = std::find(sys.labels.begin(), sys.labels.end(), tok);
    if (it != sys.labels.end()) return static_cast<std::size_t>(it - sys.labels.begin());
    if (!tok.empty() && std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        const std::size_t pos = std::stoul(tok);
        if (pos >= 1 && pos <= sys.dim) return pos - 1;
    }
    throw UsageError("--vars: '" + tok + "' is neither a coordinate label nor a position in 1.." +
                     std::to_string(sys.dim));
}

void print_families(std::ostream& os, const bp::InequalitySystem& facets, const bp::Scenario& sc) {
    const auto families = bp::partition_families(facets, sc);
    os << "# families " << families.size() << '\n';
    std::size_t i = 0;
    for (const auto& f : families) {
        os << "# family " << ++i << (f.trivial ? " trivial" : " nontrivial") << " orbit " << f.orbit_size << " rows "
           << f.members << ": " << bp::format_inequality(f.representative, facets.labels) << '\n';
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Exact correlation-polytope and Bell-inequality toolkit"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--jobs", common.jobs, "Cap on worker threads")->check(CLI::PositiveNumber);
    app.add_option("--guard", common.guard, "Override size guards")->check(CLI::NonNegativeNumber);

    // vertices
    std::string v_settings, v_scenario, v_out;
    auto* vertices = app.add_subcommand("vertices", "Vertices of a scenario's correlation polytope");
    vertices->add_option("--settings", v_settings, "Settings per party, e.g. 2,2");
    vertices->add_option("--scenario", v_scenario, "Scenario file");
    vertices->add_option("-o,--output", v_out, "Output V-file");

    // hull
    std::string h_in, h_method = "dd", h_out;
    auto* hull = app.add_subcommand("hull", "Facets of the convex hull of a V-file");
    hull->add_option("input", h_in, "V-file")->required();
    hull->add_option("--method", h_method, "brute or dd")->check(CLI::IsMember({"brute", "dd"}));
    hull->add_option("-o,--output", h_out, "Output H-file");

    // derive
    std::string d_settings, d_order = "min-product", d_redundancy = "certified", d_out, d_stacked;
    std::size_t d_pivot = 0;
    bool d_families = false, d_verbose = false;
    auto* derive = app.add_subcommand("derive", "Bell inequalities by tree decomposition and elimination");
    derive->add_option("--settings", d_settings, "Settings per party")->required();
    derive->add_option("--pivot-party", d_pivot, "Index of the shared party (two-party scenarios)");
    derive->add_option("--order", d_order, "Elimination order")->check(CLI::IsMember({"min-product", "given"}));
    derive->add_option("--redundancy", d_redundancy, "certified or lp")->check(CLI::IsMember({"certified", "lp"}));
    derive->add_flag("--families", d_families, "Append the family partition as comments");
    derive->add_option("--stacked", d_stacked, "Also write the stacked system before elimination");
    derive->add_flag("-v,--verbose", d_verbose, "Per-step statistics on stderr");
    derive->add_option("-o,--output", d_out, "Output H-file");

    // check
    std::string c_vrep, c_hrep;
    bool c_complete = false;
    auto* check = app.add_subcommand("check", "Validate an H-file against a V-file");
    check->add_option("--vrep", c_vrep, "V-file")->required();
    check->add_option("--hrep", c_hrep, "H-file")->required();
    check->add_flag("--complete", c_complete, "Also require the H-file to cut out exactly these vertices");

    // cpn
    std::size_t p_n = 0;
    std::string p_out;
    auto* cpn = app.add_subcommand("cpn", "H-representation of the complete probability polytope");
    cpn->add_option("n", p_n, "Number of observables")->required()->check(CLI::PositiveNumber);
    cpn->add_option("-o,--output", p_out, "Output H-file");

    // mobius
    bool m_forward = false, m_inverse = false;
    std::string m_in, m_out;
    auto* mobius = app.add_subcommand("mobius", "Convert between subset measures and atom weights");
    auto* fwd = mobius->add_flag("--forward", m_forward, "MEASURE file to ATOMS file");
    auto* inv = mobius->add_flag("--inverse", m_inverse, "ATOMS file to MEASURE file");
    fwd->excludes(inv);
    mobius->add_option("input", m_in, "Input file")->required();
    mobius->add_option("-o,--output", m_out, "Output file");

    // eliminate
    std::string e_in, e_vars, e_redundancy = "lp", e_out;
    bool e_no_chernikov = false;
    auto* eliminate = app.add_subcommand("eliminate", "Fourier-Motzkin elimination on an H-file");
    eliminate->add_option("input", e_in, "H-file")->required();
    eliminate->add_option("--vars", e_vars, "Coordinates to eliminate: labels or 1-based positions")->required();
    eliminate->add_option("--redundancy", e_redundancy, "none or lp")->check(CLI::IsMember({"none", "lp"}));
    eliminate->add_flag("--no-chernikov", e_no_chernikov, "Disable the Chernikov rule");
    eliminate->add_option("-o,--output", e_out, "Output H-file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    if (common.jobs > 0) omp_set_num_threads(common.jobs);

    bp::HullOptions hull_options;
    if (common.guard >= 0) hull_options.subset_guard = static_cast<std::size_t>(common.guard);

    if (*vertices) {
        const auto sc = load_scenario(v_settings, v_scenario);
        with_output(v_out, [&](std::ostream& os) { bp::write_vrep(os, bp::enumerate_vertices(sc)); });
        return kOk;
    }
    if (*hull) {
        auto is = open_input(h_in);
        const auto v = bp::read_vrep(is);
        auto h = h_method == "brute" ? bp::facets_bruteforce(v, hull_options) : bp::hull_dd(v, hull_options);
        if (h.labels.empty()) h.labels = v.labels();
        with_output(h_out, [&](std::ostream& os) { bp::write_hrep(os, h); });
        return kOk;
    }
    if (*derive) {
        const auto sc = bp::build_multipartite(parse_settings(d_settings));
        bp::DeriveOptions options;
        options.order = d_order == "given" ? bp::OrderStrategy::given : bp::OrderStrategy::min_product;
        options.redundancy = d_redundancy == "lp" ? bp::RedundancyMode::lp : bp::RedundancyMode::certified;
        options.hull = hull_options;
        if (common.guard >= 0) options.max_rows = static_cast<std::size_t>(common.guard);
        if (d_verbose) {
            options.on_step = [](const bp::StepStats& s) {
                std::cerr << "eliminated " << s.variable << ": +" << s.positive << " -" << s.negative << " 0:" << s.zero
                          << " skipped " << s.pairs_skipped << " combined " << s.combined << " kept " << s.kept << " ("
                          << s.seconds << " s)\n";
            };
        }
        bp::DeriveResult r;
        try {
            r = bp::derive_tree(sc, d_pivot, options);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (!d_stacked.empty()) with_output(d_stacked, [&](std::ostream& os) { bp::write_hrep(os, r.stacked); });
        with_output(d_out, [&](std::ostream& os) {
            bp::write_hrep(os, r.facets);
            if (d_families && d_out.empty()) print_families(os, r.facets, sc);
        });
        if (d_families && !d_out.empty()) print_families(std::cout, r.facets, sc);
        return kOk;
    }
    if (*check) {
        auto vis = open_input(c_vrep);
        auto his = open_input(c_hrep);
        const auto v = bp::read_vrep(vis);
        const auto h = bp::read_hrep(his);
        if (h.dim != v.dim()) throw UsageError("H-file and V-file dimensions differ");
        const auto& labels = !h.labels.empty() ? h.labels : v.labels();
        const int dim_v = bp::affine_dim(v);
        bool ok = true;
        std::size_t facets = 0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const auto c = bp::classify(h.rows[i], v, dim_v);
            if (c == bp::Classification::invalid) ok = false;
            if (c == bp::Classification::facet) ++facets;
            std::cout << "row " << i + 1 << ": " << bp::to_string(c) << "  "
                      << bp::format_inequality(h.rows[i], labels) << '\n';
        }
        std::cout << "rows " << h.size() << ", facets " << facets << ", invalid "
                  << std::count_if(h.rows.begin(), h.rows.end(),
                                   [&](const auto& r) { return !bp::is_valid(r, v); })
                  << '\n';
        if (c_complete) {
            try {
                const auto back = bp::vertices_from_hrep(h, hull_options);
                if (back.sorted() == v.sorted()) {
                    std::cout << "complete: the H-file cuts out exactly the " << v.size() << " vertices\n";
                } else {
                    ok = false;
                    std::cout << "incomplete: the H-file has " << back.size() << " vertices, expected " << v.size()
                              << '\n';
                }
            } catch (const bp::NonBinaryVertex& e) {
                ok = false;
                std::cout << "incomplete: " << e.what() << '\n';
            } catch (const bp::UnboundedPolyhedron& e) {
                ok = false;
                std::cout << "incomplete: " << e.what() << '\n';
            }
        }
        std::cout << (ok ? "PASS" : "FAIL") << '\n';
        return ok ? kOk : kDomain;
    }
    if (*cpn) {
        const std::size_t guard = common.guard >= 0 ? static_cast<std::size_t>(common.guard) : 16;
        with_output(p_out, [&](std::ostream& os) { bp::write_hrep(os, bp::complete_polytope_hrep(p_n, guard)); });
        return kOk;
    }
    if (*mobius) {
        if (!m_forward && !m_inverse) throw UsageError("mobius needs --forward or --inverse");
        auto is = open_input(m_in);
        if (m_forward) {
            const auto atoms = bp::mobius_forward(bp::read_measure(is));
            with_output(m_out, [&](std::ostream& os) { bp::write_atoms(os, atoms); });
            if (!atoms.nonnegative()) {
                const auto e = atoms.argmin();
                std::cerr << "negative atom " << bp::eps_bitstring(e, atoms.n()) << " = " << atoms[e]
                          << ": no measure extends these values\n";
                return kDomain;
            }
            return kOk;
        }
        const auto f = bp::mobius_inverse(bp::read_atoms(is));
        with_output(m_out, [&](std::ostream& os) { bp::write_measure(os, f); });
        return kOk;
    }
    if (*eliminate) {
        auto is = open_input(e_in);
        const auto sys = bp::read_hrep(is);
        std::vector<std::size_t> vars;
        std::stringstream ss(e_vars);
        for (std::string t; std::getline(ss, t, ',');) vars.push_back(resolve_var(t, sys));
        bp::FmOptions options;
        options.chernikov = !e_no_chernikov;
        options.order = bp::OrderStrategy::given;
        options.redundancy = e_redundancy == "none" ? bp::RedundancyMode::none : bp::RedundancyMode::lp;
        if (common.guard >= 0) options.max_rows = static_cast<std::size_t>(common.guard);
        const auto out = bp::eliminate_many(bp::TrackedSystem::track(sys), vars, options);
        with_output(e_out, [&](std::ostream& os) { bp::write_hrep(os, out.system); });
        if (!bp::is_feasible(out.system)) {
            std::cerr << "system is infeasible\n";
            return kDomain;
        }
        return kOk;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const bp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const bp::GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << '\n';
        return kGuard;
    } catch (const bp::InvalidMeasure& e) {
        std::cerr << "not a measure: " << e.what() << '\n';
        return kDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomain;
    }
}
