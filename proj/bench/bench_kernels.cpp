// Serial reference vs OpenMP kernels. Arg 0 runs serial, arg 1 parallel.

#include <benchmark/benchmark.h>

#include "bellpoly/derive.hpp"
#include "bellpoly/fm_engine.hpp"
#include "bellpoly/hull_oracle.hpp"

using namespace bellpoly;

namespace {

Execution exec_of(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

const DeriveResult& derived_33() {
    static const DeriveResult r = derive_tree(build_multipartite({3, 3}));
    return r;
}

void BM_derive_33(benchmark::State& state) {
    const auto sc = build_multipartite({3, 3});
    DeriveOptions options;
    options.exec = exec_of(state);
    options.hull.exec = options.exec;
    for (auto _ : state) benchmark::DoNotOptimize(derive_tree(sc, 0, options));
}

void BM_eliminate_lp(benchmark::State& state) {
    // stacked (2,3) system, LP sweep after every step
    const auto& stacked = derive_tree(build_multipartite({2, 3})).stacked;
    std::vector<std::size_t> vars;
    for (std::size_t j = 0; j < stacked.labels.size(); ++j) {
        if (stacked.labels[j] == "12") vars.push_back(j);
    }
    FmOptions options;
    options.redundancy = RedundancyMode::lp;
    options.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(eliminate_many(TrackedSystem::track(stacked), vars, options));
}

void BM_remove_redundant(benchmark::State& state) {
    const auto& stacked = derive_tree(build_multipartite({2, 3})).stacked;
    std::vector<std::size_t> vars;
    for (std::size_t j = 0; j < stacked.labels.size(); ++j) {
        if (stacked.labels[j] == "12") vars.push_back(j);
    }
    FmOptions raw;
    raw.redundancy = RedundancyMode::none;
    const auto projected = eliminate_many(TrackedSystem::track(stacked), vars, raw).system;
    state.counters["rows"] = static_cast<double>(projected.size());
    for (auto _ : state) benchmark::DoNotOptimize(remove_redundant(projected, exec_of(state)));
}

void BM_hull_dd_33(benchmark::State& state) {
    const auto v = enumerate_vertices(build_multipartite({3, 3}));
    HullOptions options;
    options.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(hull_dd(v, options));
}

void BM_facets_bruteforce_chsh(benchmark::State& state) {
    const auto v = enumerate_vertices(build_multipartite({2, 2}));
    HullOptions options;
    options.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(facets_bruteforce(v, options));
}

void BM_vertices_from_hrep_33(benchmark::State& state) {
    const auto& facets = derived_33().facets;
    HullOptions options;
    options.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(vertices_from_hrep(facets, options));
}

}  // namespace

BENCHMARK(BM_derive_33)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK(BM_eliminate_lp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_remove_redundant)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hull_dd_33)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK(BM_facets_bruteforce_chsh)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_vertices_from_hrep_33)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
