#include <benchmark/benchmark.h>

#include "equihom/bredon.hpp"
#include "equihom/cosheaf.hpp"
#include "equihom/cyclic.hpp"
#include "equihom/delocalized.hpp"

namespace {

using namespace equihom;

GComplex d4_octagon() {
    auto square = g_complex_from_generators(
        {{1, 2, 3, 0}, {0, 3, 2, 1}}, SComplex::from_maximal(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}),
        {{1, 2, 3, 0}, {0, 3, 2, 1}});
    return barycentric_subdivision(square);
}

GComplex subdivided_sphere() {
    auto e = build_group_from_table({{0}});
    return barycentric_subdivision(trivial_action(
        SComplex::from_maximal(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}), e));
}

void BM_BoundaryRank(benchmark::State& state) {
    auto x = subdivided_sphere();
    for (auto _ : state) {
        benchmark::DoNotOptimize(rank(boundary_matrix(x.space, 2)));
    }
}
BENCHMARK(BM_BoundaryRank);

void BM_BredonOctagon(benchmark::State& state) {
    auto x = d4_octagon();
    for (auto _ : state) {
        benchmark::DoNotOptimize(bredon_homology(x));
    }
}
BENCHMARK(BM_BredonOctagon);

void BM_CompareOctagon(benchmark::State& state) {
    auto x = d4_octagon();
    for (auto _ : state) {
        benchmark::DoNotOptimize(compare_bredon_cosheaf(x));
    }
}
BENCHMARK(BM_CompareOctagon);

void BM_OmegaForms(benchmark::State& state) {
    auto two = g_complex_from_generators({{1, 0}}, SComplex::from_maximal(2, {{0}, {1}}),
                                         {{1, 0}});
    auto algebra = function_algebra(two);
    for (auto _ : state) {
        benchmark::DoNotOptimize(omega_forms(algebra, 3));
    }
}
BENCHMARK(BM_OmegaForms);

void BM_HpLevel(benchmark::State& state) {
    auto two = g_complex_from_generators({{1, 0}}, SComplex::from_maximal(2, {{0}, {1}}),
                                         {{1, 0}});
    auto a = function_algebra(two);
    auto b = base_field_algebra(a.group);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hp_at_level(a, b, 2, 1));
    }
}
BENCHMARK(BM_HpLevel);

void BM_BivariantOctagon(benchmark::State& state) {
    auto x = d4_octagon();
    GComplex pt;
    pt.space = SComplex::from_maximal(1, {{0}});
    pt.group = x.group;
    pt.vertex_action.assign(x.group->order(), {0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(bs_bivariant(x, pt));
    }
}
BENCHMARK(BM_BivariantOctagon);

}  // namespace

BENCHMARK_MAIN();
