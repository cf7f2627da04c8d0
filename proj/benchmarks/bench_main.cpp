#include "flatchain/flatnorm.hpp"
#include "flatchain/harness.hpp"
#include "flatchain/lipmap.hpp"
#include "flatchain/varifold.hpp"

#include <benchmark/benchmark.h>

using namespace flatchain;

namespace {

// nx x nx unit grid of triangles with a mod-2 diagonal staircase as the chain.
Chain staircase(int nx) {
    std::vector<Point> verts;
    for (int j = 0; j <= nx; ++j)
        for (int i = 0; i <= nx; ++i) verts.push_back((Point(2) << double(i) / nx, double(j) / nx).finished());
    auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
    std::vector<std::vector<int>> tris;
    for (int j = 0; j < nx; ++j)
        for (int i = 0; i < nx; ++i) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
        }
    const auto k = Complex::create(2, std::move(verts), {{}, {}, tris});
    Chain p(k, 1, Group::cyclic(2));
    for (int s = 0; s < nx; ++s) {
        const int h[2] = {std::min(id(s, s), id(s + 1, s)), std::max(id(s, s), id(s + 1, s))};
        const int v[2] = {std::min(id(s + 1, s), id(s + 1, s + 1)), std::max(id(s + 1, s), id(s + 1, s + 1))};
        p.add(*k->find(1, h), 1.0);
        p.add(*k->find(1, v), 1.0);
    }
    return p;
}

void BM_FlatNormEnumeration(benchmark::State& state) {
    const Chain p = staircase(static_cast<int>(state.range(0)));
    FlatNormOptions o;
    o.method = MethodChoice::BruteForce;
    for (auto _ : state) benchmark::DoNotOptimize(flat_norm(p, o).value);
}
BENCHMARK(BM_FlatNormEnumeration)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_FlatNormRelaxation(benchmark::State& state) {
    const Chain p = staircase(static_cast<int>(state.range(0)));
    FlatNormOptions o;
    o.method = MethodChoice::LinearProgram;
    for (auto _ : state) benchmark::DoNotOptimize(flat_norm(p, o).value);
}
BENCHMARK(BM_FlatNormRelaxation)->Arg(3)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FlatNormReal(benchmark::State& state) {
    const Chain z = staircase(static_cast<int>(state.range(0)));
    Chain p(z.complex(), 1, Group::reals());
    for (const auto& [i, g] : z.coefficients()) p.add(i, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(flat_norm(p).value);
}
BENCHMARK(BM_FlatNormReal)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_AnnulusFlatNorm(benchmark::State& state) {
    const auto s = scenario_annulus(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(flat_norm(s.chain).value);
}
BENCHMARK(BM_AnnulusFlatNorm)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Subdivision(benchmark::State& state) {
    const auto base = staircase(2).complex();
    for (auto _ : state) benchmark::DoNotOptimize(iterated_subdivision(base, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Subdivision)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_Pushforward(benchmark::State& state) {
    const Chain sq = Chain::fundamental(staircase(2).complex(), 2, Group::integers());
    const auto f = LipMap::polar_wrap();
    for (auto _ : state) benchmark::DoNotOptimize(pushforward_chain(f, sq, static_cast<int>(state.range(0))).chain);
}
BENCHMARK(BM_Pushforward)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_VarifoldDistance(benchmark::State& state) {
    const auto s = scenario_polygonal_limit(Shape::Circle, static_cast<int>(state.range(0)));
    const auto v = var_of_chain(s.chain, 0);
    const auto w = var_of_chain(*s.reference, 0);
    const auto dict = TestDictionary::standard(2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(var_weak_distance(v, w, dict));
}
BENCHMARK(BM_VarifoldDistance)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
