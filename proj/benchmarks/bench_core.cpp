#include <benchmark/benchmark.h>

#include "mmiso/orbits.hpp"
#include "mmiso/recovery.hpp"

using namespace mmiso;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F5 = FieldSpec::prime_field(5);

Decomposition standard_decomposition(const Shape& s, const FieldSpec& f) {
    Decomposition d;
    d.shape = s;
    d.field = f;
    for (int i = 0; i < s.m; ++i)
        for (int j = 0; j < s.n; ++j)
            for (int k = 0; k < s.p; ++k)
                d.terms.push_back(RankOneTriple{Mat::unit(s.m, s.n, i, j, f),
                                                Mat::unit(s.n, s.p, j, k, f),
                                                Mat::unit(s.p, s.m, k, i, f)});
    return d;
}

void BM_MatInverseRational(benchmark::State& state) {
    Rng rng(1);
    const int n = static_cast<int>(state.range(0));
    const Mat x = Mat::random_invertible(rng, n, Q);
    for (auto _ : state) benchmark::DoNotOptimize(x.inverse());
}
BENCHMARK(BM_MatInverseRational)->Arg(3)->Arg(5);

void BM_ApplyElement(benchmark::State& state) {
    Rng rng(2);
    const Shape s{3, 3, 3};
    const FieldSpec& f = state.range(0) == 0 ? Q : F5;
    const Tensor3 t = mmt_tensor(s, f);
    const IsotropyElement g = random_element(rng, s, f);
    for (auto _ : state) benchmark::DoNotOptimize(apply(g, t));
}
BENCHMARK(BM_ApplyElement)->Arg(0)->Arg(1);

void BM_StructureTensor(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Shape s{n, n, n};
    for (auto _ : state)
        benchmark::DoNotOptimize(structure_tensor(BilinearMap::composition_map(s, Q)));
}
BENCHMARK(BM_StructureTensor)->Arg(2)->Arg(4);

void BM_RecoveryRoundtrip(benchmark::State& state) {
    Rng rng(3);
    const Shape s{2, 3, 4};
    const Mat a = Mat::random_invertible(rng, s.m, F5);
    const Mat b = Mat::random_invertible(rng, s.n, F5);
    const Mat c = Mat::random_invertible(rng, s.p, F5);
    for (auto _ : state)
        benchmark::DoNotOptimize(sandwich_recovery_roundtrip(s, a, b, c));
}
BENCHMARK(BM_RecoveryRoundtrip);

void BM_EnumerateGroupGF2(benchmark::State& state) {
    const Shape s{2, 2, 2};
    const Tensor3 t = mmt_tensor(s, FieldSpec::prime_field(2));
    for (auto _ : state) {
        const GroupEnumeration full(s, 2, EnumerationMode::Full);
        std::uint64_t members = 0;
        for (std::uint64_t i = 0; i < full.size(); ++i)
            if (is_isotropy(full.element(i), t)) ++members;
        benchmark::DoNotOptimize(members);
    }
}
BENCHMARK(BM_EnumerateGroupGF2)->Unit(benchmark::kMillisecond);

void BM_StabilizerStandardGF2(benchmark::State& state) {
    const Decomposition d = standard_decomposition(Shape{2, 2, 2}, FieldSpec::prime_field(2));
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            stabilizer(d, 2, GroupEnumeration::default_budget, workers));
}
BENCHMARK(BM_StabilizerStandardGF2)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
