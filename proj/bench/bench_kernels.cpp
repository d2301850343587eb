// Serial reference against the OpenMP path for each parallel kernel.
#include <benchmark/benchmark.h>

#include "ftsl2/classgroup.hpp"
#include "ftsl2/cohomology.hpp"
#include "ftsl2/forms.hpp"
#include "ftsl2/io.hpp"

using namespace ftsl2;

namespace {

void BM_BoxRelations(benchmark::State& st) {
    // a degree-4 field gives boxes large enough to be worth splitting
    static FieldPtr K = NumberField::make({1, -1, 1, -1, 1});
    static const auto fb = primes_up_to_norm(*K, 200);
    const bool parallel = st.range(0) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(box_relations(*K, fb, 0, 6, parallel));
}
BENCHMARK(BM_BoxRelations)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_OracleGrid(benchmark::State& st) {
    GridSpec spec;
    spec.rmax = 5;
    spec.dmin = -20;
    spec.dmax = 20;
    const bool parallel = st.range(0) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(oracle_grid(spec, parallel));
}
BENCHMARK(BM_OracleGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_FormsSweep(benchmark::State& st) {
    const bool parallel = st.range(0) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(forms::sweep(-20000, -3, parallel));
}
BENCHMARK(BM_FormsSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
