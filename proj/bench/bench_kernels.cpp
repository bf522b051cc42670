/// Serial reference vs OpenMP kernels on a larger random graph system.
#include <benchmark/benchmark.h>

#include "support.hpp"

using namespace lgs;

namespace {

const LambdaGraphSystem& big() {
    static const LambdaGraphSystem s = [] {
        std::mt19937_64 rng(7);
        return from_labeled_graph(test::random_graph(rng, 60, 3, 120), 8);
    }();
    return s;
}

Exec policy(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_validate(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(validate(big(), policy(st)).ok);
}

void BM_compatibility(benchmark::State& st) {
    const auto m = from_lgs(big());
    for (auto _ : st) benchmark::DoNotOptimize(verify_compatibility(m, policy(st)).ok());
}

void BM_essential_freeness(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(check_essential_freeness(big(), 3, 1, 4, policy(st)).certified());
}

void BM_orbit_equations(benchmark::State& st) {
    const auto& s = big();
    std::vector<int> id(static_cast<size_t>(s.alphabet().size()));
    std::iota(id.begin(), id.end(), 0);
    CoeCertificate cert{test::relabel_code(s, id), CylinderFunction::constant_fn(0), CylinderFunction::constant_fn(1),
                        CylinderFunction::constant_fn(0), CylinderFunction::constant_fn(1)};
    for (auto _ : st) benchmark::DoNotOptimize(check_coe(s, s, cert, 6, policy(st)).ok());
}

}  // namespace

BENCHMARK(BM_validate)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_compatibility)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_essential_freeness)->Arg(0)->Arg(1)->ArgName("parallel");
BENCHMARK(BM_orbit_equations)->Arg(0)->Arg(1)->ArgName("parallel");

BENCHMARK_MAIN();
