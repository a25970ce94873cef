#include <benchmark/benchmark.h>

#include "qeclab/experiments.hpp"
#include "qeclab/steane.hpp"

namespace {

using namespace qeclab;

void BM_DenseHadamard(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    sv::PureState s(n);
    int q = 0;
    for (auto _ : state) {
        s.apply(sv::Gate::h(q));
        q = (q + 1) % n;
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.dim()));
}
BENCHMARK(BM_DenseHadamard)->Arg(10)->Arg(14)->Arg(18)->Arg(21);

void BM_DenseCnot(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    sv::PureState s(n);
    s.apply(sv::Gate::h(0));
    int q = 0;
    for (auto _ : state) {
        s.apply(sv::Gate::cnot(q, (q + 1) % n));
        q = (q + 1) % n;
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.dim()));
}
BENCHMARK(BM_DenseCnot)->Arg(10)->Arg(14)->Arg(18)->Arg(21);

void BM_TableauCnot(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    stab::Tableau t(n);
    int q = 0;
    for (auto _ : state) {
        t.cnot(q, (q + 1) % n);
        q = (q + 1) % n;
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_TableauCnot)->Arg(16)->Arg(64)->Arg(256);

void BM_TableauMeasure(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    stab::Tableau t(n);
    Rng rng(1);
    int q = 0;
    for (auto _ : state) {
        t.h(q);
        benchmark::DoNotOptimize(t.measure_z(q, rng));
        q = (q + 1) % n;
    }
}
BENCHMARK(BM_TableauMeasure)->Arg(16)->Arg(64)->Arg(256);

void BM_RecoveryCycleTableau(benchmark::State& state) {
    Rng rng(2);
    stab::Tableau sim(12);
    TableauEngine eng(sim, {}, &rng);
    const auto block = steane::CodeBlock::contiguous(0);
    const std::vector<int> anc = {7, 8, 9, 10, 11};
    steane::encode_logical(eng, block, 0);
    for (auto _ : state) {
        steane::recovery_cycle(eng, block, steane::Workspace{anc}, steane::Method::Shor);
    }
}
BENCHMARK(BM_RecoveryCycleTableau);

void BM_MemoryTrial(benchmark::State& state) {
    uint64_t trial = 0;
    long failures = 0;
    for (auto _ : state) {
        Rng rng = Rng::stream(1, 0, trial++);
        failures += experiments::memory_trial(rng, 1e-3, 1e-3, 1, steane::Method::Shor);
    }
    benchmark::DoNotOptimize(failures);
}
BENCHMARK(BM_MemoryTrial);

void BM_XorTrial(benchmark::State& state) {
    uint64_t trial = 0;
    long failures = 0;
    for (auto _ : state) {
        Rng rng = Rng::stream(1, 0, trial++);
        failures += experiments::xor_trial(rng, 1e-3, 8, steane::Method::Shor);
    }
    benchmark::DoNotOptimize(failures);
}
BENCHMARK(BM_XorTrial);

}  // namespace

BENCHMARK_MAIN();
