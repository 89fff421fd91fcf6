// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "ffpit/harness.hpp"

using namespace ffpit;

static void BuildBundleMini(benchmark::State& state) {
    const auto p = EncodingProfile::mini();
    const BoolCircuit d = synth_decider(p);
    const FieldSpec f2(2, 1);
    for (auto _ : state) {
        const ReductionBundle b = build_A_star(d, p, f2);
        benchmark::DoNotOptimize(b.A_star.num_gates());
    }
}
BENCHMARK(BuildBundleMini);

static void BuildBundlePaper2(benchmark::State& state) {
    const auto p = EncodingProfile::paper(2);
    const BoolCircuit d = synth_decider(p);
    const FieldSpec f2(2, 1);
    for (auto _ : state) {
        const ReductionBundle b = build_A_star(d, p, f2);
        benchmark::DoNotOptimize(b.A_star.num_gates());
    }
}
BENCHMARK(BuildBundlePaper2);

static void ExhaustiveMiniAStar(benchmark::State& state) {
    const auto p = EncodingProfile::mini();
    const FieldSpec f3(3, 1);
    const ReductionBundle b = build_A_star(synth_decider(p), p, f3);
    for (auto _ : state) {
        const PitVerdict v = exhaustive_test(b.A_star);
        benchmark::DoNotOptimize(v.outcome);
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * 19683 * int64_t(b.A_star.num_gates()));
}
BENCHMARK(ExhaustiveMiniAStar);

static void StructuredPaper2(benchmark::State& state) {
    const auto p = EncodingProfile::paper(2);
    const FieldSpec f2(2, 1);
    const ReductionBundle b = build_A_star(synth_decider(p), p, f2);
    for (auto _ : state) {
        const PitVerdict v = sample_test(b.A_star, SampleStrategy::valid_encodings(b), 1 << 20, 0);
        benchmark::DoNotOptimize(v.outcome);
    }
}
BENCHMARK(StructuredPaper2);

static void EncodeDecode(benchmark::State& state) {
    const auto p = EncodingProfile::paper(2);
    const auto instances = enumerate_instances(2);
    for (auto _ : state) {
        for (const auto& f : instances) {
            const BitString s = encode(f, p);
            benchmark::DoNotOptimize(decode(s).kind());
        }
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(instances.size()));
}
BENCHMARK(EncodeDecode);

BENCHMARK_MAIN();
