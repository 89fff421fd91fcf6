// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "ffpit/arithmetize.hpp"
#include "ffpit/circuit.hpp"

using namespace ffpit;

namespace {

BoolCircuit chain_circuit(uint32_t gates) {
    std::mt19937_64 rng(42);
    BoolCircuitBuilder b(16);
    auto ref = [&](size_t built) {
        const uint64_t w = rng() % (16 + built);
        return w < 16 ? Ref::input(uint32_t(w)) : Ref::gate(uint32_t(w - 16));
    };
    for (uint32_t i = 0; i < gates; ++i)
        b.add_gate((rng() & 1) ? BoolOp::And : BoolOp::Or, std::vector<Ref>{ref(i), ref(i)});
    return b.build({Ref::gate(gates - 1)});
}

}  // namespace

static void BoolEval(benchmark::State& state) {
    const BoolCircuit c = chain_circuit(uint32_t(state.range(0)));
    std::vector<uint8_t> in(16, 1), scratch;
    for (auto _ : state) {
        c.eval_all(in, scratch);
        benchmark::DoNotOptimize(scratch.back());
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * state.range(0));
}
BENCHMARK(BoolEval)->Arg(1'000)->Arg(10'000)->Arg(100'000);

static void ArithEval(benchmark::State& state) {
    const FieldSpec f3(3, 1);
    const auto [a, report] = arithmetize_circuit(chain_circuit(uint32_t(state.range(0))), f3);
    std::vector<uint32_t> in(16, 1), scratch;
    for (auto _ : state) {
        a.eval_all_indices(in, scratch);
        benchmark::DoNotOptimize(scratch.back());
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(a.num_gates()));
}
BENCHMARK(ArithEval)->Arg(1'000)->Arg(10'000)->Arg(100'000);

static void Arithmetize(benchmark::State& state) {
    const BoolCircuit c = chain_circuit(uint32_t(state.range(0)));
    const FieldSpec f2(2, 1);
    for (auto _ : state) {
        auto [a, report] = arithmetize_circuit(c, f2);
        benchmark::DoNotOptimize(a.num_gates());
    }
}
BENCHMARK(Arithmetize)->Arg(1'000)->Arg(10'000);
