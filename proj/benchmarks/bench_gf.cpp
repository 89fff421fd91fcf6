// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "ffpit/gf.hpp"

using namespace ffpit;

static void FieldMulTable(benchmark::State& state) {
    const FieldSpec f(3, 2);
    uint32_t a = 1, b = 2;
    for (auto _ : state) {
        a = f.mul_idx(a, b);
        b = f.add_idx(b, 1 % f.q());
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(FieldMulTable);

static void FieldMulGeneric(benchmark::State& state) {
    // q = 3^7 = 2187 sits above the table cap
    const FieldSpec f(3, 7);
    uint32_t a = 1, b = 2;
    for (auto _ : state) {
        a = f.mul_idx(a, b);
        b = (b + 1) % f.q();
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(FieldMulGeneric);

static void FieldPow(benchmark::State& state) {
    const FieldSpec f(2, 3);
    for (auto _ : state) {
        for (uint32_t v = 1; v < f.q(); ++v) benchmark::DoNotOptimize(f.pow_idx(v, f.q() - 1));
    }
}
BENCHMARK(FieldPow);
