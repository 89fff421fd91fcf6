// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the test suites: seeded random circuit generators
// and the slow-but-obvious oracles the fast paths are checked against.

#ifndef FFPIT_TESTS_TEST_UTIL_HPP
#define FFPIT_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "ffpit/circuit.hpp"
#include "ffpit/gf.hpp"

namespace ffpit::testutil {

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(uint64_t seed) : engine(seed) {}
    uint64_t next(uint64_t bound) { return engine() % bound; }
    bool flip() { return (engine() & 1u) != 0; }
};

inline Ref random_ref(Rng& rng, uint32_t num_inputs, size_t gates_so_far) {
    const uint64_t pool = num_inputs + gates_so_far;
    const uint64_t w = rng.next(pool);
    return w < num_inputs ? Ref::input(uint32_t(w)) : Ref::gate(uint32_t(w - num_inputs));
}

/// Random bounded-fan-in boolean circuit with 1..max_inputs inputs and
/// 1..max_gates gates; outputs are 1..3 random wires.
inline BoolCircuit random_bool_circuit(uint64_t seed, uint32_t max_inputs, uint32_t max_gates) {
    Rng rng(seed);
    const uint32_t inputs = 1 + uint32_t(rng.next(max_inputs));
    const uint32_t gates = 1 + uint32_t(rng.next(max_gates));
    BoolCircuitBuilder b(inputs);
    for (uint32_t i = 0; i < gates; ++i) {
        switch (rng.next(10)) {
            case 0: b.add_gate(BoolOp::Not, std::vector<Ref>{random_ref(rng, inputs, i)}); break;
            case 1: b.add_gate(BoolOp::Const0, {}); break;
            case 2: b.add_gate(BoolOp::Const1, {}); break;
            default: {
                const BoolOp op = rng.flip() ? BoolOp::And : BoolOp::Or;
                b.add_gate(op, std::vector<Ref>{random_ref(rng, inputs, i),
                                                random_ref(rng, inputs, i)});
            }
        }
    }
    const uint32_t num_outputs = 1 + uint32_t(rng.next(3));
    std::vector<Ref> outs;
    for (uint32_t i = 0; i < num_outputs; ++i) outs.push_back(random_ref(rng, inputs, gates));
    return b.build(std::move(outs));
}

/// Random unbounded-fan-in circuit with AND/OR fan-in up to max_fanin.
inline BoolCircuit random_unbounded_circuit(uint64_t seed, uint32_t max_inputs, uint32_t max_gates,
                                            uint32_t max_fanin) {
    Rng rng(seed);
    const uint32_t inputs = 1 + uint32_t(rng.next(max_inputs));
    const uint32_t gates = 1 + uint32_t(rng.next(max_gates));
    BoolCircuitBuilder b(inputs, FaninMode::Unbounded);
    for (uint32_t i = 0; i < gates; ++i) {
        if (rng.next(8) == 0) {
            b.add_gate(BoolOp::Not, std::vector<Ref>{random_ref(rng, inputs, i)});
            continue;
        }
        const uint32_t fanin = 1 + uint32_t(rng.next(max_fanin));
        std::vector<Ref> args;
        for (uint32_t j = 0; j < fanin; ++j) args.push_back(random_ref(rng, inputs, i));
        b.add_gate(rng.flip() ? BoolOp::And : BoolOp::Or, args);
    }
    return b.build({Ref::gate(gates - 1)});
}

/// Random arithmetic circuit over the given field.
inline ArithCircuit random_arith_circuit(uint64_t seed, const FieldSpec& field, uint32_t max_inputs,
                                         uint32_t max_gates) {
    Rng rng(seed);
    const uint32_t inputs = 1 + uint32_t(rng.next(max_inputs));
    const uint32_t gates = 1 + uint32_t(rng.next(max_gates));
    ArithCircuitBuilder b(field, inputs);
    for (uint32_t i = 0; i < gates; ++i) {
        switch (rng.next(8)) {
            case 0: b.const_gate(uint32_t(rng.next(field.q()))); break;
            case 1:
            case 2: b.add(random_ref(rng, inputs, i), random_ref(rng, inputs, i)); break;
            case 3:
            case 4: b.sub(random_ref(rng, inputs, i), random_ref(rng, inputs, i)); break;
            default: b.mul(random_ref(rng, inputs, i), random_ref(rng, inputs, i)); break;
        }
    }
    return b.build({random_ref(rng, inputs, gates)});
}

/// All 0/1 assignments of the given width, in counting order.
inline std::vector<std::vector<uint8_t>> all_bit_assignments(uint32_t width) {
    std::vector<std::vector<uint8_t>> out;
    const uint64_t total = uint64_t(1) << width;
    for (uint64_t a = 0; a < total; ++a) {
        std::vector<uint8_t> bits(width);
        for (uint32_t i = 0; i < width; ++i) bits[i] = (a >> i) & 1u;
        out.push_back(std::move(bits));
    }
    return out;
}

/// Repeated-multiplication power, the oracle for square-and-multiply.
inline FieldElement slow_pow(const FieldElement& a, uint64_t e) {
    FieldElement r = a.field().one();
    for (uint64_t i = 0; i < e; ++i) r = r * a;
    return r;
}

}  // namespace ffpit::testutil

#endif  // FFPIT_TESTS_TEST_UTIL_HPP
