// SPDX-License-Identifier: Apache-2.0
//
// Gate-by-gate compilation of boolean circuits into arithmetic circuits
// over F(q) that agree with them on every 0/1 assignment, plus the R(x)
// booleanness gadget.

#ifndef FFPIT_ARITHMETIZE_HPP
#define FFPIT_ARITHMETIZE_HPP

#include <cstdint>
#include <utility>

#include "ffpit/circuit.hpp"

namespace ffpit {

struct Rational {
    int64_t num = 0;
    int64_t den = 1;
    double as_double() const { return den ? double(num) / double(den) : 0.0; }
};

/* Certificate that one arithmetization run stayed within the committed
   size and depth bounds. Bounded fan-in: size <= 4*size + 1 and
   depth <= 3*depth + 1 (an OR costs four gates and three levels; the +1
   is the shared constant). Unbounded fan-in: product trees are balanced,
   so depth <= depth_constant * depth * ceil(log2(max fan-in)) + 1 with
   depth_constant = 4. */
struct ArithmetizationReport {
    CircuitMetrics source_metrics;
    CircuitMetrics target_metrics;
    Rational size_ratio;
    Rational depth_ratio;
    FaninMode mode = FaninMode::Bounded;
    uint32_t max_fanin = 2;
    uint32_t depth_constant = 3;  // documented c_d; 4 in unbounded mode

    bool size_bound_holds() const;
    bool depth_bound_holds() const;
};

/// AND -> a*b, OR -> 1-(1-a)(1-b), NOT -> 1-a, CONST0/1 -> field 0/1.
/// Requires bounded fan-in input.
std::pair<ArithCircuit, ArithmetizationReport> arithmetize_circuit(const BoolCircuit& c,
                                                                   const FieldSpec& field);

/// Unbounded variant: fan-in-w AND becomes a balanced product tree and
/// fan-in-w OR becomes 1 - prod(1 - a_i).
std::pair<ArithCircuit, ArithmetizationReport> unbounded_arithmetize(const BoolCircuit& c,
                                                                     const FieldSpec& field);

/// R(x) = 1 - (x(x-1))^(q-1): one input, one output; nonzero exactly on
/// {0,1}, where it equals 1. The power uses a square-and-multiply chain.
ArithCircuit build_R(const FieldSpec& field);

}  // namespace ffpit

#endif  // FFPIT_ARITHMETIZE_HPP
