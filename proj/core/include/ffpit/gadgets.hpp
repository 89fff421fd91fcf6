// SPDX-License-Identifier: Apache-2.0
//
// Small combinational building blocks for bounded-fan-in boolean
// circuits: mux, equality, and unsigned comparators over bit spans.
// Multi-bit spans are MSB-first throughout.

#ifndef FFPIT_GADGETS_HPP
#define FFPIT_GADGETS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ffpit/circuit.hpp"

namespace ffpit::gadgets {

Ref xor_(BoolCircuitBuilder& b, Ref x, Ref y);
Ref eq(BoolCircuitBuilder& b, Ref x, Ref y);
/// sel ? t : f
Ref mux(BoolCircuitBuilder& b, Ref sel, Ref t, Ref f);
std::vector<Ref> mux_bits(BoolCircuitBuilder& b, Ref sel, std::span<const Ref> t,
                          std::span<const Ref> f);

/// True when every bit is 0. Empty span yields const1.
Ref all_zero(BoolCircuitBuilder& b, std::span<const Ref> bits);

Ref eq_bits(BoolCircuitBuilder& b, std::span<const Ref> x, std::span<const Ref> y);
/// Bits equal the constant `value` (span is MSB-first).
Ref eq_const(BoolCircuitBuilder& b, std::span<const Ref> bits, uint64_t value);

/// Unsigned x < y over equal-length MSB-first spans. Empty spans compare
/// equal, so the result is const0.
Ref lt_bits(BoolCircuitBuilder& b, std::span<const Ref> x, std::span<const Ref> y);
/// Unsigned bits <= value.
Ref leq_const(BoolCircuitBuilder& b, std::span<const Ref> bits, uint64_t value);

}  // namespace ffpit::gadgets

#endif  // FFPIT_GADGETS_HPP
