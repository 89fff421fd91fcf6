// SPDX-License-Identifier: Apache-2.0

#include "ffpit/gadgets.hpp"

#include <stdexcept>

namespace ffpit::gadgets {

Ref xor_(BoolCircuitBuilder& b, Ref x, Ref y) {
    return b.or_(b.and_(x, b.not_(y)), b.and_(b.not_(x), y));
}

Ref eq(BoolCircuitBuilder& b, Ref x, Ref y) {
    return b.not_(xor_(b, x, y));
}

Ref mux(BoolCircuitBuilder& b, Ref sel, Ref t, Ref f) {
    return b.or_(b.and_(sel, t), b.and_(b.not_(sel), f));
}

std::vector<Ref> mux_bits(BoolCircuitBuilder& b, Ref sel, std::span<const Ref> t,
                          std::span<const Ref> f) {
    if (t.size() != f.size()) throw std::invalid_argument("mux_bits: width mismatch");
    const Ref nsel = b.not_(sel);
    std::vector<Ref> out;
    out.reserve(t.size());
    for (size_t i = 0; i < t.size(); ++i)
        out.push_back(b.or_(b.and_(sel, t[i]), b.and_(nsel, f[i])));
    return out;
}

Ref all_zero(BoolCircuitBuilder& b, std::span<const Ref> bits) {
    std::vector<Ref> negs;
    negs.reserve(bits.size());
    for (Ref r : bits) negs.push_back(b.not_(r));
    return b.and_many(negs);
}

Ref eq_bits(BoolCircuitBuilder& b, std::span<const Ref> x, std::span<const Ref> y) {
    if (x.size() != y.size()) throw std::invalid_argument("eq_bits: width mismatch");
    std::vector<Ref> eqs;
    eqs.reserve(x.size());
    for (size_t i = 0; i < x.size(); ++i) eqs.push_back(eq(b, x[i], y[i]));
    return b.and_many(eqs);
}

Ref eq_const(BoolCircuitBuilder& b, std::span<const Ref> bits, uint64_t value) {
    if (bits.size() < 64 && value >> bits.size()) return b.const0();  // cannot match
    std::vector<Ref> terms;
    terms.reserve(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        const bool bit = (value >> (bits.size() - 1 - i)) & 1u;
        terms.push_back(bit ? bits[i] : b.not_(bits[i]));
    }
    return b.and_many(terms);
}

Ref lt_bits(BoolCircuitBuilder& b, std::span<const Ref> x, std::span<const Ref> y) {
    if (x.size() != y.size()) throw std::invalid_argument("lt_bits: width mismatch");
    // MSB-to-LSB scan: lt |= eq_prefix & !x_i & y_i
    Ref lt = b.const0();
    Ref eq_prefix = b.const1();
    for (size_t i = 0; i < x.size(); ++i) {
        lt = b.or_(lt, b.and_(eq_prefix, b.and_(b.not_(x[i]), y[i])));
        eq_prefix = b.and_(eq_prefix, eq(b, x[i], y[i]));
    }
    return lt;
}

Ref leq_const(BoolCircuitBuilder& b, std::span<const Ref> bits, uint64_t value) {
    if (bits.size() < 64 && value >= (uint64_t(1) << bits.size())) return b.const1();
    // gt = exists i: prefix equal, bits[i]=1 while value bit is 0
    Ref gt = b.const0();
    Ref eq_prefix = b.const1();
    for (size_t i = 0; i < bits.size(); ++i) {
        const bool vbit = (value >> (bits.size() - 1 - i)) & 1u;
        if (!vbit) gt = b.or_(gt, b.and_(eq_prefix, bits[i]));
        eq_prefix = b.and_(eq_prefix, vbit ? bits[i] : b.not_(bits[i]));
    }
    return b.not_(gt);
}

}  // namespace ffpit::gadgets
