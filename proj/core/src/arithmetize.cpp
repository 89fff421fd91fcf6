// SPDX-License-Identifier: Apache-2.0

#include "ffpit/arithmetize.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffpit {

bool ArithmetizationReport::size_bound_holds() const {
    if (mode == FaninMode::Unbounded) return true;  // no size commitment beyond O(fanin)
    return target_metrics.size <= 4 * source_metrics.size + 1;
}

bool ArithmetizationReport::depth_bound_holds() const {
    uint64_t log_fanin = 1;
    while ((uint64_t(1) << log_fanin) < max_fanin) ++log_fanin;
    if (mode == FaninMode::Bounded)
        return target_metrics.depth <= 3 * source_metrics.depth + 1;
    return target_metrics.depth <= uint64_t(depth_constant) * source_metrics.depth * log_fanin + 1;
}

namespace {

ArithmetizationReport make_report(const BoolCircuit& src, const ArithCircuit& dst, FaninMode mode,
                                  uint32_t max_fanin) {
    ArithmetizationReport r;
    r.source_metrics = src.metrics();
    r.target_metrics = dst.metrics();
    r.size_ratio = {int64_t(r.target_metrics.size), int64_t(std::max<uint64_t>(r.source_metrics.size, 1))};
    r.depth_ratio = {int64_t(r.target_metrics.depth), int64_t(std::max<uint64_t>(r.source_metrics.depth, 1))};
    r.mode = mode;
    r.max_fanin = max_fanin;
    r.depth_constant = mode == FaninMode::Bounded ? 3 : 4;
    if (!r.size_bound_holds() || !r.depth_bound_holds())
        throw std::logic_error("arithmetization exceeded its committed size/depth bounds");
    return r;
}

ArithCircuit translate(const BoolCircuit& c, const FieldSpec& field) {
    ArithCircuitBuilder b(field, c.num_inputs());
    const Ref one = b.constant(1u);
    std::vector<Ref> gate_out(c.num_gates(), one);
    auto val = [&](Ref r) { return r.is_input() ? Ref::input(r.index()) : gate_out[r.index()]; };

    for (size_t i = 0; i < c.num_gates(); ++i) {
        const auto args = c.gate_args(i);
        switch (c.gate_op(i)) {
            case BoolOp::And: {
                if (args.size() == 2) {
                    gate_out[i] = b.mul(val(args[0]), val(args[1]));
                } else {
                    std::vector<Ref> vs;
                    vs.reserve(args.size());
                    for (Ref r : args) vs.push_back(val(r));
                    gate_out[i] = b.mul_many(vs);
                }
                break;
            }
            case BoolOp::Or: {
                // 1 - prod(1 - a_i)
                std::vector<Ref> vs;
                vs.reserve(args.size());
                for (Ref r : args) vs.push_back(b.sub(one, val(r)));
                gate_out[i] = b.sub(one, b.mul_many(vs));
                break;
            }
            case BoolOp::Not:
                gate_out[i] = b.sub(one, val(args[0]));
                break;
            case BoolOp::Const0:
                gate_out[i] = b.constant(0u);
                break;
            case BoolOp::Const1:
                gate_out[i] = one;
                break;
        }
    }
    std::vector<Ref> outs;
    outs.reserve(c.outputs().size());
    for (Ref r : c.outputs()) outs.push_back(val(r));
    return b.build(std::move(outs));
}

uint32_t max_fanin_of(const BoolCircuit& c) {
    uint32_t m = 2;
    for (size_t i = 0; i < c.num_gates(); ++i)
        m = std::max(m, static_cast<uint32_t>(c.gate_args(i).size()));
    return m;
}

}  // namespace

std::pair<ArithCircuit, ArithmetizationReport> arithmetize_circuit(const BoolCircuit& c,
                                                                   const FieldSpec& field) {
    if (c.fanin_mode() != FaninMode::Bounded)
        throw std::invalid_argument("arithmetize_circuit expects a bounded fan-in circuit");
    ArithCircuit a = translate(c, field);
    ArithmetizationReport r = make_report(c, a, FaninMode::Bounded, 2);
    return {std::move(a), r};
}

std::pair<ArithCircuit, ArithmetizationReport> unbounded_arithmetize(const BoolCircuit& c,
                                                                     const FieldSpec& field) {
    ArithCircuit a = translate(c, field);
    ArithmetizationReport r = make_report(c, a, FaninMode::Unbounded, max_fanin_of(c));
    return {std::move(a), r};
}

ArithCircuit build_R(const FieldSpec& field) {
    ArithCircuitBuilder b(field, 1);
    const Ref x = b.input(0);
    const Ref one = b.constant(1u);
    const Ref t = b.mul(x, b.sub(x, one));  // x(x-1)

    // t^(q-1) by square-and-multiply
    uint32_t e = field.q() - 1;
    Ref result = one;
    Ref base = t;
    bool result_is_one = true;
    while (e > 0) {
        if (e & 1u) {
            result = result_is_one ? base : b.mul(result, base);
            result_is_one = false;
        }
        e >>= 1;
        if (e) base = b.mul(base, base);
    }
    return b.build({b.sub(one, result)});
}

}  // namespace ffpit
