// SPDX-License-Identifier: Apache-2.0

#include "ffpit/circuit.hpp"

#include <algorithm>

namespace ffpit {

// --- BoolCircuit ---------------------------------------------------------

void BoolCircuit::eval_all(std::span<const uint8_t> assignment, std::vector<uint8_t>& values) const {
    if (assignment.size() != num_inputs_)
        throw std::invalid_argument("assignment length does not match circuit inputs");
    values.resize(size_t(num_inputs_) + gates_.size());
    std::copy(assignment.begin(), assignment.end(), values.begin());
    uint8_t* gv = values.data() + num_inputs_;
    auto val = [&](Ref r) -> uint8_t {
        return r.is_input() ? values[r.index()] : gv[r.index()];
    };
    for (size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        const Ref* a = args_.data() + g.args_begin;
        uint8_t v = 0;
        switch (g.op) {
            case BoolOp::And:
                v = 1;
                for (uint32_t j = 0; j < g.args_count; ++j) v &= val(a[j]);
                break;
            case BoolOp::Or:
                v = 0;
                for (uint32_t j = 0; j < g.args_count; ++j) v |= val(a[j]);
                break;
            case BoolOp::Not:
                v = val(a[0]) ^ 1u;
                break;
            case BoolOp::Const0:
                v = 0;
                break;
            case BoolOp::Const1:
                v = 1;
                break;
        }
        gv[i] = v;
    }
}

std::vector<uint8_t> BoolCircuit::eval(std::span<const uint8_t> assignment) const {
    std::vector<uint8_t> values;
    eval_all(assignment, values);
    std::vector<uint8_t> out;
    out.reserve(outputs_.size());
    for (Ref r : outputs_) out.push_back(value_of(values, r));
    return out;
}

namespace {

template <typename ForEachArg>
CircuitMetrics compute_metrics(size_t num_gates, std::span<const Ref> outputs, ForEachArg&& for_each_arg) {
    std::vector<uint64_t> depth(num_gates, 0);
    for (size_t i = 0; i < num_gates; ++i) {
        uint64_t d = 0;
        for_each_arg(i, [&](Ref r) {
            d = std::max(d, r.is_input() ? uint64_t(0) : depth[r.index()]);
        });
        depth[i] = d + 1;  // constants have no args and get depth 1
    }
    CircuitMetrics m;
    m.size = num_gates;
    for (Ref r : outputs)
        if (r.is_gate()) m.depth = std::max(m.depth, depth[r.index()]);
    return m;
}

}  // namespace

CircuitMetrics BoolCircuit::metrics() const {
    return compute_metrics(gates_.size(), outputs_, [&](size_t i, auto&& fn) {
        for (Ref r : gate_args(i)) fn(r);
    });
}

// --- ArithCircuit --------------------------------------------------------

void ArithCircuit::eval_all_indices(std::span<const uint32_t> assignment,
                                    std::vector<uint32_t>& values) const {
    if (assignment.size() != num_inputs_)
        throw std::invalid_argument("assignment length does not match circuit inputs");
    values.resize(size_t(num_inputs_) + gates_.size());
    std::copy(assignment.begin(), assignment.end(), values.begin());
    uint32_t* gv = values.data() + num_inputs_;
    const FieldSpec::Data& fd = field_.data();
    auto val = [&](Ref r) -> uint32_t {
        return r.is_input() ? values[r.index()] : gv[r.index()];
    };
    if (fd.has_tables) {
        const uint32_t q = fd.q;
        const uint32_t* addt = fd.add_t.data();
        const uint32_t* subt = fd.sub_t.data();
        const uint32_t* mult = fd.mul_t.data();
        for (size_t i = 0; i < gates_.size(); ++i) {
            const Gate& g = gates_[i];
            uint32_t v;
            switch (g.op) {
                case ArithOp::Add: v = addt[size_t(val(g.a)) * q + val(g.b)]; break;
                case ArithOp::Sub: v = subt[size_t(val(g.a)) * q + val(g.b)]; break;
                case ArithOp::Mul: v = mult[size_t(val(g.a)) * q + val(g.b)]; break;
                default: v = g.const_index; break;
            }
            gv[i] = v;
        }
    } else {
        for (size_t i = 0; i < gates_.size(); ++i) {
            const Gate& g = gates_[i];
            uint32_t v;
            switch (g.op) {
                case ArithOp::Add: v = field_.add_idx(val(g.a), val(g.b)); break;
                case ArithOp::Sub: v = field_.sub_idx(val(g.a), val(g.b)); break;
                case ArithOp::Mul: v = field_.mul_idx(val(g.a), val(g.b)); break;
                default: v = g.const_index; break;
            }
            gv[i] = v;
        }
    }
}

std::vector<uint32_t> ArithCircuit::eval_indices(std::span<const uint32_t> assignment) const {
    std::vector<uint32_t> values;
    eval_all_indices(assignment, values);
    std::vector<uint32_t> out;
    out.reserve(outputs_.size());
    for (Ref r : outputs_) out.push_back(value_of(values, r));
    return out;
}

std::vector<FieldElement> ArithCircuit::eval(std::span<const FieldElement> assignment) const {
    std::vector<uint32_t> idx;
    idx.reserve(assignment.size());
    for (const FieldElement& e : assignment) {
        if (e.field() != field_) throw FieldMismatchError("assignment element from a foreign field");
        idx.push_back(e.index());
    }
    std::vector<FieldElement> out;
    for (uint32_t v : eval_indices(idx)) out.emplace_back(field_, v);
    return out;
}

CircuitMetrics ArithCircuit::metrics() const {
    return compute_metrics(gates_.size(), outputs_, [&](size_t i, auto&& fn) {
        const Gate& g = gates_[i];
        if (g.op != ArithOp::Const) {
            fn(g.a);
            fn(g.b);
        }
    });
}

// --- BoolCircuitBuilder ----------------------------------------------------

BoolCircuitBuilder::BoolCircuitBuilder(uint32_t num_inputs, FaninMode mode) {
    c_.num_inputs_ = num_inputs;
    c_.mode_ = mode;
}

Ref BoolCircuitBuilder::check(Ref r) const {
    if (r.is_input()) {
        if (r.index() >= c_.num_inputs_) throw std::out_of_range("input reference out of range");
    } else {
        if (r.index() >= c_.gates_.size()) throw std::out_of_range("gate reference out of range");
    }
    return r;
}

Ref BoolCircuitBuilder::input(uint32_t i) const {
    if (i >= c_.num_inputs_) throw std::out_of_range("input reference out of range");
    return Ref::input(i);
}

Ref BoolCircuitBuilder::add_gate(BoolOp op, std::span<const Ref> args) {
    switch (op) {
        case BoolOp::And:
        case BoolOp::Or:
            if (c_.mode_ == FaninMode::Bounded ? args.size() != 2 : args.empty())
                throw std::invalid_argument("bad AND/OR fan-in for circuit mode");
            break;
        case BoolOp::Not:
            if (args.size() != 1) throw std::invalid_argument("NOT takes exactly one operand");
            break;
        case BoolOp::Const0:
        case BoolOp::Const1:
            if (!args.empty()) throw std::invalid_argument("constant gates take no operands");
            break;
    }
    for (Ref r : args) check(r);
    BoolCircuit::Gate g;
    g.op = op;
    g.args_begin = static_cast<uint32_t>(c_.args_.size());
    g.args_count = static_cast<uint32_t>(args.size());
    c_.args_.insert(c_.args_.end(), args.begin(), args.end());
    c_.gates_.push_back(g);
    return Ref::gate(static_cast<uint32_t>(c_.gates_.size() - 1));
}

Ref BoolCircuitBuilder::const0() {
    if (!cached0_) cached0_ = add_gate(BoolOp::Const0, {});
    return *cached0_;
}

Ref BoolCircuitBuilder::const1() {
    if (!cached1_) cached1_ = add_gate(BoolOp::Const1, {});
    return *cached1_;
}

Ref BoolCircuitBuilder::not_(Ref a) {
    const Ref args[1] = {a};
    return add_gate(BoolOp::Not, args);
}

Ref BoolCircuitBuilder::and_(Ref a, Ref b) {
    const Ref args[2] = {a, b};
    return add_gate(BoolOp::And, args);
}

Ref BoolCircuitBuilder::or_(Ref a, Ref b) {
    const Ref args[2] = {a, b};
    return add_gate(BoolOp::Or, args);
}

Ref BoolCircuitBuilder::and_many(std::span<const Ref> xs) {
    if (xs.empty()) return const1();
    if (xs.size() == 1) return check(xs[0]);
    if (c_.mode_ == FaninMode::Unbounded) return add_gate(BoolOp::And, xs);
    std::vector<Ref> level(xs.begin(), xs.end());
    while (level.size() > 1) {
        std::vector<Ref> next;
        next.reserve((level.size() + 1) / 2);
        for (size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(and_(level[i], level[i + 1]));
        if (level.size() % 2) next.push_back(level.back());
        level = std::move(next);
    }
    return level[0];
}

Ref BoolCircuitBuilder::or_many(std::span<const Ref> xs) {
    if (xs.empty()) return const0();
    if (xs.size() == 1) return check(xs[0]);
    if (c_.mode_ == FaninMode::Unbounded) return add_gate(BoolOp::Or, xs);
    std::vector<Ref> level(xs.begin(), xs.end());
    while (level.size() > 1) {
        std::vector<Ref> next;
        next.reserve((level.size() + 1) / 2);
        for (size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(or_(level[i], level[i + 1]));
        if (level.size() % 2) next.push_back(level.back());
        level = std::move(next);
    }
    return level[0];
}

std::vector<Ref> BoolCircuitBuilder::append(const BoolCircuit& sub, std::span<const Ref> bindings) {
    if (bindings.size() != sub.num_inputs())
        throw std::invalid_argument("append: binding count does not match subcircuit inputs");
    if (sub.fanin_mode() == FaninMode::Unbounded && c_.mode_ == FaninMode::Bounded)
        throw std::invalid_argument("append: cannot inline an unbounded circuit into a bounded one");
    for (Ref r : bindings) check(r);
    const uint32_t offset = static_cast<uint32_t>(c_.gates_.size());
    auto remap = [&](Ref r) {
        return r.is_input() ? bindings[r.index()] : Ref::gate(offset + r.index());
    };
    for (size_t i = 0; i < sub.num_gates(); ++i) {
        BoolCircuit::Gate g;
        g.op = sub.gate_op(i);
        g.args_begin = static_cast<uint32_t>(c_.args_.size());
        auto args = sub.gate_args(i);
        g.args_count = static_cast<uint32_t>(args.size());
        for (Ref r : args) c_.args_.push_back(remap(r));
        c_.gates_.push_back(g);
    }
    std::vector<Ref> outs;
    outs.reserve(sub.outputs().size());
    for (Ref r : sub.outputs()) outs.push_back(remap(r));
    return outs;
}

BoolCircuit BoolCircuitBuilder::build(std::vector<Ref> outputs) {
    if (outputs.empty()) throw std::invalid_argument("circuit needs at least one output");
    for (Ref r : outputs) check(r);
    c_.outputs_ = std::move(outputs);
    return std::move(c_);
}

// --- ArithCircuitBuilder ---------------------------------------------------

ArithCircuitBuilder::ArithCircuitBuilder(FieldSpec field, uint32_t num_inputs) : c_(std::move(field)) {
    c_.num_inputs_ = num_inputs;
}

Ref ArithCircuitBuilder::check(Ref r) const {
    if (r.is_input()) {
        if (r.index() >= c_.num_inputs_) throw std::out_of_range("input reference out of range");
    } else {
        if (r.index() >= c_.gates_.size()) throw std::out_of_range("gate reference out of range");
    }
    return r;
}

Ref ArithCircuitBuilder::input(uint32_t i) const {
    if (i >= c_.num_inputs_) throw std::out_of_range("input reference out of range");
    return Ref::input(i);
}

Ref ArithCircuitBuilder::const_gate(uint32_t element_index) {
    if (element_index >= c_.field_.q()) throw std::out_of_range("constant outside the field");
    ArithCircuit::Gate g;
    g.op = ArithOp::Const;
    g.const_index = element_index;
    c_.gates_.push_back(g);
    return Ref::gate(static_cast<uint32_t>(c_.gates_.size() - 1));
}

Ref ArithCircuitBuilder::constant(uint32_t element_index) {
    auto it = const_cache_.find(element_index);
    if (it != const_cache_.end()) return it->second;
    Ref r = const_gate(element_index);
    const_cache_.emplace(element_index, r);
    return r;
}

Ref ArithCircuitBuilder::constant(const FieldElement& e) {
    if (e.field() != c_.field_) throw FieldMismatchError("constant from a foreign field");
    return constant(e.index());
}

Ref ArithCircuitBuilder::binary(ArithOp op, Ref a, Ref b) {
    check(a);
    check(b);
    ArithCircuit::Gate g;
    g.op = op;
    g.a = a;
    g.b = b;
    c_.gates_.push_back(g);
    return Ref::gate(static_cast<uint32_t>(c_.gates_.size() - 1));
}

Ref ArithCircuitBuilder::add(Ref a, Ref b) { return binary(ArithOp::Add, a, b); }
Ref ArithCircuitBuilder::sub(Ref a, Ref b) { return binary(ArithOp::Sub, a, b); }
Ref ArithCircuitBuilder::mul(Ref a, Ref b) { return binary(ArithOp::Mul, a, b); }

Ref ArithCircuitBuilder::mul_many(std::span<const Ref> xs) {
    if (xs.empty()) return one();
    if (xs.size() == 1) return check(xs[0]);
    std::vector<Ref> level(xs.begin(), xs.end());
    while (level.size() > 1) {
        std::vector<Ref> next;
        next.reserve((level.size() + 1) / 2);
        for (size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(mul(level[i], level[i + 1]));
        if (level.size() % 2) next.push_back(level.back());
        level = std::move(next);
    }
    return level[0];
}

std::vector<Ref> ArithCircuitBuilder::append(const ArithCircuit& sub, std::span<const Ref> bindings) {
    if (sub.field() != c_.field_) throw FieldMismatchError("append: subcircuit over a different field");
    if (bindings.size() != sub.num_inputs())
        throw std::invalid_argument("append: binding count does not match subcircuit inputs");
    for (Ref r : bindings) check(r);
    const uint32_t offset = static_cast<uint32_t>(c_.gates_.size());
    auto remap = [&](Ref r) {
        return r.is_input() ? bindings[r.index()] : Ref::gate(offset + r.index());
    };
    for (size_t i = 0; i < sub.num_gates(); ++i) {
        ArithCircuit::Gate g = sub.gate(i);
        if (g.op != ArithOp::Const) {
            g.a = remap(g.a);
            g.b = remap(g.b);
        }
        c_.gates_.push_back(g);
    }
    std::vector<Ref> outs;
    outs.reserve(sub.outputs().size());
    for (Ref r : sub.outputs()) outs.push_back(remap(r));
    return outs;
}

ArithCircuit ArithCircuitBuilder::build(std::vector<Ref> outputs) {
    if (outputs.empty()) throw std::invalid_argument("circuit needs at least one output");
    for (Ref r : outputs) check(r);
    c_.outputs_ = std::move(outputs);
    return std::move(c_);
}

// --- compose ---------------------------------------------------------------

namespace {

template <typename Circuit, typename Builder>
Circuit compose_impl(Builder&& b, const Circuit& outer, const Circuit& inner,
                     const std::map<uint32_t, uint32_t>& wiring) {
    for (const auto& [oi, iv] : wiring) {
        if (oi >= outer.num_inputs()) throw std::invalid_argument("compose: wiring targets a missing outer input");
        if (iv >= inner.outputs().size()) throw std::invalid_argument("compose: wiring uses a missing inner output");
    }
    std::vector<Ref> inner_bindings;
    inner_bindings.reserve(inner.num_inputs());
    for (uint32_t i = 0; i < inner.num_inputs(); ++i) inner_bindings.push_back(Ref::input(i));
    const std::vector<Ref> inner_outs = b.append(inner, inner_bindings);

    std::vector<Ref> outer_bindings(outer.num_inputs(), Ref::input(0));
    uint32_t next_free = inner.num_inputs();
    for (uint32_t i = 0; i < outer.num_inputs(); ++i) {
        auto it = wiring.find(i);
        outer_bindings[i] = (it != wiring.end()) ? inner_outs[it->second] : Ref::input(next_free++);
    }
    return b.build(b.append(outer, outer_bindings));
}

uint32_t unwired_count(uint32_t outer_inputs, const std::map<uint32_t, uint32_t>& wiring) {
    return outer_inputs - static_cast<uint32_t>(wiring.size());
}

}  // namespace

BoolCircuit compose(const BoolCircuit& outer, const BoolCircuit& inner,
                    const std::map<uint32_t, uint32_t>& wiring) {
    if (outer.fanin_mode() != inner.fanin_mode())
        throw std::invalid_argument("compose: circuits have different fan-in modes");
    BoolCircuitBuilder b(inner.num_inputs() + unwired_count(outer.num_inputs(), wiring),
                         outer.fanin_mode());
    return compose_impl(b, outer, inner, wiring);
}

ArithCircuit compose(const ArithCircuit& outer, const ArithCircuit& inner,
                     const std::map<uint32_t, uint32_t>& wiring) {
    if (outer.field() != inner.field())
        throw FieldMismatchError("compose: circuits over different fields");
    ArithCircuitBuilder b(outer.field(), inner.num_inputs() + unwired_count(outer.num_inputs(), wiring));
    return compose_impl(b, outer, inner, wiring);
}

}  // namespace ffpit
