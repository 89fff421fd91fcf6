// SPDX-License-Identifier: Apache-2.0
//
// Gate-DAG intermediate representation for boolean and arithmetic
// circuits: evaluation, size/depth metrics, and composition.

#ifndef FFPIT_CIRCUIT_HPP
#define FFPIT_CIRCUIT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ffpit/gf.hpp"

namespace ffpit {

/// Reference to either a circuit input or an earlier gate's output.
/// Default-constructed refs are an invalid sentinel that builders reject.
class Ref {
public:
    Ref() = default;
    static Ref input(uint32_t i) { return Ref(i << 1); }
    static Ref gate(uint32_t i) { return Ref((i << 1) | 1u); }

    bool is_input() const { return (code_ & 1u) == 0; }
    bool is_gate() const { return (code_ & 1u) != 0; }
    uint32_t index() const { return code_ >> 1; }

    bool operator==(const Ref&) const = default;

private:
    explicit Ref(uint32_t code) : code_(code) {}
    uint32_t code_ = 0xffffffffu;
};

enum class BoolOp : uint8_t { And, Or, Not, Const0, Const1 };
enum class ArithOp : uint8_t { Add, Sub, Mul, Const };
enum class FaninMode : uint8_t { Bounded, Unbounded };

struct CircuitMetrics {
    uint64_t size = 0;   // gate count, inputs excluded
    uint64_t depth = 0;  // most gates on any input-to-output path
    bool operator==(const CircuitMetrics&) const = default;
};

/* Boolean circuit over AND/OR/NOT plus constant gates. Gates are stored
   in topological order: operands may only reference inputs or earlier
   gates. Bounded mode means AND/OR take exactly two operands and NOT
   one; unbounded mode allows AND/OR with any fan-in >= 1.

   Circuits are immutable once built; evaluation uses caller-provided or
   local scratch only, so shared circuits are safe to evaluate
   concurrently. */
class BoolCircuit {
public:
    struct Gate {
        BoolOp op;
        uint32_t args_begin;
        uint32_t args_count;
    };

    uint32_t num_inputs() const { return num_inputs_; }
    size_t num_gates() const { return gates_.size(); }
    FaninMode fanin_mode() const { return mode_; }
    BoolOp gate_op(size_t i) const { return gates_[i].op; }
    std::span<const Ref> gate_args(size_t i) const {
        return {args_.data() + gates_[i].args_begin, gates_[i].args_count};
    }
    std::span<const Ref> outputs() const { return outputs_; }

    /// Evaluate on a 0/1 assignment of length num_inputs().
    std::vector<uint8_t> eval(std::span<const uint8_t> assignment) const;

    /// Scratch-reusing form: `values` is resized to num_inputs() +
    /// num_gates() and holds every wire value afterwards.
    void eval_all(std::span<const uint8_t> assignment, std::vector<uint8_t>& values) const;
    uint8_t value_of(const std::vector<uint8_t>& values, Ref r) const {
        return values[r.is_input() ? r.index() : num_inputs_ + r.index()];
    }

    CircuitMetrics metrics() const;

private:
    friend class BoolCircuitBuilder;
    uint32_t num_inputs_ = 0;
    FaninMode mode_ = FaninMode::Bounded;
    std::vector<Gate> gates_;
    std::vector<Ref> args_;
    std::vector<Ref> outputs_;
};

/* Arithmetic circuit over +, -, * and constant gates, bound to one
   field. ADD/SUB/MUL are binary; constants carry a field element. Same
   topological-order and immutability rules as BoolCircuit. */
class ArithCircuit {
public:
    struct Gate {
        ArithOp op;
        Ref a = Ref::input(0);
        Ref b = Ref::input(0);
        uint32_t const_index = 0;  // element index for Const gates
    };

    const FieldSpec& field() const { return field_; }
    uint32_t num_inputs() const { return num_inputs_; }
    size_t num_gates() const { return gates_.size(); }
    const Gate& gate(size_t i) const { return gates_[i]; }
    std::span<const Ref> outputs() const { return outputs_; }

    std::vector<FieldElement> eval(std::span<const FieldElement> assignment) const;

    /// Index-valued fast path; `values` holds every wire value afterwards.
    void eval_all_indices(std::span<const uint32_t> assignment, std::vector<uint32_t>& values) const;
    uint32_t value_of(const std::vector<uint32_t>& values, Ref r) const {
        return values[r.is_input() ? r.index() : num_inputs_ + r.index()];
    }
    std::vector<uint32_t> eval_indices(std::span<const uint32_t> assignment) const;

    CircuitMetrics metrics() const;

private:
    friend class ArithCircuitBuilder;
    ArithCircuit(FieldSpec field) : field_(std::move(field)) {}
    FieldSpec field_;
    uint32_t num_inputs_ = 0;
    std::vector<Gate> gates_;
    std::vector<Ref> outputs_;
};

/* Builders accumulate gates and enforce the referencing rules as gates
   are added; build() freezes the result. and_many/or_many (and mul_many)
   emit balanced binary trees in bounded mode and a single wide gate in
   unbounded mode. const0()/const1() (and constant()) reuse one gate per
   distinct value created through the builder; append() copies
   subcircuits verbatim. */
class BoolCircuitBuilder {
public:
    explicit BoolCircuitBuilder(uint32_t num_inputs, FaninMode mode = FaninMode::Bounded);

    uint32_t num_inputs() const { return c_.num_inputs_; }
    size_t num_gates() const { return c_.gates_.size(); }

    Ref input(uint32_t i) const;
    Ref const0();
    Ref const1();
    Ref constant(bool value) { return value ? const1() : const0(); }
    Ref not_(Ref a);
    Ref and_(Ref a, Ref b);
    Ref or_(Ref a, Ref b);
    Ref and_many(std::span<const Ref> xs);  // empty -> const1
    Ref or_many(std::span<const Ref> xs);   // empty -> const0
    Ref add_gate(BoolOp op, std::span<const Ref> args);

    /// Inline a subcircuit: its inputs are bound to `bindings`, its gates
    /// are copied verbatim, and its output refs are returned remapped.
    std::vector<Ref> append(const BoolCircuit& sub, std::span<const Ref> bindings);

    BoolCircuit build(std::vector<Ref> outputs);

private:
    Ref check(Ref r) const;
    BoolCircuit c_;
    std::optional<Ref> cached0_, cached1_;
};

class ArithCircuitBuilder {
public:
    explicit ArithCircuitBuilder(FieldSpec field, uint32_t num_inputs);

    const FieldSpec& field() const { return c_.field_; }
    uint32_t num_inputs() const { return c_.num_inputs_; }
    size_t num_gates() const { return c_.gates_.size(); }

    Ref input(uint32_t i) const;
    Ref constant(uint32_t element_index);
    Ref constant(const FieldElement& e);
    /// Uncached constant gate; lets parsers and copiers keep duplicates.
    Ref const_gate(uint32_t element_index);
    Ref zero() { return constant(0u); }
    Ref one() { return constant(1u); }
    Ref add(Ref a, Ref b);
    Ref sub(Ref a, Ref b);
    Ref mul(Ref a, Ref b);
    Ref mul_many(std::span<const Ref> xs);  // empty -> one

    std::vector<Ref> append(const ArithCircuit& sub, std::span<const Ref> bindings);

    ArithCircuit build(std::vector<Ref> outputs);

private:
    Ref check(Ref r) const;
    Ref binary(ArithOp op, Ref a, Ref b);
    ArithCircuit c_;
    std::map<uint32_t, Ref> const_cache_;
};

/* Composition: feed `inner`'s outputs into `outer`'s inputs according to
   `wiring` (outer input index -> inner output index). The result is one
   DAG whose inputs are inner's inputs followed by the unwired outer
   inputs in ascending order; size(result) = size(outer) + size(inner). */
BoolCircuit compose(const BoolCircuit& outer, const BoolCircuit& inner,
                    const std::map<uint32_t, uint32_t>& wiring);
ArithCircuit compose(const ArithCircuit& outer, const ArithCircuit& inner,
                     const std::map<uint32_t, uint32_t>& wiring);

}  // namespace ffpit

#endif  // FFPIT_CIRCUIT_HPP
