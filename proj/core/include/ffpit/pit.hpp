// SPDX-License-Identifier: Apache-2.0
//
// Polynomial identity testing over F(q): exhaustive and sampling
// deciders, the structured valid-encoding strategy, and a symbolic
// canonical form. The primary notion of "zero" is functional: zero at
// every point of F(q)^m. A nonzero formal polynomial such as x^q - x can
// still be the zero function; canonical reduction modulo x_i^q - x_i
// identifies the functional class.

#ifndef FFPIT_PIT_HPP
#define FFPIT_PIT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffpit/circuit.hpp"
#include "ffpit/reduction.hpp"

namespace ffpit {

enum class PitOutcome : uint8_t { IdenticallyZero, NonzeroWitness, Inconclusive };
enum class PitMethod : uint8_t { Exhaustive, Symbolic, Structured, UniformSampling };

std::string_view pit_outcome_name(PitOutcome o);
std::string_view pit_method_name(PitMethod m);

struct PitVerdict {
    PitOutcome outcome;
    PitMethod method;
    std::vector<uint32_t> witness;  // element indices, one per input
    std::optional<FieldElement> witness_value;
    uint64_t trials = 0;
    bool full_coverage = false;  // structured strategy walked every pair
    std::string note;
};

/* Complete decision by enumerating all q^inputs points in lexicographic
   order; a witness, when one exists, is the lexicographically first.
   Throws when q^inputs exceeds `budget` evaluations. Every witness is
   re-verified by evaluation before it is returned. */
PitVerdict exhaustive_test(const ArithCircuit& c, uint64_t budget = uint64_t(1) << 24);

struct SampleStrategy {
    enum class Kind : uint8_t { Uniform, ValidEncodings } kind = Kind::Uniform;
    const ReductionBundle* bundle = nullptr;  // required for ValidEncodings

    static SampleStrategy uniform() { return {}; }
    static SampleStrategy valid_encodings(const ReductionBundle& b) {
        return {Kind::ValidEncodings, &b};
    }
};

/* Uniform: independent points derived from (seed, trial index), fully
   reproducible and schedule-independent. ValidEncodings: walks the
   pairs (encode(f), unit y-vector) for every valid instance f of the
   bundle's profile; when the walk covers all of them and q = 2 the
   verdict IdenticallyZero(structured) is justified by the bundle's
   structure (A* = H*G, G = V on binary points, H linear in y), otherwise
   the tester stays Inconclusive. */
PitVerdict sample_test(const ArithCircuit& c, const SampleStrategy& strategy, uint64_t trials,
                       uint64_t seed);

/* Multivariate polynomial in canonical sparse form: exponent vectors map
   to nonzero coefficients; canonical means every exponent was reduced
   modulo the relations x_i^q = x_i. The reduced form is zero exactly
   when the circuit computes the zero function. */
class SparsePoly {
public:
    SparsePoly(FieldSpec field, uint32_t arity);

    static SparsePoly constant(const FieldSpec& field, uint32_t value_index, uint32_t arity);
    static SparsePoly variable(const FieldSpec& field, uint32_t var, uint32_t arity);

    const FieldSpec& field() const { return field_; }
    uint32_t arity() const { return arity_; }
    const std::map<std::vector<uint32_t>, uint32_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    SparsePoly add(const SparsePoly& o) const;
    SparsePoly sub(const SparsePoly& o) const;
    SparsePoly mul(const SparsePoly& o, uint64_t term_budget, bool reduce) const;

    /// Reduce every exponent modulo x^q = x; idempotent.
    SparsePoly canonicalized() const;

    /// Fix one variable to a field value; the result keeps the arity but
    /// the variable no longer occurs.
    SparsePoly substituted(uint32_t var, uint32_t value_index) const;

    uint32_t eval_indices(std::span<const uint32_t> point) const;
    std::string to_string() const;

private:
    void insert_term(std::vector<uint32_t> exps, uint32_t coeff);
    FieldSpec field_;
    uint32_t arity_;
    std::map<std::vector<uint32_t>, uint32_t> terms_;
};

struct TermBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bottom-up expansion with x^q -> x reduction at every step.
SparsePoly symbolic_canonical(const ArithCircuit& c, uint64_t term_budget = 1'000'000);
/// Same expansion without the reduction: the formal polynomial.
SparsePoly symbolic_formal(const ArithCircuit& c, uint64_t term_budget = 1'000'000);

/// Complete verdict from the canonical form; a nonzero form yields a
/// witness found by coordinate descent and re-verified on the circuit.
PitVerdict symbolic_test(const ArithCircuit& c, uint64_t term_budget = 1'000'000);

/// Re-evaluate the circuit at an assignment (witness validation).
FieldElement verify_witness(const ArithCircuit& c, std::span<const FieldElement> assignment);
uint32_t verify_witness_indices(const ArithCircuit& c, std::span<const uint32_t> assignment);

/// A NonzeroWitness verdict must re-verify: evaluating the circuit at the
/// witness yields its claimed nonzero value. A mismatch (a tampered or
/// stale witness) is an internal-consistency error, raised as
/// std::logic_error.
void assert_witness_verifies(const ArithCircuit& c, const PitVerdict& v);

}  // namespace ffpit

#endif  // FFPIT_PIT_HPP
