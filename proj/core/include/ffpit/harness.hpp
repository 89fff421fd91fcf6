// SPDX-License-Identifier: Apache-2.0
//
// End-to-end pipeline: synthesize correct 3SAT decider circuits, mutate
// them, build the reduction, run the identity testers, cross-check
// everything against the brute-force oracle, and emit a report.

#ifndef FFPIT_HARNESS_HPP
#define FFPIT_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffpit/pit.hpp"
#include "ffpit/reduction.hpp"

namespace ffpit {

/// Raised when the pipeline's internal cross-checks fail; such failures
/// are bugs, not inputs, and the CLI maps them to exit code 2.
struct InternalConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

/* Decode-and-evaluate decider: one subcircuit per assignment of the
   profile's n variables checks whether every active clause is satisfied;
   the instance is accepted when some assignment works. TRUE/FALSE tags
   short-circuit the formula path. On valid encodings the result equals
   brute_force_sat; on invalid encodings the circuit simply reports the
   formula-path result. Throws when profile.n() exceeds `cap`. */
BoolCircuit synth_decider(const EncodingProfile& profile, uint32_t cap = 3);

enum class MutationOp : uint8_t {
    FlipGateKind,    // swap one AND <-> OR
    NegateOutput,    // wrap one output in a NOT
    RewireOperand,   // repoint one operand at another earlier wire
    StuckAt0,        // replace one gate by CONST0
    StuckAt1,        // replace one gate by CONST1
};

std::string_view mutation_op_name(MutationOp op);
MutationOp parse_mutation_op(std::string_view name);

struct MutationNote {
    MutationOp op;
    uint64_t seed;
    size_t location;          // gate or output index
    std::string description;  // human-readable summary of the change
};

/// One localized, seed-deterministic change.
std::pair<BoolCircuit, MutationNote> mutate(const BoolCircuit& c, MutationOp op, uint64_t seed);

/// Decider that disagrees with `base` on exactly one input string: the
/// given encoding. Used for needle-in-a-haystack demonstrations.
BoolCircuit break_on_encoding(const BoolCircuit& base, const BitString& target);

/* Classify a decider against the oracle over every valid encoding of the
   profile. Behavioral mutants disagree somewhere valid; masked ones
   agree on all valid encodings (their errors, if any, live on invalid
   encodings, which G masks). */
enum class DeciderClass : uint8_t { AgreesOnValid, Behavioral };

struct OracleSweep {
    uint64_t instances_checked = 0;
    uint64_t disagreements = 0;
    std::optional<std::string> first_disagreement;  // instance text
    DeciderClass classification() const {
        return disagreements ? DeciderClass::Behavioral : DeciderClass::AgreesOnValid;
    }
};

OracleSweep classify_decider(const BoolCircuit& decider, const EncodingProfile& profile);

struct TesterConfig {
    bool run_exhaustive = false;
    bool run_structured = false;
    bool run_uniform = false;
    bool run_symbolic = false;
    uint64_t uniform_trials = 10'000;
    uint64_t structured_trials = 1'000'000;
    uint64_t exhaustive_budget = uint64_t(1) << 24;
    uint64_t term_budget = 1'000'000;
    uint64_t seed = 0;
};

struct TesterRun {
    std::string name;
    PitVerdict verdict;
    double seconds = 0.0;
};

struct PipelineReport {
    // parameters
    uint32_t n = 0;
    std::string profile;
    std::string field;
    uint64_t seed = 0;
    std::string provenance;  // "synth", "file:...", "mutant:op:seed"

    // bundle metrics
    CircuitMetrics decider_metrics, V_metrics, S0_metrics, S1_metrics, G_metrics, H_metrics,
        A_star_metrics;
    ArithmetizationReport decider_report;

    // oracle cross-check
    OracleSweep oracle;

    std::vector<TesterRun> verdicts;
    bool consistent = true;
    std::vector<std::string> consistency_notes;

    double total_seconds = 0.0;

    /// Deterministic JSON; timing fields are emitted only when asked for,
    /// so reports with identical inputs and seeds compare byte-equal.
    std::string to_json(bool include_timings = true) const;
    std::string summary() const;
};

PipelineReport run_pipeline(const BoolCircuit& decider, const EncodingProfile& profile,
                            const FieldSpec& field, const TesterConfig& config,
                            const std::string& provenance);

}  // namespace ffpit

#endif  // FFPIT_HARNESS_HPP
