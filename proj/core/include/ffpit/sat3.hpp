// SPDX-License-Identifier: Apache-2.0
//
// Normalized 3SAT instances: validation, substitution with
// simplification, a brute-force satisfiability oracle, exhaustive
// enumeration, and DIMACS-style text I/O.

#ifndef FFPIT_SAT3_HPP
#define FFPIT_SAT3_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ffpit {

struct Literal {
    uint32_t var = 0;      // 1-based variable index
    bool positive = true;  // false encodes a negated literal

    bool operator==(const Literal&) const = default;
    // canonical order: by variable, negative before positive
    auto operator<=>(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

enum class InstanceKind : uint8_t { Formula, True, False };

/* A 3SAT instance with a declared variable bound n. The body is either a
   clause list or one of the constants TRUE/FALSE. Construction
   canonicalizes ordering (literals sorted within clauses, clauses sorted
   lexicographically) but deliberately keeps duplicates and oversize
   clauses so that validate_instance() can report them. Variable-index
   gaps are allowed: validity needs indices in [1, n], not contiguity. */
class ThreeSatInstance {
public:
    static ThreeSatInstance constant_true(uint32_t n);
    static ThreeSatInstance constant_false(uint32_t n);
    /// Formula body; throws when `clauses` is empty.
    static ThreeSatInstance formula(uint32_t n, std::vector<Clause> clauses);

    uint32_t n() const { return n_; }
    InstanceKind kind() const { return kind_; }
    bool is_formula() const { return kind_ == InstanceKind::Formula; }
    const std::vector<Clause>& clauses() const { return clauses_; }

    /// Same body under a different declared bound.
    ThreeSatInstance with_bound(uint32_t n) const;

    /// Ascending list of variables that actually occur.
    std::vector<uint32_t> occurring_variables() const;

    bool operator==(const ThreeSatInstance&) const = default;

    /// Compact rendering like "(x1 | -x2) & (x2)", "TRUE" or "FALSE".
    std::string to_string() const;

private:
    ThreeSatInstance(uint32_t n, InstanceKind kind, std::vector<Clause> clauses)
        : n_(n), kind_(kind), clauses_(std::move(clauses)) {}
    uint32_t n_ = 0;
    InstanceKind kind_ = InstanceKind::True;
    std::vector<Clause> clauses_;
};

struct Violation {
    enum class Rule {
        ClauseSize,               // a clause has 0 or more than 3 literals
        DuplicateVarInClause,     // one variable appears in two literals
        DuplicateClause,          // two clauses share the same literal set
        VariableIndexRange,       // a literal index lies outside [1, n]
        EmptyFormula,             // FORMULA body with no clauses
    };
    Rule rule;
    std::string detail;
};

std::vector<Violation> validate_instance(const ThreeSatInstance& f);
bool is_valid_instance(const ThreeSatInstance& f);
std::string_view violation_rule_name(Violation::Rule rule);

/* Substitute the lowest-indexed occurring variable by `value` and
   simplify: satisfied clauses are removed, falsified literals dropped,
   an emptied clause makes the result FALSE, no remaining clauses make it
   TRUE, and duplicate clause sets are merged. Constants pass through
   unchanged. The declared bound is kept and variables are not
   re-indexed. */
ThreeSatInstance substitute(const ThreeSatInstance& f, bool value);

enum class SatResult : uint8_t { Sat, Unsat };

/* Ground-truth oracle: exhaustive over all assignments of the occurring
   variables. Throws when more than `exhaustion_cap` variables occur. */
SatResult brute_force_sat(const ThreeSatInstance& f, uint32_t exhaustion_cap = 20);

/* All valid instances with declared bound n, deterministically ordered:
   TRUE, FALSE, then formulas by clause-subset rank over the canonical
   clause universe. Throws when n exceeds `cap`. */
std::vector<ThreeSatInstance> enumerate_instances(uint32_t n, uint32_t cap = 2);

/// Every valid clause over variables [1, n], canonically sorted.
std::vector<Clause> clause_universe(uint32_t n);

/* Rank-indexed view of the same enumeration that never materializes the
   list: rank 0 is TRUE, rank 1 is FALSE, rank 2+k is the formula whose
   clause subset has mask k+1. Lets sweeps and samplers walk spaces that
   are far too large for enumerate_instances. */
class InstanceEnumeration {
public:
    explicit InstanceEnumeration(uint32_t n);
    uint32_t n() const { return n_; }
    uint64_t size() const { return 2 + ((uint64_t(1) << universe_.size()) - 1); }
    ThreeSatInstance at(uint64_t rank) const;

private:
    uint32_t n_;
    std::vector<Clause> universe_;
};

// DIMACS-style CNF text. Constants use the comment convention
// `c CONST TRUE` / `c CONST FALSE` before the `p cnf <n> 0` line.
struct DimacsParseError : std::runtime_error {
    DimacsParseError(size_t line, const std::string& what)
        : std::runtime_error("dimacs line " + std::to_string(line) + ": " + what), line(line) {}
    size_t line;
};
ThreeSatInstance parse_dimacs(std::string_view text);
std::string to_dimacs(const ThreeSatInstance& f);

}  // namespace ffpit

#endif  // FFPIT_SAT3_HPP
