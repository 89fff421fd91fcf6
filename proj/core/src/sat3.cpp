// SPDX-License-Identifier: Apache-2.0

#include "ffpit/sat3.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ffpit {

namespace {

void canonicalize(std::vector<Clause>& clauses) {
    for (Clause& c : clauses) std::sort(c.begin(), c.end());
    std::sort(clauses.begin(), clauses.end());
}

bool clause_satisfied(const Clause& c, uint64_t assignment, const std::vector<uint32_t>& var_bit) {
    for (const Literal& l : c) {
        const bool v = (assignment >> var_bit[l.var]) & 1u;
        if (v == l.positive) return true;
    }
    return false;
}

}  // namespace

// --- ThreeSatInstance ------------------------------------------------------

ThreeSatInstance ThreeSatInstance::constant_true(uint32_t n) {
    return ThreeSatInstance(n, InstanceKind::True, {});
}

ThreeSatInstance ThreeSatInstance::constant_false(uint32_t n) {
    return ThreeSatInstance(n, InstanceKind::False, {});
}

ThreeSatInstance ThreeSatInstance::formula(uint32_t n, std::vector<Clause> clauses) {
    if (clauses.empty()) throw std::invalid_argument("a FORMULA body needs at least one clause");
    canonicalize(clauses);
    return ThreeSatInstance(n, InstanceKind::Formula, std::move(clauses));
}

ThreeSatInstance ThreeSatInstance::with_bound(uint32_t n) const {
    return ThreeSatInstance(n, kind_, clauses_);
}

std::vector<uint32_t> ThreeSatInstance::occurring_variables() const {
    std::set<uint32_t> vars;
    for (const Clause& c : clauses_)
        for (const Literal& l : c) vars.insert(l.var);
    return {vars.begin(), vars.end()};
}

std::string ThreeSatInstance::to_string() const {
    if (kind_ == InstanceKind::True) return "TRUE";
    if (kind_ == InstanceKind::False) return "FALSE";
    std::string s;
    for (size_t i = 0; i < clauses_.size(); ++i) {
        if (i) s += " & ";
        s += "(";
        for (size_t j = 0; j < clauses_[i].size(); ++j) {
            if (j) s += " | ";
            if (!clauses_[i][j].positive) s += "-";
            s += "x" + std::to_string(clauses_[i][j].var);
        }
        s += ")";
    }
    return s;
}

// --- validation --------------------------------------------------------------

std::string_view violation_rule_name(Violation::Rule rule) {
    switch (rule) {
        case Violation::Rule::ClauseSize: return "clause_size";
        case Violation::Rule::DuplicateVarInClause: return "duplicate_variable_in_clause";
        case Violation::Rule::DuplicateClause: return "duplicate_clause";
        case Violation::Rule::VariableIndexRange: return "variable_index_range";
        case Violation::Rule::EmptyFormula: return "empty_formula";
    }
    return "?";
}

std::vector<Violation> validate_instance(const ThreeSatInstance& f) {
    std::vector<Violation> out;
    if (!f.is_formula()) return out;  // constants are always valid
    const auto& clauses = f.clauses();
    if (clauses.empty()) {
        out.push_back({Violation::Rule::EmptyFormula, "FORMULA body has no clauses"});
        return out;
    }
    for (size_t i = 0; i < clauses.size(); ++i) {
        const Clause& c = clauses[i];
        if (c.empty() || c.size() > 3)
            out.push_back({Violation::Rule::ClauseSize,
                           "clause " + std::to_string(i) + " has " + std::to_string(c.size()) + " literals"});
        for (size_t j = 1; j < c.size(); ++j)
            if (c[j].var == c[j - 1].var)
                out.push_back({Violation::Rule::DuplicateVarInClause,
                               "clause " + std::to_string(i) + " uses x" + std::to_string(c[j].var) + " twice"});
        for (const Literal& l : c)
            if (l.var < 1 || l.var > f.n())
                out.push_back({Violation::Rule::VariableIndexRange,
                               "clause " + std::to_string(i) + " references x" + std::to_string(l.var) +
                                   " outside [1, " + std::to_string(f.n()) + "]"});
        if (i > 0 && c == clauses[i - 1])
            out.push_back({Violation::Rule::DuplicateClause,
                           "clauses " + std::to_string(i - 1) + " and " + std::to_string(i) +
                               " have the same literal set"});
    }
    return out;
}

bool is_valid_instance(const ThreeSatInstance& f) { return validate_instance(f).empty(); }

// --- substitution --------------------------------------------------------------

ThreeSatInstance substitute(const ThreeSatInstance& f, bool value) {
    if (!f.is_formula()) return f;
    const auto vars = f.occurring_variables();
    if (vars.empty()) return f;  // degenerate; not a valid instance anyway
    const uint32_t target = vars.front();

    std::vector<Clause> next;
    next.reserve(f.clauses().size());
    for (const Clause& c : f.clauses()) {
        Clause kept;
        bool satisfied = false;
        for (const Literal& l : c) {
            if (l.var == target) {
                if (l.positive == value) {
                    satisfied = true;
                    break;
                }
                continue;  // falsified literal drops out
            }
            kept.push_back(l);
        }
        if (satisfied) continue;
        if (kept.empty()) return ThreeSatInstance::constant_false(f.n());
        next.push_back(std::move(kept));
    }
    if (next.empty()) return ThreeSatInstance::constant_true(f.n());
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return ThreeSatInstance::formula(f.n(), std::move(next));
}

// --- brute-force oracle -----------------------------------------------------------

SatResult brute_force_sat(const ThreeSatInstance& f, uint32_t exhaustion_cap) {
    if (f.kind() == InstanceKind::True) return SatResult::Sat;
    if (f.kind() == InstanceKind::False) return SatResult::Unsat;
    const auto vars = f.occurring_variables();
    if (vars.size() > exhaustion_cap)
        throw std::invalid_argument("instance has " + std::to_string(vars.size()) +
                                    " variables, above the exhaustion cap of " +
                                    std::to_string(exhaustion_cap));
    std::vector<uint32_t> var_bit(vars.empty() ? 1 : vars.back() + 1, 0);
    for (size_t i = 0; i < vars.size(); ++i) var_bit[vars[i]] = static_cast<uint32_t>(i);

    const uint64_t total = uint64_t(1) << vars.size();
    for (uint64_t a = 0; a < total; ++a) {
        bool all = true;
        for (const Clause& c : f.clauses())
            if (!clause_satisfied(c, a, var_bit)) {
                all = false;
                break;
            }
        if (all) return SatResult::Sat;
    }
    return SatResult::Unsat;
}

// --- enumeration -----------------------------------------------------------------

std::vector<Clause> clause_universe(uint32_t n) {
    std::vector<Clause> universe;
    std::vector<uint32_t> vars(n);
    for (uint32_t i = 0; i < n; ++i) vars[i] = i + 1;
    // all variable subsets of size 1..3, each with every sign pattern
    for (uint32_t a = 0; a < n; ++a) {
        for (uint32_t sa = 0; sa < 2; ++sa) universe.push_back({{vars[a], sa == 1}});
        for (uint32_t b = a + 1; b < n; ++b) {
            for (uint32_t s = 0; s < 4; ++s)
                universe.push_back({{vars[a], (s & 1) != 0}, {vars[b], (s & 2) != 0}});
            for (uint32_t c = b + 1; c < n; ++c)
                for (uint32_t s = 0; s < 8; ++s)
                    universe.push_back({{vars[a], (s & 1) != 0},
                                        {vars[b], (s & 2) != 0},
                                        {vars[c], (s & 4) != 0}});
        }
    }
    for (Clause& c : universe) std::sort(c.begin(), c.end());
    std::sort(universe.begin(), universe.end());
    return universe;
}

InstanceEnumeration::InstanceEnumeration(uint32_t n) : n_(n), universe_(clause_universe(n)) {
    if (universe_.size() >= 62)
        throw std::invalid_argument("clause universe too large to index by rank");
}

ThreeSatInstance InstanceEnumeration::at(uint64_t rank) const {
    if (rank >= size()) throw std::out_of_range("instance rank out of range");
    if (rank == 0) return ThreeSatInstance::constant_true(n_);
    if (rank == 1) return ThreeSatInstance::constant_false(n_);
    const uint64_t mask = rank - 1;  // masks 1 .. 2^|U|-1
    std::vector<Clause> clauses;
    for (size_t i = 0; i < universe_.size(); ++i)
        if ((mask >> i) & 1u) clauses.push_back(universe_[i]);
    return ThreeSatInstance::formula(n_, std::move(clauses));
}

std::vector<ThreeSatInstance> enumerate_instances(uint32_t n, uint32_t cap) {
    if (n > cap)
        throw std::invalid_argument("enumeration bound " + std::to_string(n) +
                                    " exceeds the configured cap " + std::to_string(cap));
    const InstanceEnumeration all(n);
    std::vector<ThreeSatInstance> out;
    out.reserve(all.size());
    for (uint64_t rank = 0; rank < all.size(); ++rank) out.push_back(all.at(rank));
    return out;
}

// --- DIMACS ------------------------------------------------------------------------

ThreeSatInstance parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    bool have_header = false;
    bool const_true = false, const_false = false;
    uint32_t n = 0;
    size_t declared_clauses = 0;
    std::vector<Clause> clauses;
    Clause current;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok.empty()) continue;
        if (tok == "c") {
            std::string a, b;
            ls >> a >> b;
            if (a == "CONST") {
                if (b == "TRUE") const_true = true;
                else if (b == "FALSE") const_false = true;
                else throw DimacsParseError(line_no, "expected 'c CONST TRUE' or 'c CONST FALSE'");
            }
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            long long nn = -1, mm = -1;
            ls >> fmt >> nn >> mm;
            if (fmt != "cnf" || nn < 0 || mm < 0)
                throw DimacsParseError(line_no, "expected 'p cnf <vars> <clauses>'");
            n = static_cast<uint32_t>(nn);
            declared_clauses = static_cast<size_t>(mm);
            have_header = true;
            continue;
        }
        if (!have_header) throw DimacsParseError(line_no, "clause before the 'p cnf' header");
        // clause data: integers terminated by 0, possibly spanning lines
        std::istringstream cs(line);
        long long lit;
        while (cs >> lit) {
            if (lit == 0) {
                clauses.push_back(current);
                current.clear();
            } else {
                const uint64_t v = static_cast<uint64_t>(lit < 0 ? -lit : lit);
                current.push_back({static_cast<uint32_t>(v), lit > 0});
            }
        }
        if (!cs.eof()) throw DimacsParseError(line_no, "bad literal token");
    }
    if (!have_header) throw DimacsParseError(line_no ? line_no : 1, "missing 'p cnf' header");
    if (!current.empty()) throw DimacsParseError(line_no, "unterminated clause (missing 0)");
    if (const_true && const_false) throw DimacsParseError(1, "both CONST TRUE and CONST FALSE given");
    if (const_true || const_false) {
        if (!clauses.empty()) throw DimacsParseError(line_no, "constant instances take no clauses");
        return const_true ? ThreeSatInstance::constant_true(n) : ThreeSatInstance::constant_false(n);
    }
    if (clauses.empty()) throw DimacsParseError(line_no ? line_no : 1, "no clauses in formula");
    if (declared_clauses != clauses.size())
        throw DimacsParseError(line_no, "clause count does not match the header");
    return ThreeSatInstance::formula(n, std::move(clauses));
}

std::string to_dimacs(const ThreeSatInstance& f) {
    std::string out;
    if (f.kind() == InstanceKind::True) out += "c CONST TRUE\n";
    if (f.kind() == InstanceKind::False) out += "c CONST FALSE\n";
    out += "p cnf " + std::to_string(f.n()) + " " + std::to_string(f.clauses().size()) + "\n";
    for (const Clause& c : f.clauses()) {
        for (const Literal& l : c) {
            if (!l.positive) out += "-";
            out += std::to_string(l.var) + " ";
        }
        out += "0\n";
    }
    return out;
}

}  // namespace ffpit
