// SPDX-License-Identifier: Apache-2.0

#include "ffpit/pit.hpp"

#include <algorithm>

namespace ffpit {

std::string_view pit_outcome_name(PitOutcome o) {
    switch (o) {
        case PitOutcome::IdenticallyZero: return "IdenticallyZero";
        case PitOutcome::NonzeroWitness: return "NonzeroWitness";
        case PitOutcome::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string_view pit_method_name(PitMethod m) {
    switch (m) {
        case PitMethod::Exhaustive: return "exhaustive";
        case PitMethod::Symbolic: return "symbolic";
        case PitMethod::Structured: return "structured";
        case PitMethod::UniformSampling: return "uniform";
    }
    return "?";
}

namespace {

// SplitMix64; every trial derives its point from (seed, trial index)
uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t checked_pow(uint64_t q, uint32_t n, uint64_t limit) {
    uint64_t total = 1;
    for (uint32_t i = 0; i < n; ++i) {
        if (total > limit / q) return limit + 1;
        total *= q;
    }
    return total;
}

PitVerdict make_witness(const ArithCircuit& c, std::vector<uint32_t> point, PitMethod method,
                        uint64_t trials, std::string note = {}) {
    const uint32_t value = c.eval_indices(point)[0];
    if (value == 0)
        throw std::logic_error("internal inconsistency: witness fails re-verification");
    PitVerdict v;
    v.outcome = PitOutcome::NonzeroWitness;
    v.method = method;
    v.witness = std::move(point);
    v.witness_value = FieldElement(c.field(), value);
    v.trials = trials;
    v.note = std::move(note);
    return v;
}

}  // namespace

// --- exhaustive -------------------------------------------------------------

PitVerdict exhaustive_test(const ArithCircuit& c, uint64_t budget) {
    const uint64_t q = c.field().q();
    const uint32_t n = c.num_inputs();
    const uint64_t total = checked_pow(q, n, budget);
    if (total > budget)
        throw std::invalid_argument("exhaustive test would need more than the evaluation budget");

    std::vector<uint32_t> point(n, 0);
    std::vector<uint32_t> values;
    for (uint64_t it = 0;; ++it) {
        c.eval_all_indices(point, values);
        if (c.value_of(values, c.outputs()[0]) != 0)
            return make_witness(c, point, PitMethod::Exhaustive, it + 1);
        // odometer, last coordinate fastest: lexicographic order
        size_t i = n;
        while (i > 0) {
            if (++point[i - 1] < q) break;
            point[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
    PitVerdict v;
    v.outcome = PitOutcome::IdenticallyZero;
    v.method = PitMethod::Exhaustive;
    v.trials = total;
    return v;
}

// --- sampling ----------------------------------------------------------------

namespace {

PitVerdict uniform_sample(const ArithCircuit& c, uint64_t trials, uint64_t seed) {
    const uint64_t q = c.field().q();
    const uint32_t n = c.num_inputs();
    std::vector<uint32_t> point(n);
    std::vector<uint32_t> values;
    for (uint64_t t = 0; t < trials; ++t) {
        uint64_t state = mix(seed ^ mix(t));
        for (uint32_t i = 0; i < n; ++i) {
            state = mix(state);
            point[i] = static_cast<uint32_t>(state % q);
        }
        c.eval_all_indices(point, values);
        if (c.value_of(values, c.outputs()[0]) != 0)
            return make_witness(c, point, PitMethod::UniformSampling, t + 1);
    }
    PitVerdict v;
    v.outcome = PitOutcome::Inconclusive;
    v.method = PitMethod::UniformSampling;
    v.trials = trials;
    v.note = "uniform sampling cannot certify the zero function";
    return v;
}

PitVerdict structured_sample(const ArithCircuit& c, const ReductionBundle& bundle, uint64_t trials,
                             uint64_t seed) {
    const uint32_t m = bundle.m();
    if (c.num_inputs() != m + 3)
        throw std::invalid_argument("structured strategy needs an A*-shaped circuit (m+3 inputs)");
    if (c.field() != bundle.field)
        throw FieldMismatchError("structured strategy: circuit field differs from the bundle");

    const InstanceEnumeration instances(bundle.n);
    const uint64_t total = instances.size() * 3;

    std::vector<uint32_t> point(m + 3, 0);
    std::vector<uint32_t> values;
    auto eval_pair = [&](uint64_t inst, uint32_t unit) -> uint32_t {
        const BitString enc = encode(instances.at(inst), bundle.profile);
        for (uint32_t i = 0; i < m; ++i) point[i] = enc[i];
        point[m] = point[m + 1] = point[m + 2] = 0;
        point[m + unit] = 1;
        c.eval_all_indices(point, values);
        return c.value_of(values, c.outputs()[0]);
    };

    if (total <= trials) {
        // full enumeration
        for (uint64_t i = 0; i < instances.size(); ++i)
            for (uint32_t u = 0; u < 3; ++u)
                if (eval_pair(i, u) != 0)
                    return make_witness(c, point, PitMethod::Structured,
                                        uint64_t(i) * 3 + u + 1,
                                        "found on a valid encoding with a unit y-vector");
        PitVerdict v;
        v.method = PitMethod::Structured;
        v.trials = total;
        v.full_coverage = true;
        if (bundle.field.q() == 2) {
            v.outcome = PitOutcome::IdenticallyZero;
            v.note =
                "full coverage: every valid encoding with each unit y-vector evaluated to 0; "
                "over F(2) all points are binary, the bundle's V vanishes on non-encodings and "
                "H is linear in y, so A* is the zero function";
        } else {
            v.outcome = PitOutcome::Inconclusive;
            v.note =
                "all valid encodings covered, but over q > 2 non-binary coordinates are only "
                "handled by G's R-factors, which this tester does not assume";
        }
        return v;
    }

    // sampled subset of the enumeration
    for (uint64_t t = 0; t < trials; ++t) {
        const uint64_t r = mix(seed ^ mix(t)) % total;
        if (eval_pair(r / 3, static_cast<uint32_t>(r % 3)) != 0)
            return make_witness(c, point, PitMethod::Structured, t + 1,
                                "found on a sampled valid encoding");
    }
    PitVerdict v;
    v.outcome = PitOutcome::Inconclusive;
    v.method = PitMethod::Structured;
    v.trials = trials;
    v.note = "sampled the valid-encoding family without covering it";
    return v;
}

}  // namespace

PitVerdict sample_test(const ArithCircuit& c, const SampleStrategy& strategy, uint64_t trials,
                       uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("sample_test needs at least one trial");
    if (strategy.kind == SampleStrategy::Kind::Uniform) return uniform_sample(c, trials, seed);
    if (strategy.bundle == nullptr)
        throw std::invalid_argument("valid_encodings strategy needs a reduction bundle");
    return structured_sample(c, *strategy.bundle, trials, seed);
}

// --- sparse polynomials ---------------------------------------------------------

SparsePoly::SparsePoly(FieldSpec field, uint32_t arity) : field_(std::move(field)), arity_(arity) {}

SparsePoly SparsePoly::constant(const FieldSpec& field, uint32_t value_index, uint32_t arity) {
    SparsePoly p(field, arity);
    if (value_index != 0) p.terms_.emplace(std::vector<uint32_t>(arity, 0), value_index);
    return p;
}

SparsePoly SparsePoly::variable(const FieldSpec& field, uint32_t var, uint32_t arity) {
    if (var >= arity) throw std::out_of_range("variable index out of range");
    SparsePoly p(field, arity);
    std::vector<uint32_t> e(arity, 0);
    e[var] = 1;
    p.terms_.emplace(std::move(e), 1u);
    return p;
}

void SparsePoly::insert_term(std::vector<uint32_t> exps, uint32_t coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(exps), coeff);
    if (!inserted) {
        const uint32_t sum = field_.add_idx(it->second, coeff);
        if (sum == 0) terms_.erase(it);
        else it->second = sum;
    }
}

SparsePoly SparsePoly::add(const SparsePoly& o) const {
    if (field_ != o.field_ || arity_ != o.arity_)
        throw std::invalid_argument("polynomial field/arity mismatch");
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.insert_term(e, c);
    return r;
}

SparsePoly SparsePoly::sub(const SparsePoly& o) const {
    if (field_ != o.field_ || arity_ != o.arity_)
        throw std::invalid_argument("polynomial field/arity mismatch");
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.insert_term(e, field_.neg_idx(c));
    return r;
}

SparsePoly SparsePoly::mul(const SparsePoly& o, uint64_t term_budget, bool reduce) const {
    if (field_ != o.field_ || arity_ != o.arity_)
        throw std::invalid_argument("polynomial field/arity mismatch");
    if (uint64_t(terms_.size()) * o.terms_.size() > term_budget)
        throw TermBudgetExceeded("polynomial product exceeds the term budget");
    const uint32_t q = field_.q();
    SparsePoly r(field_, arity_);
    std::vector<uint32_t> e(arity_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (uint32_t i = 0; i < arity_; ++i) {
                uint32_t s = ea[i] + eb[i];
                if (reduce && s >= q) s = (s - 1) % (q - 1) + 1;  // x^q = x
                e[i] = s;
            }
            r.insert_term(e, field_.mul_idx(ca, cb));
            if (r.terms_.size() > term_budget)
                throw TermBudgetExceeded("polynomial product exceeds the term budget");
        }
    }
    return r;
}

SparsePoly SparsePoly::canonicalized() const {
    const uint32_t q = field_.q();
    SparsePoly r(field_, arity_);
    for (const auto& [e, c] : terms_) {
        std::vector<uint32_t> re = e;
        for (uint32_t& x : re)
            if (x >= q) x = (x - 1) % (q - 1) + 1;
        r.insert_term(std::move(re), c);
    }
    return r;
}

SparsePoly SparsePoly::substituted(uint32_t var, uint32_t value_index) const {
    if (var >= arity_) throw std::out_of_range("variable index out of range");
    SparsePoly r(field_, arity_);
    for (const auto& [e, c] : terms_) {
        const uint32_t scale = field_.pow_idx(value_index, e[var]);  // 0^0 = 1
        if (scale == 0) continue;
        std::vector<uint32_t> re = e;
        re[var] = 0;
        r.insert_term(std::move(re), field_.mul_idx(c, scale));
    }
    return r;
}

uint32_t SparsePoly::eval_indices(std::span<const uint32_t> point) const {
    if (point.size() != arity_) throw std::invalid_argument("point arity mismatch");
    uint32_t acc = 0;
    for (const auto& [e, c] : terms_) {
        uint32_t t = c;
        for (uint32_t i = 0; i < arity_; ++i)
            if (e[i]) t = field_.mul_idx(t, field_.pow_idx(point[i], e[i]));
        acc = field_.add_idx(acc, t);
    }
    return acc;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) s += " + ";
        first = false;
        s += FieldElement(field_, c).to_string();
        for (uint32_t i = 0; i < arity_; ++i) {
            if (!e[i]) continue;
            s += "*x" + std::to_string(i);
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
    }
    return s;
}

// --- symbolic expansion ------------------------------------------------------------

namespace {

SparsePoly expand(const ArithCircuit& c, uint64_t term_budget, bool reduce) {
    const uint32_t n = c.num_inputs();
    std::vector<SparsePoly> gate_poly;
    gate_poly.reserve(c.num_gates());
    auto poly_of = [&](Ref r) -> SparsePoly {
        if (r.is_gate()) return gate_poly[r.index()];
        return SparsePoly::variable(c.field(), r.index(), n);
    };
    for (size_t i = 0; i < c.num_gates(); ++i) {
        const auto& gate = c.gate(i);
        switch (gate.op) {
            case ArithOp::Add: gate_poly.push_back(poly_of(gate.a).add(poly_of(gate.b))); break;
            case ArithOp::Sub: gate_poly.push_back(poly_of(gate.a).sub(poly_of(gate.b))); break;
            case ArithOp::Mul:
                gate_poly.push_back(poly_of(gate.a).mul(poly_of(gate.b), term_budget, reduce));
                break;
            case ArithOp::Const:
                gate_poly.push_back(SparsePoly::constant(c.field(), gate.const_index, n));
                break;
        }
        if (gate_poly.back().term_count() > term_budget)
            throw TermBudgetExceeded("symbolic expansion exceeds the term budget");
    }
    const Ref out = c.outputs()[0];
    if (out.is_gate()) return gate_poly[out.index()];
    return SparsePoly::variable(c.field(), out.index(), n);
}

}  // namespace

SparsePoly symbolic_canonical(const ArithCircuit& c, uint64_t term_budget) {
    return expand(c, term_budget, true);
}

SparsePoly symbolic_formal(const ArithCircuit& c, uint64_t term_budget) {
    return expand(c, term_budget, false);
}

PitVerdict symbolic_test(const ArithCircuit& c, uint64_t term_budget) {
    SparsePoly poly = symbolic_canonical(c, term_budget);
    if (poly.is_zero()) {
        PitVerdict v;
        v.outcome = PitOutcome::IdenticallyZero;
        v.method = PitMethod::Symbolic;
        v.note = "canonical form reduced to the zero polynomial";
        return v;
    }
    // coordinate descent: a reduced nonzero polynomial stays nonzero for
    // some value of each variable in turn
    const uint32_t q = c.field().q();
    std::vector<uint32_t> point(c.num_inputs(), 0);
    for (uint32_t var = 0; var < c.num_inputs(); ++var) {
        bool found = false;
        for (uint32_t v = 0; v < q && !found; ++v) {
            SparsePoly next = poly.substituted(var, v);
            if (!next.is_zero()) {
                point[var] = v;
                poly = std::move(next);
                found = true;
            }
        }
        if (!found)
            throw std::logic_error("internal inconsistency: reduced nonzero polynomial vanished");
    }
    return make_witness(c, std::move(point), PitMethod::Symbolic, 0,
                        "witness extracted from the canonical form");
}

// --- witness verification ------------------------------------------------------------

FieldElement verify_witness(const ArithCircuit& c, std::span<const FieldElement> assignment) {
    return c.eval(assignment)[0];
}

uint32_t verify_witness_indices(const ArithCircuit& c, std::span<const uint32_t> assignment) {
    return c.eval_indices(assignment)[0];
}

void assert_witness_verifies(const ArithCircuit& c, const PitVerdict& v) {
    if (v.outcome != PitOutcome::NonzeroWitness)
        throw std::logic_error("internal inconsistency: verdict carries no witness");
    const uint32_t value = verify_witness_indices(c, v.witness);
    if (value == 0 || !v.witness_value || value != v.witness_value->index())
        throw std::logic_error("internal inconsistency: witness fails re-verification");
}

}  // namespace ffpit
