// SPDX-License-Identifier: Apache-2.0

#include "ffpit/harness.hpp"

#include <chrono>

#include <json.hpp>

#include "ffpit/gadgets.hpp"

namespace ffpit {

namespace g = gadgets;

namespace {

uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

// --- decider synthesis -------------------------------------------------------

BoolCircuit synth_decider(const EncodingProfile& p, uint32_t cap) {
    if (p.n() > cap)
        throw std::invalid_argument("decider synthesis bound " + std::to_string(p.n()) +
                                    " exceeds the cap " + std::to_string(cap));
    const uint32_t Nc = p.clause_slots();
    const uint32_t L = p.lits_per_clause();
    const uint32_t W = p.index_width();
    const uint32_t n = p.n();

    BoolCircuitBuilder b(p.total_length());
    const Ref t0 = b.input(0), t1 = b.input(1);
    const Ref tag_true = b.and_(b.not_(t0), t1);
    const Ref tag_false = b.and_(t0, b.not_(t1));

    // shared per-literal signals: active, and "satisfied when x_v is 1/0"
    struct LitSignals {
        Ref active;
        std::vector<Ref> sat_if_true;   // per variable v: active & idx==v & positive
        std::vector<Ref> sat_if_false;  // per variable v: active & idx==v & negative
    };
    std::vector<std::vector<LitSignals>> sig(Nc);
    for (uint32_t c = 0; c < Nc; ++c) {
        for (uint32_t l = 0; l < L; ++l) {
            const uint32_t off = p.lit_offset(c, l);
            LitSignals s;
            s.active = b.input(off);
            const Ref sign = b.input(off + 1);
            const Ref not_sign = b.not_(sign);
            std::vector<Ref> idx_bits;
            for (uint32_t i = 0; i < W; ++i) idx_bits.push_back(b.input(off + 2 + i));
            for (uint32_t v = 1; v <= n; ++v) {
                const Ref eq_v = W ? g::eq_const(b, idx_bits, v) : b.const1();
                const Ref base = b.and_(s.active, eq_v);
                s.sat_if_true.push_back(b.and_(base, sign));
                s.sat_if_false.push_back(b.and_(base, not_sign));
            }
            sig[c].push_back(std::move(s));
        }
    }

    // one satisfiability subcircuit per assignment of x_1..x_n
    std::vector<Ref> assignment_sat;
    const uint64_t assignments = uint64_t(1) << n;
    for (uint64_t a = 0; a < assignments; ++a) {
        std::vector<Ref> clause_ok;
        for (uint32_t c = 0; c < Nc; ++c) {
            std::vector<Ref> lit_sat;
            for (uint32_t l = 0; l < L; ++l) {
                for (uint32_t v = 1; v <= n; ++v) {
                    const bool bit = (a >> (v - 1)) & 1u;
                    lit_sat.push_back(bit ? sig[c][l].sat_if_true[v - 1]
                                          : sig[c][l].sat_if_false[v - 1]);
                }
            }
            // an inactive clause slot is trivially fine
            clause_ok.push_back(b.or_(b.not_(sig[c][0].active), b.or_many(lit_sat)));
        }
        assignment_sat.push_back(b.and_many(clause_ok));
    }
    const Ref formula_sat = b.or_many(assignment_sat);

    // TRUE/FALSE short-circuit; anything else takes the formula path
    const Ref out = b.or_(tag_true, b.and_(b.not_(tag_false), formula_sat));
    return b.build({out});
}

// --- mutation ------------------------------------------------------------------

std::string_view mutation_op_name(MutationOp op) {
    switch (op) {
        case MutationOp::FlipGateKind: return "flip_gate_kind";
        case MutationOp::NegateOutput: return "negate_output";
        case MutationOp::RewireOperand: return "rewire_operand";
        case MutationOp::StuckAt0: return "stuck_at_0";
        case MutationOp::StuckAt1: return "stuck_at_1";
    }
    return "?";
}

MutationOp parse_mutation_op(std::string_view name) {
    if (name == "flip_gate_kind") return MutationOp::FlipGateKind;
    if (name == "negate_output") return MutationOp::NegateOutput;
    if (name == "rewire_operand") return MutationOp::RewireOperand;
    if (name == "stuck_at_0") return MutationOp::StuckAt0;
    if (name == "stuck_at_1") return MutationOp::StuckAt1;
    throw std::invalid_argument("unknown mutation op '" + std::string(name) + "'");
}

std::pair<BoolCircuit, MutationNote> mutate(const BoolCircuit& c, MutationOp op, uint64_t seed) {
    if (c.num_gates() == 0) throw std::invalid_argument("cannot mutate an empty circuit");
    uint64_t state = mix(seed ^ 0xabcdef12345ULL);
    auto pick = [&](size_t count) {
        state = mix(state);
        return size_t(state % count);
    };

    BoolCircuitBuilder b(c.num_inputs(), c.fanin_mode());
    MutationNote note{op, seed, 0, ""};

    // copy gates, applying the single change where it lands
    std::optional<size_t> target_gate;
    std::optional<size_t> target_arg;
    std::optional<Ref> new_arg;
    BoolOp new_op = BoolOp::And;

    switch (op) {
        case MutationOp::FlipGateKind: {
            std::vector<size_t> candidates;
            for (size_t i = 0; i < c.num_gates(); ++i)
                if (c.gate_op(i) == BoolOp::And || c.gate_op(i) == BoolOp::Or) candidates.push_back(i);
            if (candidates.empty())
                throw std::invalid_argument("flip_gate_kind: circuit has no AND/OR gate");
            target_gate = candidates[pick(candidates.size())];
            new_op = c.gate_op(*target_gate) == BoolOp::And ? BoolOp::Or : BoolOp::And;
            note.location = *target_gate;
            note.description = "g" + std::to_string(*target_gate) + ": " +
                               (new_op == BoolOp::Or ? "AND -> OR" : "OR -> AND");
            break;
        }
        case MutationOp::RewireOperand: {
            std::vector<size_t> candidates;
            for (size_t i = 0; i < c.num_gates(); ++i)
                if (!c.gate_args(i).empty()) candidates.push_back(i);
            if (candidates.empty())
                throw std::invalid_argument("rewire_operand: circuit has no gate with operands");
            target_gate = candidates[pick(candidates.size())];
            const auto args = c.gate_args(*target_gate);
            target_arg = pick(args.size());
            // any earlier wire except the current one
            const size_t pool = c.num_inputs() + *target_gate;
            if (pool <= 1) throw std::invalid_argument("rewire_operand: no alternative wire exists");
            Ref cur = args[*target_arg];
            Ref candidate = cur;
            while (candidate == cur) {
                const size_t w = pick(pool);
                candidate = w < c.num_inputs() ? Ref::input(uint32_t(w))
                                               : Ref::gate(uint32_t(w - c.num_inputs()));
            }
            new_arg = candidate;
            note.location = *target_gate;
            note.description = "g" + std::to_string(*target_gate) + " operand " +
                               std::to_string(*target_arg) + " -> " +
                               (candidate.is_input() ? "x" : "g") + std::to_string(candidate.index());
            break;
        }
        case MutationOp::StuckAt0:
        case MutationOp::StuckAt1: {
            target_gate = pick(c.num_gates());
            new_op = op == MutationOp::StuckAt0 ? BoolOp::Const0 : BoolOp::Const1;
            note.location = *target_gate;
            note.description = "g" + std::to_string(*target_gate) + " stuck at " +
                               (op == MutationOp::StuckAt1 ? "1" : "0");
            break;
        }
        case MutationOp::NegateOutput:
            break;  // handled after the copy
    }

    for (size_t i = 0; i < c.num_gates(); ++i) {
        BoolOp gop = c.gate_op(i);
        std::vector<Ref> args(c.gate_args(i).begin(), c.gate_args(i).end());
        if (target_gate && i == *target_gate) {
            if (op == MutationOp::FlipGateKind) gop = new_op;
            if (op == MutationOp::RewireOperand) args[*target_arg] = *new_arg;
            if (op == MutationOp::StuckAt0 || op == MutationOp::StuckAt1) {
                gop = new_op;
                args.clear();
            }
        }
        b.add_gate(gop, args);
    }

    std::vector<Ref> outputs(c.outputs().begin(), c.outputs().end());
    if (op == MutationOp::NegateOutput) {
        const size_t which = pick(outputs.size());
        outputs[which] = b.not_(outputs[which]);
        note.location = which;
        note.description = "output " + std::to_string(which) + " negated";
    }
    return {b.build(std::move(outputs)), note};
}

BoolCircuit break_on_encoding(const BoolCircuit& base, const BitString& target) {
    if (base.num_inputs() != target.size())
        throw std::invalid_argument("break_on_encoding: arity mismatch");
    BoolCircuitBuilder b(base.num_inputs(), base.fanin_mode());
    std::vector<Ref> inputs;
    for (uint32_t i = 0; i < base.num_inputs(); ++i) inputs.push_back(b.input(i));
    const Ref out = b.append(base, inputs)[0];
    // exact match against the target string
    std::vector<Ref> match_bits;
    for (uint32_t i = 0; i < base.num_inputs(); ++i)
        match_bits.push_back(target[i] ? inputs[i] : b.not_(inputs[i]));
    const Ref hit = b.and_many(match_bits);
    return b.build({g::xor_(b, out, hit)});
}

// --- oracle sweep ------------------------------------------------------------------

OracleSweep classify_decider(const BoolCircuit& decider, const EncodingProfile& profile) {
    OracleSweep sweep;
    std::vector<uint8_t> bits;
    std::vector<uint8_t> values;
    const InstanceEnumeration instances(profile.n());
    for (uint64_t rank = 0; rank < instances.size(); ++rank) {
        const ThreeSatInstance inst = instances.at(rank);
        const BitString enc = encode(inst, profile);
        bits.assign(enc.bits().begin(), enc.bits().end());
        decider.eval_all(bits, values);
        const uint8_t got = decider.value_of(values, decider.outputs()[0]);
        const uint8_t want = brute_force_sat(inst) == SatResult::Sat ? 1 : 0;
        ++sweep.instances_checked;
        if (got != want) {
            ++sweep.disagreements;
            if (!sweep.first_disagreement) sweep.first_disagreement = inst.to_string();
        }
    }
    return sweep;
}

// --- pipeline ----------------------------------------------------------------------

PipelineReport run_pipeline(const BoolCircuit& decider, const EncodingProfile& profile,
                            const FieldSpec& field, const TesterConfig& config,
                            const std::string& provenance) {
    const auto t_start = std::chrono::steady_clock::now();
    PipelineReport rep;
    rep.n = profile.n();
    rep.profile = profile.name();
    rep.field = field.to_literal();
    rep.seed = config.seed;
    rep.provenance = provenance;
    rep.decider_metrics = decider.metrics();

    ReductionBundle bundle = build_A_star(decider, profile, field);
    rep.V_metrics = bundle.V.metrics();
    rep.S0_metrics = bundle.S0.metrics();
    rep.S1_metrics = bundle.S1.metrics();
    rep.G_metrics = bundle.G.metrics();
    rep.H_metrics = bundle.H.metrics();
    rep.A_star_metrics = bundle.A_star.metrics();
    rep.decider_report = bundle.decider_report;

    rep.oracle = classify_decider(decider, profile);
    const bool behavioral = rep.oracle.classification() == DeciderClass::Behavioral;

    auto run_tester = [&](const std::string& name, auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        TesterRun run;
        run.name = name;
        run.verdict = fn();
        run.seconds = seconds_since(t0);
        // every reported witness must re-verify against A*
        if (run.verdict.outcome == PitOutcome::NonzeroWitness) {
            try {
                assert_witness_verifies(bundle.A_star, run.verdict);
            } catch (const std::logic_error& e) {
                throw InternalConsistencyError("tester " + name + ": " + e.what());
            }
        }
        rep.verdicts.push_back(std::move(run));
    };

    if (config.run_exhaustive)
        run_tester("exhaustive", [&] { return exhaustive_test(bundle.A_star, config.exhaustive_budget); });
    if (config.run_structured)
        run_tester("structured", [&] {
            return sample_test(bundle.A_star, SampleStrategy::valid_encodings(bundle),
                               config.structured_trials, config.seed);
        });
    if (config.run_uniform)
        run_tester("uniform", [&] {
            return sample_test(bundle.A_star, SampleStrategy::uniform(), config.uniform_trials,
                               config.seed);
        });
    if (config.run_symbolic)
        run_tester("symbolic", [&] { return symbolic_test(bundle.A_star, config.term_budget); });

    // cross-check the paper's equivalence where a tester is decisive
    auto inconsistent = [&](const std::string& why) {
        rep.consistent = false;
        rep.consistency_notes.push_back(why);
        throw InternalConsistencyError(why);
    };
    bool some_witness = false;
    bool some_complete_zero = false;
    std::string complete_zero_name;
    for (const auto& run : rep.verdicts) {
        if (run.verdict.outcome == PitOutcome::NonzeroWitness) some_witness = true;
        if (run.verdict.outcome == PitOutcome::IdenticallyZero) {
            some_complete_zero = true;
            complete_zero_name = run.name;
        }
    }
    if (!behavioral && some_witness)
        inconsistent("decider agrees with the oracle on all valid encodings, yet a tester found "
                     "a verified witness");
    if (behavioral && some_complete_zero)
        inconsistent("decider disagrees with the oracle on a valid encoding, yet tester '" +
                     complete_zero_name + "' certified A* as the zero function");
    if (behavioral && !some_witness) {
        // exhaustive/symbolic always refute a behavioral decider, and full
        // structured coverage does too: a minimal wrong instance breaks one
        // of H's three coefficients on a valid encoding
        const bool ran_decisive =
            std::any_of(rep.verdicts.begin(), rep.verdicts.end(), [](const TesterRun& run) {
                return run.name == "exhaustive" || run.name == "symbolic" ||
                       run.verdict.full_coverage;
            });
        if (ran_decisive)
            inconsistent("behavioral decider, but no tester found a witness despite a decisive run");
    }

    rep.total_seconds = seconds_since(t_start);
    return rep;
}

// --- report serialization --------------------------------------------------------------

namespace {

nlohmann::ordered_json metrics_json(const CircuitMetrics& m) {
    return {{"size", m.size}, {"depth", m.depth}};
}

nlohmann::ordered_json verdict_json(const PitVerdict& v) {
    nlohmann::ordered_json j;
    j["outcome"] = std::string(pit_outcome_name(v.outcome));
    j["method"] = std::string(pit_method_name(v.method));
    j["trials"] = v.trials;
    if (v.outcome == PitOutcome::NonzeroWitness) {
        j["witness"] = v.witness;
        j["witness_value"] = v.witness_value ? v.witness_value->to_string() : "";
    }
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

}  // namespace

std::string PipelineReport::to_json(bool include_timings) const {
    nlohmann::ordered_json j;
    j["parameters"] = {{"n", n}, {"profile", profile}, {"field", field}, {"seed", seed}};
    j["decider"] = {{"provenance", provenance},
                    {"size", decider_metrics.size},
                    {"depth", decider_metrics.depth}};
    j["bundle"] = {
        {"V", metrics_json(V_metrics)},   {"S0", metrics_json(S0_metrics)},
        {"S1", metrics_json(S1_metrics)}, {"G", metrics_json(G_metrics)},
        {"H", metrics_json(H_metrics)},   {"A_star", metrics_json(A_star_metrics)},
    };
    j["arithmetization"] = {
        {"source_size", decider_report.source_metrics.size},
        {"target_size", decider_report.target_metrics.size},
        {"source_depth", decider_report.source_metrics.depth},
        {"target_depth", decider_report.target_metrics.depth},
        {"size_ratio", std::to_string(decider_report.size_ratio.num) + "/" +
                           std::to_string(decider_report.size_ratio.den)},
        {"depth_ratio", std::to_string(decider_report.depth_ratio.num) + "/" +
                            std::to_string(decider_report.depth_ratio.den)},
        {"size_bound_ok", decider_report.size_bound_holds()},
        {"depth_bound_ok", decider_report.depth_bound_holds()},
    };
    j["oracle"] = {{"instances", oracle.instances_checked},
                   {"disagreements", oracle.disagreements},
                   {"classification", oracle.disagreements ? "behavioral" : "agrees_on_valid"}};
    if (oracle.first_disagreement) j["oracle"]["first_disagreement"] = *oracle.first_disagreement;
    nlohmann::ordered_json runs = nlohmann::ordered_json::object();
    for (const auto& run : verdicts) {
        runs[run.name] = verdict_json(run.verdict);
        if (include_timings) runs[run.name]["seconds"] = run.seconds;
    }
    j["verdicts"] = runs;
    j["consistency"] = {{"ok", consistent}, {"notes", consistency_notes}};
    if (include_timings) j["timings"] = {{"total_seconds", total_seconds}};
    return j.dump(2) + "\n";
}

std::string PipelineReport::summary() const {
    std::string s;
    s += "pipeline: n=" + std::to_string(n) + " profile=" + profile + " field=" + field +
         " decider=" + provenance + "\n";
    s += "  decider size=" + std::to_string(decider_metrics.size) +
         " A* size=" + std::to_string(A_star_metrics.size) +
         " depth=" + std::to_string(A_star_metrics.depth) + "\n";
    s += "  oracle: " + std::to_string(oracle.instances_checked) + " valid encodings, " +
         std::to_string(oracle.disagreements) + " disagreements (" +
         (oracle.disagreements ? "behavioral" : "agrees_on_valid") + ")\n";
    for (const auto& run : verdicts) {
        s += "  " + run.name + ": " + std::string(pit_outcome_name(run.verdict.outcome));
        if (run.verdict.outcome == PitOutcome::NonzeroWitness && run.verdict.witness_value)
            s += " value=" + run.verdict.witness_value->to_string();
        s += " (trials=" + std::to_string(run.verdict.trials) + ")\n";
    }
    s += std::string("  consistency: ") + (consistent ? "ok" : "FAILED") + "\n";
    return s;
}

}  // namespace ffpit
