// SPDX-License-Identifier: Apache-2.0
//
// ffpit - finite-field circuit toolkit command line.
//
// Subcommands: encode, decode, arithmetize, build-reduction, pit,
// synth-decider, mutate, pipeline, demo. Exit status is 0 on success,
// 1 on input errors, 2 on internal inconsistencies.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffpit/harness.hpp"
#include "ffpit/netlist.hpp"

using namespace ffpit;

namespace {

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::string first_line(const std::string& text) {
    const size_t nl = text.find('\n');
    std::string line = nl == std::string::npos ? text : text.substr(0, nl);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    return line;
}

EncodingProfile make_profile(const std::string& name, uint32_t n) {
    if (name == "mini") {
        if (n != 1) throw std::runtime_error("the mini profile fixes n=1");
        return EncodingProfile::mini();
    }
    if (name == "paper") return EncodingProfile::paper(n);
    throw std::runtime_error("unknown profile '" + name + "' (expected paper or mini)");
}

BoolCircuit load_decider(const std::string& spec, const EncodingProfile& profile) {
    if (spec == "synth") return synth_decider(profile);
    if (spec.rfind("file:", 0) == 0) return parse_bool_netlist(read_input(spec.substr(5)));
    if (spec.rfind("mutant:", 0) == 0) {
        const std::string rest = spec.substr(7);
        const size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("mutant decider spec is mutant:<op>:<seed>");
        const MutationOp op = parse_mutation_op(rest.substr(0, colon));
        const uint64_t seed = std::stoull(rest.substr(colon + 1));
        auto [mutant, note] = mutate(synth_decider(profile), op, seed);
        std::cerr << "mutated decider: " << note.description << "\n";
        return std::move(mutant);
    }
    throw std::runtime_error("decider must be synth, file:<path> or mutant:<op>:<seed>");
}

std::string verdict_text(const PitVerdict& v, const FieldSpec& field) {
    std::string s = std::string(pit_outcome_name(v.outcome)) + " (method=" +
                    std::string(pit_method_name(v.method)) +
                    ", trials=" + std::to_string(v.trials) + ")";
    if (v.outcome == PitOutcome::NonzeroWitness) {
        s += "\n  witness value = " + v.witness_value->to_string() + "\n  witness point =";
        // one coefficient list per input, aligned with input indices
        for (size_t i = 0; i < v.witness.size(); ++i)
            s += " x" + std::to_string(i) + "=" + FieldElement(field, v.witness[i]).to_string();
    }
    if (!v.note.empty()) s += "\n  note: " + v.note;
    return s + "\n";
}

// --- subcommand bodies -------------------------------------------------------

int cmd_encode(const std::string& in, const std::string& out, const std::string& profile_name,
               uint32_t n) {
    const EncodingProfile profile = make_profile(profile_name, n);
    const ThreeSatInstance f = parse_dimacs(read_input(in));
    const auto violations = validate_instance(f);
    if (!violations.empty()) {
        for (const auto& v : violations)
            std::cerr << "invalid instance [" << violation_rule_name(v.rule) << "]: " << v.detail
                      << "\n";
        return 1;
    }
    write_output(out, encode(f.n() == profile.n() ? f : f.with_bound(profile.n()), profile)
                              .to_string() +
                          "\n");
    return 0;
}

int cmd_decode(const std::string& in, const std::string& out, const std::string& profile_name,
               uint32_t n) {
    const EncodingProfile profile = make_profile(profile_name, n);
    const BitString s = BitString::from_string(first_line(read_input(in)), profile);
    write_output(out, to_dimacs(decode(s)));
    return 0;
}

int cmd_arithmetize(const std::string& circuit_path, const std::string& field_literal,
                    bool unbounded, const std::string& out, const std::string& report_path) {
    const FieldSpec field = FieldSpec::parse_literal(field_literal);
    const BoolCircuit c = parse_bool_netlist(read_input(circuit_path));
    const auto [a, report] =
        unbounded ? unbounded_arithmetize(c, field) : arithmetize_circuit(c, field);
    write_output(out, to_netlist(a));
    nlohmann::ordered_json j{
        {"source", {{"size", report.source_metrics.size}, {"depth", report.source_metrics.depth}}},
        {"target", {{"size", report.target_metrics.size}, {"depth", report.target_metrics.depth}}},
        {"size_bound_ok", report.size_bound_holds()},
        {"depth_bound_ok", report.depth_bound_holds()},
        {"max_fanin", report.max_fanin},
        {"depth_constant", report.depth_constant},
    };
    if (!report_path.empty()) write_output(report_path, j.dump(2) + "\n");
    else std::cerr << j.dump(2) << "\n";
    return 0;
}

int cmd_build_reduction(const std::string& decider_spec, const std::string& profile_name,
                        uint32_t n, const std::string& field_literal, const std::string& out_dir) {
    const EncodingProfile profile = make_profile(profile_name, n);
    const FieldSpec field = FieldSpec::parse_literal(field_literal);
    const BoolCircuit decider = load_decider(decider_spec, profile);
    const ReductionBundle bundle = build_A_star(decider, profile, field);
    export_bundle(bundle, out_dir);
    std::cout << "bundle written to " << out_dir << " (A* size "
              << bundle.A_star.metrics().size << ", depth " << bundle.A_star.metrics().depth
              << ")\n";
    return 0;
}

int cmd_pit(const std::string& circuit_path, const std::string& tester,
            const std::string& bundle_dir, uint64_t trials, uint64_t seed, uint64_t budget) {
    std::optional<ReductionBundle> bundle;
    if (!bundle_dir.empty()) bundle = import_bundle(bundle_dir);

    std::optional<ArithCircuit> circuit;
    if (!circuit_path.empty()) circuit = parse_arith_netlist(read_input(circuit_path));
    else if (bundle) circuit = bundle->A_star;
    if (!circuit) throw std::runtime_error("pit needs --circuit or --bundle");

    PitVerdict v;
    if (tester == "exhaustive") {
        v = exhaustive_test(*circuit, budget);
    } else if (tester == "symbolic") {
        v = symbolic_test(*circuit);
    } else if (tester == "uniform") {
        v = sample_test(*circuit, SampleStrategy::uniform(), trials, seed);
    } else if (tester == "structured") {
        if (!bundle) throw std::runtime_error("the structured tester needs --bundle");
        v = sample_test(*circuit, SampleStrategy::valid_encodings(*bundle), trials, seed);
    } else {
        throw std::runtime_error("unknown tester '" + tester + "'");
    }
    std::cout << verdict_text(v, circuit->field());
    return 0;
}

int cmd_synth_decider(const std::string& profile_name, uint32_t n, const std::string& out) {
    const EncodingProfile profile = make_profile(profile_name, n);
    write_output(out, to_netlist(synth_decider(profile)));
    return 0;
}

int cmd_mutate(const std::string& circuit_path, const std::string& op_name, uint64_t seed,
               const std::string& out) {
    const BoolCircuit c = parse_bool_netlist(read_input(circuit_path));
    auto [mutant, note] = mutate(c, parse_mutation_op(op_name), seed);
    write_output(out, to_netlist(mutant));
    std::cerr << "mutation: " << note.description << " (op=" << mutation_op_name(note.op)
              << ", seed=" << note.seed << ")\n";
    return 0;
}

int cmd_pipeline(const std::string& decider_spec, const std::string& profile_name, uint32_t n,
                 const std::string& field_literal, const std::string& testers, uint64_t trials,
                 uint64_t seed, const std::string& json_out) {
    const EncodingProfile profile = make_profile(profile_name, n);
    const FieldSpec field = FieldSpec::parse_literal(field_literal);
    const BoolCircuit decider = load_decider(decider_spec, profile);

    TesterConfig cfg;
    cfg.seed = seed;
    cfg.uniform_trials = trials;
    std::stringstream ss(testers);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "exhaustive") cfg.run_exhaustive = true;
        else if (tok == "structured") cfg.run_structured = true;
        else if (tok == "uniform") cfg.run_uniform = true;
        else if (tok == "symbolic") cfg.run_symbolic = true;
        else if (!tok.empty()) throw std::runtime_error("unknown tester '" + tok + "'");
    }

    const PipelineReport report = run_pipeline(decider, profile, field, cfg, decider_spec);
    std::cout << report.summary();
    if (!json_out.empty()) write_output(json_out, report.to_json());
    return 0;
}

int cmd_demo() {
    const auto profile = EncodingProfile::mini();
    std::cout << "mini-profile demonstration: correct decider, then a broken one\n\n";

    TesterConfig cfg;
    cfg.run_exhaustive = true;
    cfg.run_structured = true;
    cfg.run_symbolic = true;
    cfg.seed = 1;

    const BoolCircuit correct = synth_decider(profile);
    for (const char* literal : {"2^1", "3^1"}) {
        const FieldSpec field = FieldSpec::parse_literal(literal);
        const PipelineReport rep = run_pipeline(correct, profile, field, cfg, "synth");
        std::cout << rep.summary() << "\n";
        for (const auto& run : rep.verdicts)
            if (run.name != "structured" || field.q() == 2)
                if (run.verdict.outcome == PitOutcome::NonzeroWitness)
                    throw InternalConsistencyError("correct decider refuted in the demo");
    }

    const auto [mutant, note] = mutate(correct, MutationOp::NegateOutput, 7);
    std::cout << "mutant: " << note.description << "\n";
    for (const char* literal : {"2^1", "3^1"}) {
        const FieldSpec field = FieldSpec::parse_literal(literal);
        const PipelineReport rep = run_pipeline(mutant, profile, field, cfg, "mutant:negate_output:7");
        std::cout << rep.summary() << "\n";
        bool witnessed = false;
        for (const auto& run : rep.verdicts)
            if (run.verdict.outcome == PitOutcome::NonzeroWitness) witnessed = true;
        if (!witnessed) throw InternalConsistencyError("broken decider not refuted in the demo");
    }
    std::cout << "both directions hold at desk scale: zero for the correct decider, a verified\n"
                 "witness for the broken one.\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ffpit - finite-field circuit toolkit: 3SAT encodings, arithmetization, "
                 "and polynomial identity testing"};
    app.require_subcommand(1);

    std::string in = "-", out = "-", profile = "paper", field = "2^1";
    std::string circuit_path, bundle_dir, report_path, decider_spec = "synth";
    std::string tester = "exhaustive", testers = "exhaustive", op_name = "negate_output";
    std::string json_out;
    uint32_t n = 1;
    uint64_t trials = 10'000, seed = 0, budget = uint64_t(1) << 24;
    bool unbounded = false;

    auto* enc = app.add_subcommand("encode", "encode a DIMACS instance as a 0/1 string");
    enc->add_option("--in", in, "DIMACS input file (- for stdin)");
    enc->add_option("--out", out, "output file (- for stdout)");
    enc->add_option("--profile", profile, "paper|mini");
    enc->add_option("--n", n, "variable bound");

    auto* dec = app.add_subcommand("decode", "decode a 0/1 string back into DIMACS");
    dec->add_option("--in", in, "encoding input file (- for stdin)");
    dec->add_option("--out", out, "output file");
    dec->add_option("--profile", profile, "paper|mini");
    dec->add_option("--n", n, "variable bound");

    auto* ari = app.add_subcommand("arithmetize", "compile a boolean netlist over F(q)");
    ari->add_option("--circuit", circuit_path, "boolean netlist")->required();
    ari->add_option("--field", field, "field literal, e.g. 2^1 or 2^2");
    ari->add_flag("--unbounded", unbounded, "use the unbounded fan-in translation");
    ari->add_option("--out", out, "arithmetic netlist output");
    ari->add_option("--report", report_path, "write the size/depth report JSON here");

    auto* bre = app.add_subcommand("build-reduction", "build and export V,S0,S1,G,H,A*");
    bre->add_option("--decider", decider_spec, "synth | file:<net> | mutant:<op>:<seed>");
    bre->add_option("--profile", profile, "paper|mini");
    bre->add_option("--n", n, "variable bound");
    bre->add_option("--field", field, "field literal");
    bre->add_option("--out", bundle_dir, "output directory")->required();

    auto* pit = app.add_subcommand("pit", "run an identity tester on a circuit");
    pit->add_option("--circuit", circuit_path, "arithmetic netlist (defaults to the bundle's A*)");
    pit->add_option("--tester", tester, "exhaustive|symbolic|uniform|structured");
    pit->add_option("--bundle", bundle_dir, "bundle directory (needed by structured)");
    pit->add_option("--trials", trials, "sampling trials");
    pit->add_option("--seed", seed, "sampling seed");
    pit->add_option("--budget", budget, "exhaustive evaluation budget");

    auto* syn = app.add_subcommand("synth-decider", "synthesize the decode-and-evaluate decider");
    syn->add_option("--profile", profile, "paper|mini");
    syn->add_option("--n", n, "variable bound");
    syn->add_option("--out", out, "netlist output");

    auto* mut = app.add_subcommand("mutate", "apply one seeded mutation to a netlist");
    mut->add_option("--circuit", circuit_path, "boolean netlist")->required();
    mut->add_option("--op", op_name,
                    "flip_gate_kind|negate_output|rewire_operand|stuck_at_0|stuck_at_1");
    mut->add_option("--seed", seed, "mutation seed");
    mut->add_option("--out", out, "netlist output");

    auto* pip = app.add_subcommand("pipeline", "build the reduction and run the testers");
    pip->add_option("--decider", decider_spec, "synth | file:<net> | mutant:<op>:<seed>");
    pip->add_option("--profile", profile, "paper|mini");
    pip->add_option("--n", n, "variable bound");
    pip->add_option("--field", field, "field literal");
    pip->add_option("--tester", testers, "comma list: exhaustive,structured,uniform,symbolic");
    pip->add_option("--trials", trials, "uniform sampling trials");
    pip->add_option("--seed", seed, "seed for sampling testers");
    pip->add_option("--json", json_out, "write the full report JSON here");

    app.add_subcommand("demo", "mini-profile demonstration of both directions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (enc->parsed()) return cmd_encode(in, out, profile, n);
        if (dec->parsed()) return cmd_decode(in, out, profile, n);
        if (ari->parsed()) return cmd_arithmetize(circuit_path, field, unbounded, out, report_path);
        if (bre->parsed()) return cmd_build_reduction(decider_spec, profile, n, field, bundle_dir);
        if (pit->parsed()) return cmd_pit(circuit_path, tester, bundle_dir, trials, seed, budget);
        if (syn->parsed()) return cmd_synth_decider(profile, n, out);
        if (mut->parsed()) return cmd_mutate(circuit_path, op_name, seed, out);
        if (pip->parsed())
            return cmd_pipeline(decider_spec, profile, n, field, testers, trials, seed, json_out);
        return cmd_demo();
    } catch (const InternalConsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        // failed internal cross-checks surface as logic errors
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
