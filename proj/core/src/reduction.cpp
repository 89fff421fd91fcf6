// SPDX-License-Identifier: Apache-2.0

#include "ffpit/reduction.hpp"

#include <fstream>
#include <random>

#include <json.hpp>

#include "ffpit/gadgets.hpp"
#include "ffpit/netlist.hpp"

namespace ffpit {

namespace g = gadgets;

namespace {

// Structured view of one literal slot's input refs.
struct LitRefs {
    Ref active;
    Ref sign;
    std::vector<Ref> index;  // MSB-first, may be empty

    std::vector<Ref> all_bits() const {
        std::vector<Ref> out{active, sign};
        out.insert(out.end(), index.begin(), index.end());
        return out;
    }
};

LitRefs lit_refs(const EncodingProfile& p, uint32_t c, uint32_t l) {
    const uint32_t off = p.lit_offset(c, l);
    LitRefs r{Ref::input(off), Ref::input(off + 1), {}};
    for (uint32_t i = 0; i < p.index_width(); ++i) r.index.push_back(Ref::input(off + 2 + i));
    return r;
}

// Clause slot bits in storage order: per literal (active, sign, index...).
std::vector<Ref> clause_slot_bits(const EncodingProfile& p, uint32_t c) {
    std::vector<Ref> bits;
    bits.reserve(p.clause_width());
    for (uint32_t i = 0; i < p.clause_width(); ++i) bits.push_back(Ref::input(p.clause_offset(c) + i));
    return bits;
}

// Canonical comparison key: per literal (active, index..., sign), so the
// unsigned comparator realizes the instance-level clause order.
std::vector<Ref> clause_key_bits(const EncodingProfile& p, std::span<const Ref> slot_bits) {
    std::vector<Ref> key;
    key.reserve(slot_bits.size());
    for (uint32_t l = 0; l < p.lits_per_clause(); ++l) {
        const uint32_t base = l * p.lit_width();
        key.push_back(slot_bits[base]);  // active
        for (uint32_t i = 0; i < p.index_width(); ++i) key.push_back(slot_bits[base + 2 + i]);
        key.push_back(slot_bits[base + 1]);  // sign
    }
    return key;
}

struct TagRefs {
    Ref formula, is_true, is_false;
};

TagRefs tag_refs(BoolCircuitBuilder& b) {
    const Ref t0 = b.input(0), t1 = b.input(1);
    return {b.and_(b.not_(t0), b.not_(t1)), b.and_(b.not_(t0), t1), b.and_(t0, b.not_(t1))};
}

Ref padding_ok(BoolCircuitBuilder& b, const EncodingProfile& p) {
    if (!p.has_padding()) return b.const1();
    std::vector<Ref> conds{b.input(p.padding_offset())};
    for (uint32_t i = p.padding_offset() + 1; i < p.total_length(); ++i)
        conds.push_back(b.not_(b.input(i)));
    return b.and_many(conds);
}

}  // namespace

// --- V -------------------------------------------------------------------

BoolCircuit build_V(const EncodingProfile& p) {
    BoolCircuitBuilder b(p.total_length());
    const TagRefs tag = tag_refs(b);
    const Ref pad_ok = padding_ok(b, p);

    std::vector<Ref> slot_zero(p.clause_slots());      // clause slot is all-zero
    std::vector<Ref> slot_ok(p.clause_slots());        // active slot is well-formed
    std::vector<Ref> slot_active(p.clause_slots());    // first literal's active bit
    for (uint32_t c = 0; c < p.clause_slots(); ++c) {
        const auto slot = clause_slot_bits(p, c);
        slot_zero[c] = g::all_zero(b, slot);
        slot_active[c] = slot[0];

        std::vector<Ref> conds;
        LitRefs prev = lit_refs(p, c, 0);
        // first literal must be active and in range
        if (p.index_width() > 0) {
            conds.push_back(b.or_many(prev.index));  // index >= 1
            conds.push_back(g::leq_const(b, prev.index, p.n()));
        } else if (p.n() < 1) {
            conds.push_back(b.const0());  // no variables exist, no literal fits
        }
        for (uint32_t l = 1; l < p.lits_per_clause(); ++l) {
            const LitRefs cur = lit_refs(p, c, l);
            std::vector<Ref> rest{cur.sign};
            rest.insert(rest.end(), cur.index.begin(), cur.index.end());
            const Ref lit_zero_rest = g::all_zero(b, rest);
            // active literals form a prefix; inactive slots are all-zero
            conds.push_back(b.or_(prev.active, b.not_(cur.active)));
            conds.push_back(b.or_(cur.active, lit_zero_rest));
            // an active literal is in range with a strictly larger index
            std::vector<Ref> active_conds;
            if (p.index_width() > 0) {
                active_conds.push_back(b.or_many(cur.index));
                active_conds.push_back(g::leq_const(b, cur.index, p.n()));
                active_conds.push_back(g::lt_bits(b, prev.index, cur.index));
            } else {
                active_conds.push_back(b.const0());  // two literals cannot share the only var
            }
            conds.push_back(b.or_(b.not_(cur.active), b.and_many(active_conds)));
            prev = cur;
        }
        slot_ok[c] = b.and_many(conds);
    }

    std::vector<Ref> formula_conds{slot_active[0]};
    for (uint32_t c = 0; c < p.clause_slots(); ++c) {
        // active => well-formed; inactive => all-zero
        formula_conds.push_back(g::mux(b, slot_active[c], slot_ok[c], slot_zero[c]));
        if (c > 0) {
            // active slots form a prefix in strictly increasing key order
            formula_conds.push_back(b.or_(slot_active[c - 1], b.not_(slot_active[c])));
            const auto prev_key = clause_key_bits(p, clause_slot_bits(p, c - 1));
            const auto cur_key = clause_key_bits(p, clause_slot_bits(p, c));
            formula_conds.push_back(b.or_(b.not_(slot_active[c]), g::lt_bits(b, prev_key, cur_key)));
        }
    }
    const Ref formula_ok = b.and_many(formula_conds);

    const Ref all_slots_zero = b.and_many(slot_zero);
    const Ref const_ok = b.and_(b.or_(tag.is_true, tag.is_false), all_slots_zero);
    const Ref body_ok = b.or_(const_ok, b.and_(tag.formula, formula_ok));
    return b.build({b.and_(pad_ok, body_ok)});
}

// --- S -------------------------------------------------------------------

BoolCircuit build_S(const EncodingProfile& p, bool value) {
    BoolCircuitBuilder b(p.total_length());
    const uint32_t Nc = p.clause_slots();
    const uint32_t L = p.lits_per_clause();
    const uint32_t W = p.index_width();
    const Ref zero = b.const0();
    const TagRefs tag = tag_refs(b);

    // literal views and per-variable equality signals
    std::vector<std::vector<LitRefs>> lits(Nc);
    std::vector<std::vector<std::vector<Ref>>> eq_var(Nc);  // [c][l][v-1]
    for (uint32_t c = 0; c < Nc; ++c) {
        lits[c].reserve(L);
        eq_var[c].resize(L);
        for (uint32_t l = 0; l < L; ++l) {
            lits[c].push_back(lit_refs(p, c, l));
            if (W > 0) {
                for (uint32_t v = 1; v <= p.n(); ++v)
                    eq_var[c][l].push_back(g::eq_const(b, lits[c][l].index, v));
            } else {
                eq_var[c][l].push_back(b.const1());  // the index is implicitly 1
            }
        }
    }

    // lowest occurring variable
    const uint32_t nvar = std::max<uint32_t>(p.n(), 1);
    std::vector<Ref> occurs(nvar);
    for (uint32_t v = 0; v < nvar; ++v) {
        std::vector<Ref> hits;
        for (uint32_t c = 0; c < Nc; ++c)
            for (uint32_t l = 0; l < L; ++l)
                hits.push_back(b.and_(lits[c][l].active, eq_var[c][l][v]));
        occurs[v] = b.or_many(hits);
    }
    std::vector<Ref> is_lowest(nvar);
    Ref none_below = b.const1();
    for (uint32_t v = 0; v < nvar; ++v) {
        is_lowest[v] = b.and_(occurs[v], none_below);
        none_below = b.and_(none_below, b.not_(occurs[v]));
    }

    // per-clause substitution
    std::vector<Ref> keep(Nc), emptied(Nc);
    std::vector<std::vector<Ref>> new_slot(Nc);  // masked output slot bits
    for (uint32_t c = 0; c < Nc; ++c) {
        std::vector<Ref> is_target(L), lit_sat(L);
        for (uint32_t l = 0; l < L; ++l) {
            std::vector<Ref> sel;
            for (uint32_t v = 0; v < nvar; ++v) sel.push_back(b.and_(is_lowest[v], eq_var[c][l][v]));
            is_target[l] = b.and_(lits[c][l].active, b.or_many(sel));
            lit_sat[l] = b.and_(is_target[l], value ? lits[c][l].sign : b.not_(lits[c][l].sign));
        }
        const Ref clause_sat = b.or_many(lit_sat);
        const Ref active = lits[c][0].active;

        // compact away the (single) target literal
        std::vector<std::vector<Ref>> out_lits(L);
        Ref shift = zero;
        for (uint32_t l = 0; l < L; ++l) {
            shift = b.or_(shift, is_target[l]);
            const auto here = lits[c][l].all_bits();
            std::vector<Ref> next(here.size(), zero);
            if (l + 1 < L) next = lits[c][l + 1].all_bits();
            out_lits[l] = g::mux_bits(b, shift, next, here);
        }
        const Ref new_active0 = out_lits[0][0];
        const Ref not_sat = b.not_(clause_sat);
        emptied[c] = b.and_(active, b.and_(not_sat, b.not_(new_active0)));
        keep[c] = b.and_(active, b.and_(not_sat, new_active0));

        new_slot[c].reserve(p.clause_width());
        for (uint32_t l = 0; l < L; ++l)
            for (Ref bit : out_lits[l]) new_slot[c].push_back(b.and_(keep[c], bit));
    }

    const Ref any_emptied = b.or_many(emptied);

    // merge duplicate clause sets, keeping the first
    std::vector<Ref> keep2(Nc);
    for (uint32_t c = 0; c < Nc; ++c) {
        std::vector<Ref> dups;
        for (uint32_t d = 0; d < c; ++d)
            dups.push_back(b.and_(b.and_(keep[d], keep[c]), g::eq_bits(b, new_slot[d], new_slot[c])));
        const Ref dup = b.or_many(dups);
        keep2[c] = b.and_(keep[c], b.not_(dup));
        for (Ref& bit : new_slot[c]) bit = b.and_(bit, b.not_(dup));
    }
    const Ref any_kept = b.or_many(keep2);

    // odd-even transposition sort: kept slots first in ascending key
    // order, zero slots pushed to the back
    std::vector<std::vector<Ref>> slot = new_slot;
    std::vector<Ref> kept = keep2;
    for (uint32_t round = 0; round < Nc; ++round) {
        for (uint32_t i = round % 2; i + 1 < Nc; i += 2) {
            const auto key_lo = clause_key_bits(p, slot[i]);
            const auto key_hi = clause_key_bits(p, slot[i + 1]);
            const Ref swap = b.or_(b.and_(b.not_(kept[i]), kept[i + 1]),
                                   b.and_(b.and_(kept[i], kept[i + 1]),
                                          g::lt_bits(b, key_hi, key_lo)));
            const auto new_lo = g::mux_bits(b, swap, slot[i + 1], slot[i]);
            const auto new_hi = g::mux_bits(b, swap, slot[i], slot[i + 1]);
            const Ref klo = g::mux(b, swap, kept[i + 1], kept[i]);
            const Ref khi = g::mux(b, swap, kept[i], kept[i + 1]);
            slot[i] = new_lo;
            slot[i + 1] = new_hi;
            kept[i] = klo;
            kept[i + 1] = khi;
        }
    }

    // result tag:    00 formula    01 TRUE    10 FALSE
    const Ref res_false = any_emptied;
    const Ref res_true = b.and_(b.not_(any_emptied), b.not_(any_kept));
    const Ref res_formula = b.and_(b.not_(res_false), b.not_(res_true));

    std::vector<Ref> out;
    out.reserve(p.total_length());
    out.push_back(g::mux(b, tag.formula, res_false, b.input(0)));
    out.push_back(g::mux(b, tag.formula, res_true, b.input(1)));
    for (uint32_t c = 0; c < Nc; ++c)
        for (uint32_t i = 0; i < p.clause_width(); ++i) {
            const Ref formula_bit = b.and_(res_formula, slot[c][i]);
            out.push_back(g::mux(b, tag.formula, formula_bit, b.input(p.clause_offset(c) + i)));
        }
    // the padding region is identical on every valid input and output
    for (uint32_t i = p.padding_offset(); i < p.total_length(); ++i) out.push_back(b.input(i));
    return b.build(std::move(out));
}

// --- G -------------------------------------------------------------------

ArithCircuit build_G(const EncodingProfile& p, const FieldSpec& field) {
    const uint32_t m = p.total_length();
    ArithCircuitBuilder b(field, m);
    const ArithCircuit r_gadget = build_R(field);
    std::vector<Ref> factors;
    factors.reserve(m + 1);
    for (uint32_t i = 0; i < m; ++i) {
        const Ref in[1] = {b.input(i)};
        factors.push_back(b.append(r_gadget, in)[0]);
    }
    const auto [a_v, report] = arithmetize_circuit(build_V(p), field);
    std::vector<Ref> inputs;
    inputs.reserve(m);
    for (uint32_t i = 0; i < m; ++i) inputs.push_back(b.input(i));
    factors.push_back(b.append(a_v, inputs)[0]);
    return b.build({b.mul_many(factors)});
}

// --- H -------------------------------------------------------------------

ArithCircuit build_H(const BoolCircuit& decider, const EncodingProfile& p, const FieldSpec& field) {
    const uint32_t m = p.total_length();
    if (decider.num_inputs() != m || decider.outputs().size() != 1)
        throw std::invalid_argument("decider must have m inputs and one output");

    const auto [a_c, report] = arithmetize_circuit(decider, field);
    const auto [a_s0, r0] = arithmetize_circuit(build_S(p, false), field);
    const auto [a_s1, r1] = arithmetize_circuit(build_S(p, true), field);

    // fold the decider's base-case values into constants
    auto folded = [&](const BitString& s) {
        std::vector<uint32_t> in(s.bits().begin(), s.bits().end());
        return a_c.eval_indices(in)[0];
    };
    const uint32_t v_one = folded(encoded_true(p));
    const uint32_t v_zero = folded(encoded_false(p));

    ArithCircuitBuilder b(field, m + 3);
    std::vector<Ref> f;
    f.reserve(m);
    for (uint32_t i = 0; i < m; ++i) f.push_back(b.input(i));
    const Ref y0 = b.input(m), y1 = b.input(m + 1), y2 = b.input(m + 2);
    const Ref one = b.constant(1u);

    const Ref t0 = b.mul(y0, b.constant(field.sub_idx(v_one, 1)));
    const Ref t1 = b.mul(y1, b.constant(v_zero));

    const Ref a_f = b.append(a_c, f)[0];
    const auto s0_out = b.append(a_s0, f);
    const Ref a_s0f = b.append(a_c, s0_out)[0];
    const auto s1_out = b.append(a_s1, f);
    const Ref a_s1f = b.append(a_c, s1_out)[0];
    const Ref or_expr = b.sub(one, b.mul(b.sub(one, a_s0f), b.sub(one, a_s1f)));
    const Ref t2 = b.mul(y2, b.sub(a_f, or_expr));

    return b.build({b.add(b.add(t0, t1), t2)});
}

// --- A* ------------------------------------------------------------------

ReductionBundle build_A_star(const BoolCircuit& decider, const EncodingProfile& p,
                             const FieldSpec& field) {
    const uint32_t m = p.total_length();
    if (decider.num_inputs() != m || decider.outputs().size() != 1)
        throw std::invalid_argument("decider must have m inputs and one output");

    auto [a_c, decider_report] = arithmetize_circuit(decider, field);
    (void)a_c;  // H re-derives its own copies; the report is what we keep

    BoolCircuit V = build_V(p);
    BoolCircuit S0 = build_S(p, false);
    BoolCircuit S1 = build_S(p, true);
    ArithCircuit G = build_G(p, field);
    ArithCircuit H = build_H(decider, p, field);

    ArithCircuitBuilder b(field, m + 3);
    std::vector<Ref> f;
    f.reserve(m);
    for (uint32_t i = 0; i < m; ++i) f.push_back(b.input(i));
    std::vector<Ref> all = f;
    all.push_back(b.input(m));
    all.push_back(b.input(m + 1));
    all.push_back(b.input(m + 2));
    const Ref g_out = b.append(G, f)[0];
    const Ref h_out = b.append(H, all)[0];
    ArithCircuit A_star = b.build({b.mul(h_out, g_out)});

    ReductionBundle bundle{p.n(),  p,
                           field,  std::move(V),
                           std::move(S0), std::move(S1),
                           std::move(G),  std::move(H),
                           std::move(A_star), encoded_true(p),
                           encoded_false(p),  decider_report};

    // spot-check the product structure on a few deterministic points
    std::mt19937_64 rng(0x5eedULL);
    std::vector<uint32_t> point(m + 3);
    for (int trial = 0; trial < 8; ++trial) {
        for (auto& v : point) v = static_cast<uint32_t>(rng() % field.q());
        const uint32_t whole = bundle.A_star.eval_indices(point)[0];
        const uint32_t h = bundle.H.eval_indices(point)[0];
        const uint32_t g_val =
            bundle.G.eval_indices(std::span<const uint32_t>(point.data(), m))[0];
        if (whole != field.mul_idx(h, g_val))
            throw std::logic_error("A* does not factor as H*G at a sample point");
    }
    return bundle;
}

// --- bundle I/O ------------------------------------------------------------

void export_bundle(const ReductionBundle& bundle, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto write = [&](const fs::path& name, const std::string& text) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
        out << text;
    };
    write("V.net", to_netlist(bundle.V));
    write("S0.net", to_netlist(bundle.S0));
    write("S1.net", to_netlist(bundle.S1));
    write("G.net", to_netlist(bundle.G));
    write("H.net", to_netlist(bundle.H));
    write("A_star.net", to_netlist(bundle.A_star));

    nlohmann::ordered_json j;
    j["n"] = bundle.n;
    j["profile"] = bundle.profile.name();
    j["field"] = bundle.field.to_literal();
    j["m"] = bundle.m();
    j["one_n"] = bundle.one_n.to_string();
    j["zero_n"] = bundle.zero_n.to_string();
    auto metrics = [](const CircuitMetrics& m) {
        return nlohmann::ordered_json{{"size", m.size}, {"depth", m.depth}};
    };
    j["circuits"] = {
        {"V", metrics(bundle.V.metrics())},   {"S0", metrics(bundle.S0.metrics())},
        {"S1", metrics(bundle.S1.metrics())}, {"G", metrics(bundle.G.metrics())},
        {"H", metrics(bundle.H.metrics())},   {"A_star", metrics(bundle.A_star.metrics())},
    };
    j["decider_arithmetization"] = {
        {"source_size", bundle.decider_report.source_metrics.size},
        {"source_depth", bundle.decider_report.source_metrics.depth},
        {"target_size", bundle.decider_report.target_metrics.size},
        {"target_depth", bundle.decider_report.target_metrics.depth},
    };
    write("manifest.json", j.dump(2) + "\n");
}

ReductionBundle import_bundle(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    auto slurp = [&](const fs::path& name) {
        std::ifstream in(dir / name, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read " + (dir / name).string());
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    };
    const auto manifest = nlohmann::json::parse(slurp("manifest.json"));
    const std::string profile_name = manifest.at("profile");
    const uint32_t n = manifest.at("n");
    const EncodingProfile profile =
        profile_name == "mini" ? EncodingProfile::mini() : EncodingProfile::paper(n);
    const FieldSpec field = FieldSpec::parse_literal(std::string(manifest.at("field")));

    ReductionBundle bundle{n,
                           profile,
                           field,
                           parse_bool_netlist(slurp("V.net")),
                           parse_bool_netlist(slurp("S0.net")),
                           parse_bool_netlist(slurp("S1.net")),
                           parse_arith_netlist(slurp("G.net")),
                           parse_arith_netlist(slurp("H.net")),
                           parse_arith_netlist(slurp("A_star.net")),
                           encoded_true(profile),
                           encoded_false(profile),
                           {}};
    const uint32_t m = profile.total_length();
    if (bundle.V.num_inputs() != m || bundle.A_star.num_inputs() != m + 3 ||
        bundle.S0.outputs().size() != m)
        throw std::runtime_error("bundle circuits do not match the manifest profile");
    if (manifest.contains("decider_arithmetization")) {
        const auto& d = manifest.at("decider_arithmetization");
        bundle.decider_report.source_metrics.size = d.at("source_size").get<uint64_t>();
        bundle.decider_report.source_metrics.depth = d.at("source_depth").get<uint64_t>();
        bundle.decider_report.target_metrics.size = d.at("target_size").get<uint64_t>();
        bundle.decider_report.target_metrics.depth = d.at("target_depth").get<uint64_t>();
    }
    return bundle;
}

}  // namespace ffpit
