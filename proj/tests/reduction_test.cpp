// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "ffpit/harness.hpp"
#include "ffpit/reduction.hpp"
#include "test_util.hpp"

using namespace ffpit;
namespace tu = testutil;

namespace {

Clause cl(std::initializer_list<int> lits) {
    Clause c;
    for (int l : lits) c.push_back({uint32_t(l < 0 ? -l : l), l > 0});
    return c;
}

std::vector<uint8_t> to_bits(const BitString& s) {
    return {s.bits().begin(), s.bits().end()};
}

uint8_t eval1(const BoolCircuit& c, const std::vector<uint8_t>& in) { return c.eval(in)[0]; }

BitString random_string(tu::Rng& rng, const EncodingProfile& p) {
    std::vector<uint8_t> bits(p.total_length());
    for (auto& b : bits) b = uint8_t(rng.next(2));
    return BitString(std::move(bits), p);
}

}  // namespace

TEST_CASE("V equals the reference predicate") {
    for (const auto& profile : {EncodingProfile::mini(), EncodingProfile::paper(1),
                                EncodingProfile::paper(2)}) {
        const BoolCircuit V = build_V(profile);
        REQUIRE(V.num_inputs() == profile.total_length());

        // every valid encoding is accepted
        for (const auto& f : enumerate_instances(profile.n())) {
            const BitString s = encode(f, profile);
            CHECK(eval1(V, to_bits(s)) == 1);
        }
        // the all-ones string has the forbidden tag
        CHECK(eval1(V, std::vector<uint8_t>(profile.total_length(), 1)) == 0);

        // agreement with is_valid_encoding on random strings
        tu::Rng rng(17 + profile.total_length());
        const int trials = profile.total_length() <= 6 ? 64 : 10'000;
        for (int t = 0; t < trials; ++t) {
            const BitString s = random_string(rng, profile);
            CHECK(eval1(V, to_bits(s)) == (is_valid_encoding(s) ? 1 : 0));
        }
        // and on every single-bit flip of every valid encoding
        for (const auto& f : enumerate_instances(profile.n())) {
            const BitString s = encode(f, profile);
            for (uint32_t i = 0; i < profile.total_length(); ++i) {
                const BitString flipped = s.with_bit(i, s[i] == 0);
                CHECK(eval1(V, to_bits(flipped)) == (is_valid_encoding(flipped) ? 1 : 0));
            }
        }
    }
}

TEST_CASE("mini V exhaustively matches the reference") {
    const auto mini = EncodingProfile::mini();
    const BoolCircuit V = build_V(mini);
    for (uint32_t v = 0; v < 64; ++v) {
        std::vector<uint8_t> bits(6);
        for (uint32_t i = 0; i < 6; ++i) bits[i] = (v >> (5 - i)) & 1u;
        const BitString s(bits, mini);
        CHECK(eval1(V, bits) == (is_valid_encoding(s) ? 1 : 0));
    }
}

TEST_CASE("S realizes substitution on every valid encoding") {
    for (const auto& profile : {EncodingProfile::mini(), EncodingProfile::paper(2)}) {
        const BoolCircuit S0 = build_S(profile, false);
        const BoolCircuit S1 = build_S(profile, true);
        REQUIRE(S0.outputs().size() == profile.total_length());
        for (const auto& f : enumerate_instances(profile.n())) {
            const BitString enc = encode(f, profile);
            const auto out0 = S0.eval(to_bits(enc));
            const auto out1 = S1.eval(to_bits(enc));
            const BitString got0(out0, profile);
            const BitString got1(out1, profile);
            CHECK(got0 == encode(substitute(f, false), profile));
            CHECK(got1 == encode(substitute(f, true), profile));
        }
    }
}

TEST_CASE("S examples") {
    const auto p = EncodingProfile::paper(2);
    const BoolCircuit S0 = build_S(p, false);
    const BoolCircuit S1 = build_S(p, true);

    // substituting 0 into (x1) yields FALSE
    const BitString x1 = encode(ThreeSatInstance::formula(2, {cl({1})}), p);
    CHECK(BitString(S0.eval(to_bits(x1)), p) == encoded_false(p));

    // the constants pass through
    CHECK(BitString(S1.eval(to_bits(encoded_true(p))), p) == encoded_true(p));
    CHECK(BitString(S0.eval(to_bits(encoded_true(p))), p) == encoded_true(p));
    CHECK(BitString(S1.eval(to_bits(encoded_false(p))), p) == encoded_false(p));
}

TEST_CASE("G vanishes exactly off the valid encodings") {
    const auto p = EncodingProfile::mini();
    for (const FieldSpec& field : {FieldSpec(2, 1), FieldSpec(3, 1)}) {
        const ArithCircuit G = build_G(p, field);
        REQUIRE(G.num_inputs() == p.total_length());

        for (const auto& f : enumerate_instances(1)) {
            const BitString enc = encode(f, p);
            std::vector<uint32_t> in(enc.bits().begin(), enc.bits().end());
            CHECK(G.eval_indices(in)[0] != 0);
        }
        // binary non-encodings are killed by the arithmetized V factor
        tu::Rng rng(5);
        for (int t = 0; t < 200; ++t) {
            const BitString s = random_string(rng, p);
            if (is_valid_encoding(s)) continue;
            std::vector<uint32_t> in(s.bits().begin(), s.bits().end());
            CHECK(G.eval_indices(in)[0] == 0);
        }
        // any non-binary coordinate is killed by its R factor
        if (field.q() > 2) {
            const BitString one = encoded_true(p);
            for (uint32_t i = 0; i < p.total_length(); ++i) {
                std::vector<uint32_t> in(one.bits().begin(), one.bits().end());
                in[i] = 2;
                CHECK(G.eval_indices(in)[0] == 0);
            }
        }
    }
}

TEST_CASE("G on the paper profile rejects a flipped padding bit") {
    const auto p = EncodingProfile::paper(2);
    const FieldSpec f2(2, 1);
    const ArithCircuit G = build_G(p, f2);
    const BitString one = encoded_true(p);
    std::vector<uint32_t> in(one.bits().begin(), one.bits().end());
    CHECK(G.eval_indices(in)[0] != 0);
    in[p.total_length() - 1] = 1;  // break the padding tail
    CHECK(G.eval_indices(in)[0] == 0);
}

TEST_CASE("H vanishes for a correct decider and is linear in y") {
    const auto p = EncodingProfile::mini();
    const FieldSpec f3(3, 1);
    const BoolCircuit decider = synth_decider(p);
    const ArithCircuit H = build_H(decider, p, f3);
    REQUIRE(H.num_inputs() == p.total_length() + 3);

    const uint32_t m = p.total_length();
    for (const auto& f : enumerate_instances(1)) {
        const BitString enc = encode(f, p);
        std::vector<uint32_t> in(m + 3, 0);
        for (uint32_t i = 0; i < m; ++i) in[i] = enc[i];
        for (uint32_t u = 0; u < 3; ++u) {
            std::fill(in.begin() + m, in.end(), 0);
            in[m + u] = 1;
            CHECK(H.eval_indices(in)[0] == 0);
        }
    }

    // H(f, y) = y0 c0(f) + y1 c1(f) + y2 c2(f) for arbitrary points
    tu::Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        std::vector<uint32_t> base(m + 3, 0);
        for (uint32_t i = 0; i < m; ++i) base[i] = uint32_t(rng.next(3));
        uint32_t coef[3];
        for (uint32_t u = 0; u < 3; ++u) {
            std::fill(base.begin() + m, base.end(), 0);
            base[m + u] = 1;
            coef[u] = H.eval_indices(base)[0];
        }
        for (int s = 0; s < 5; ++s) {
            uint32_t y[3] = {uint32_t(rng.next(3)), uint32_t(rng.next(3)), uint32_t(rng.next(3))};
            for (uint32_t u = 0; u < 3; ++u) base[m + u] = y[u];
            uint32_t expect = 0;
            for (uint32_t u = 0; u < 3; ++u)
                expect = f3.add_idx(expect, f3.mul_idx(y[u], coef[u]));
            CHECK(H.eval_indices(base)[0] == expect);
        }
    }
}

TEST_CASE("H flags a stuck-at-0 decider through its first coefficient") {
    const auto p = EncodingProfile::mini();
    const FieldSpec f3(3, 1);
    // a decider that always answers 0 gets A_C(one_n) - 1 = -1
    BoolCircuitBuilder b(p.total_length());
    const BoolCircuit zero_decider = b.build({b.const0()});
    const ArithCircuit H = build_H(zero_decider, p, f3);
    const uint32_t m = p.total_length();
    std::vector<uint32_t> in(m + 3, 0);
    const BitString any = encode(ThreeSatInstance::formula(1, {cl({1})}), p);
    for (uint32_t i = 0; i < m; ++i) in[i] = any[i];
    in[m] = 1;  // y = (1, 0, 0)
    CHECK(H.eval_indices(in)[0] == f3.neg_idx(1));  // -1 mod 3 = 2
}

TEST_CASE("composing the arithmetized decider with S evaluates A_C(S(f))") {
    const auto p = EncodingProfile::mini();
    const FieldSpec f3(3, 1);
    const BoolCircuit decider = synth_decider(p);
    const auto [a_c, rc] = arithmetize_circuit(decider, f3);
    const auto [a_s0, rs] = arithmetize_circuit(build_S(p, false), f3);
    std::map<uint32_t, uint32_t> wiring;
    for (uint32_t i = 0; i < p.total_length(); ++i) wiring[i] = i;
    const ArithCircuit chained = compose(a_c, a_s0, wiring);
    REQUIRE(chained.num_inputs() == p.total_length());
    REQUIRE(chained.metrics().size == a_c.metrics().size + a_s0.metrics().size);
    for (const auto& f : enumerate_instances(1)) {
        const BitString enc = encode(f, p);
        std::vector<uint32_t> in(enc.bits().begin(), enc.bits().end());
        const uint32_t direct =
            brute_force_sat(substitute(f, false)) == SatResult::Sat ? 1 : 0;
        CHECK(chained.eval_indices(in)[0] == direct);
    }
}

TEST_CASE("A* bundle assembles and sizes add up") {
    const auto p = EncodingProfile::mini();
    const FieldSpec f2(2, 1);
    const ReductionBundle bundle = build_A_star(synth_decider(p), p, f2);
    CHECK(bundle.A_star.num_inputs() == bundle.m() + 3);
    CHECK(bundle.A_star.metrics().size ==
          bundle.G.metrics().size + bundle.H.metrics().size + 1);
    CHECK(bundle.one_n == encoded_true(p));
    CHECK(bundle.zero_n == encoded_false(p));
    CHECK(bundle.decider_report.size_bound_holds());
}

TEST_CASE("A* is exhaustively zero for the correct decider on the mini profile") {
    const auto p = EncodingProfile::mini();
    for (const FieldSpec& field : {FieldSpec(2, 1), FieldSpec(3, 1)}) {
        const ReductionBundle bundle = build_A_star(synth_decider(p), p, field);
        const uint32_t arity = bundle.m() + 3;
        std::vector<uint32_t> point(arity, 0);
        uint64_t count = 0;
        while (true) {
            CHECK(bundle.A_star.eval_indices(point)[0] == 0);
            ++count;
            size_t i = arity;
            while (i > 0) {
                if (++point[i - 1] < field.q()) break;
                point[i - 1] = 0;
                --i;
            }
            if (i == 0) break;
        }
        CHECK(count == uint64_t(std::pow(double(field.q()), double(arity))));
    }
}

TEST_CASE("G masks a decider corrupted only on an invalid encoding") {
    const auto p = EncodingProfile::mini();
    const BoolCircuit correct = synth_decider(p);
    // flip the decider's answer on the all-zeros string, which is not a
    // valid encoding; A* must stay the zero function
    const BitString invalid(std::vector<uint8_t>(p.total_length(), 0), p);
    REQUIRE_FALSE(is_valid_encoding(invalid));
    const BoolCircuit corrupted = break_on_encoding(correct, invalid);
    CHECK(classify_decider(corrupted, p).classification() == DeciderClass::AgreesOnValid);
    for (const FieldSpec& field : {FieldSpec(2, 1), FieldSpec(3, 1)}) {
        const ReductionBundle bundle = build_A_star(corrupted, p, field);
        CHECK(exhaustive_test(bundle.A_star).outcome == PitOutcome::IdenticallyZero);
    }
}

TEST_CASE("A* catches an output-negated decider at (one_n, y0)") {
    const auto p = EncodingProfile::mini();
    const FieldSpec f2(2, 1);
    const auto [mutant, note] = mutate(synth_decider(p), MutationOp::NegateOutput, 3);
    const ReductionBundle bundle = build_A_star(mutant, p, f2);
    const uint32_t m = bundle.m();
    std::vector<uint32_t> in(m + 3, 0);
    for (uint32_t i = 0; i < m; ++i) in[i] = bundle.one_n[i];
    in[m] = 1;  // y = (1,0,0) exposes A_C(one_n) - 1
    CHECK(bundle.A_star.eval_indices(in)[0] != 0);
}

TEST_CASE("paper profile over F(3): H vanishes on valid encodings, G masks the rest") {
    const auto p = EncodingProfile::paper(2);
    const FieldSpec f3(3, 1);
    const uint32_t m = p.total_length();
    const ArithCircuit H = build_H(synth_decider(p), p, f3);
    const ArithCircuit G = build_G(p, f3);

    std::vector<uint32_t> point(m + 3, 0);
    std::vector<uint32_t> scratch;
    for (const auto& f : enumerate_instances(2)) {
        const BitString enc = encode(f, p);
        for (uint32_t i = 0; i < m; ++i) point[i] = enc[i];
        for (uint32_t u = 0; u < 3; ++u) {
            std::fill(point.begin() + m, point.end(), 0);
            point[m + u] = 1;
            H.eval_all_indices(point, scratch);
            CHECK(H.value_of(scratch, H.outputs()[0]) == 0);
        }
        CHECK(G.eval_indices(std::span<const uint32_t>(point.data(), m))[0] != 0);
    }

    // invalid binary strings die in the arithmetized V factor
    tu::Rng rng(31);
    std::vector<uint32_t> g_in(m);
    for (int t = 0; t < 200; ++t) {
        std::vector<uint8_t> bits(m);
        for (auto& v : bits) v = uint8_t(rng.next(2));
        if (is_valid_encoding(BitString(bits, p))) continue;
        for (uint32_t i = 0; i < m; ++i) g_in[i] = bits[i];
        CHECK(G.eval_indices(g_in)[0] == 0);
    }
    // one non-binary coordinate dies in its R factor
    const BitString one = encoded_true(p);
    for (uint32_t i = 0; i < m; ++i) g_in[i] = one[i];
    g_in[7] = 2;
    CHECK(G.eval_indices(g_in)[0] == 0);
}

TEST_CASE("builders reject a wrong-arity decider") {
    const auto p = EncodingProfile::mini();
    BoolCircuitBuilder b(3);
    const BoolCircuit narrow = b.build({b.and_(b.input(0), b.input(1))});
    CHECK_THROWS_AS(build_H(narrow, p, FieldSpec(2, 1)), std::invalid_argument);
    CHECK_THROWS_AS(build_A_star(narrow, p, FieldSpec(2, 1)), std::invalid_argument);
}

TEST_CASE("bundle export/import round-trip") {
    const auto p = EncodingProfile::mini();
    const FieldSpec f2(2, 1);
    const ReductionBundle bundle = build_A_star(synth_decider(p), p, f2);
    const auto dir = std::filesystem::temp_directory_path() / "ffpit_bundle_test";
    std::filesystem::remove_all(dir);
    export_bundle(bundle, dir);
    for (const char* name : {"V.net", "S0.net", "S1.net", "G.net", "H.net", "A_star.net",
                             "manifest.json"})
        CHECK(std::filesystem::exists(dir / name));

    const ReductionBundle back = import_bundle(dir);
    CHECK(back.n == bundle.n);
    CHECK(back.profile == bundle.profile);
    CHECK(back.field == bundle.field);
    CHECK(back.one_n == bundle.one_n);
    // circuits evaluate identically
    tu::Rng rng(21);
    for (int t = 0; t < 50; ++t) {
        std::vector<uint32_t> point(bundle.m() + 3);
        for (auto& v : point) v = uint32_t(rng.next(f2.q()));
        CHECK(back.A_star.eval_indices(point) == bundle.A_star.eval_indices(point));
    }
    std::filesystem::remove_all(dir);
}
