// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffpit/harness.hpp"
#include "ffpit/pit.hpp"
#include "test_util.hpp"

using namespace ffpit;
namespace tu = testutil;

namespace {

// x*x - x over the given field
ArithCircuit xx_minus_x(const FieldSpec& f) {
    ArithCircuitBuilder b(f, 1);
    return b.build({b.sub(b.mul(b.input(0), b.input(0)), b.input(0))});
}

ArithCircuit const_zero(const FieldSpec& f) {
    ArithCircuitBuilder b(f, 1);
    return b.build({b.constant(0u)});
}

// c' = c * (x0^q - x0): functionally zero whatever c computes
ArithCircuit times_vanishing(const ArithCircuit& c) {
    const FieldSpec& f = c.field();
    ArithCircuitBuilder b(f, c.num_inputs());
    std::vector<Ref> ins;
    for (uint32_t i = 0; i < c.num_inputs(); ++i) ins.push_back(b.input(i));
    const Ref sub = b.append(c, ins)[0];
    Ref pow = b.input(0);
    for (uint32_t i = 1; i < f.q(); ++i) pow = b.mul(pow, b.input(0));
    const Ref vanish = b.sub(pow, b.input(0));
    return b.build({b.mul(sub, vanish)});
}

}  // namespace

TEST_CASE("exhaustive test on tiny circuits") {
    const FieldSpec f2(2, 1), f3(3, 1);
    CHECK(exhaustive_test(xx_minus_x(f2)).outcome == PitOutcome::IdenticallyZero);

    const PitVerdict v = exhaustive_test(xx_minus_x(f3));
    REQUIRE(v.outcome == PitOutcome::NonzeroWitness);
    CHECK(v.witness == std::vector<uint32_t>{2});  // lexicographically first
    CHECK(v.witness_value->index() == 2);          // 4 - 2 = 2 mod 3

    CHECK(exhaustive_test(const_zero(f3)).outcome == PitOutcome::IdenticallyZero);
}

TEST_CASE("exhaustive witness is lexicographically first") {
    const FieldSpec f3(3, 1);
    // f(x,y) = x*y: first nonzero point in lex order is (1,1)
    ArithCircuitBuilder b(f3, 2);
    const ArithCircuit c = b.build({b.mul(b.input(0), b.input(1))});
    const PitVerdict v = exhaustive_test(c);
    REQUIRE(v.outcome == PitOutcome::NonzeroWitness);
    CHECK(v.witness == std::vector<uint32_t>{1, 1});
}

TEST_CASE("exhaustive budget") {
    const FieldSpec f2(2, 1);
    ArithCircuitBuilder b(f2, 30);
    const ArithCircuit wide = b.build({b.input(29)});
    CHECK_THROWS_AS(exhaustive_test(wide, 1 << 20), std::invalid_argument);
}

TEST_CASE("uniform sampling is reproducible and never certifies zero") {
    const FieldSpec f3(3, 1);
    const ArithCircuit c = xx_minus_x(f3);
    const PitVerdict a = sample_test(c, SampleStrategy::uniform(), 64, 1234);
    const PitVerdict b = sample_test(c, SampleStrategy::uniform(), 64, 1234);
    CHECK(a.outcome == b.outcome);
    CHECK(a.trials == b.trials);
    CHECK(a.witness == b.witness);
    CHECK(a.outcome == PitOutcome::NonzeroWitness);  // a third of points are witnesses

    const PitVerdict z = sample_test(const_zero(f3), SampleStrategy::uniform(), 200, 7);
    CHECK(z.outcome == PitOutcome::Inconclusive);  // uniform never claims IdenticallyZero
    CHECK_THROWS_AS(sample_test(c, SampleStrategy::uniform(), 0, 1), std::invalid_argument);
}

TEST_CASE("structured strategy: full coverage claims zero only over F(2)") {
    const auto p = EncodingProfile::mini();
    const FieldSpec f2(2, 1), f3(3, 1);

    const ReductionBundle b2 = build_A_star(synth_decider(p), p, f2);
    const PitVerdict v2 =
        sample_test(b2.A_star, SampleStrategy::valid_encodings(b2), 1'000'000, 0);
    CHECK(v2.outcome == PitOutcome::IdenticallyZero);
    CHECK(v2.method == PitMethod::Structured);
    CHECK(v2.full_coverage);
    CHECK(v2.trials == 15);  // 5 instances x 3 unit vectors

    const ReductionBundle b3 = build_A_star(synth_decider(p), p, f3);
    const PitVerdict v3 =
        sample_test(b3.A_star, SampleStrategy::valid_encodings(b3), 1'000'000, 0);
    CHECK(v3.outcome == PitOutcome::Inconclusive);  // q > 2 stays inconclusive
    CHECK(v3.full_coverage);
}

TEST_CASE("structured strategy finds a planted disagreement") {
    const auto p = EncodingProfile::mini();
    const FieldSpec f2(2, 1);
    const BoolCircuit good = synth_decider(p);
    const BitString target = encode(ThreeSatInstance::formula(1, {{{1, true}}}), p);
    const BoolCircuit bad = break_on_encoding(good, target);
    const ReductionBundle bundle = build_A_star(bad, p, f2);
    const PitVerdict v =
        sample_test(bundle.A_star, SampleStrategy::valid_encodings(bundle), 1'000'000, 0);
    REQUIRE(v.outcome == PitOutcome::NonzeroWitness);
    CHECK(verify_witness_indices(bundle.A_star, v.witness) == v.witness_value->index());
}

TEST_CASE("structured strategy validates its inputs") {
    const auto p = EncodingProfile::mini();
    const FieldSpec f2(2, 1);
    const ReductionBundle bundle = build_A_star(synth_decider(p), p, f2);
    CHECK_THROWS_AS(sample_test(xx_minus_x(f2), SampleStrategy::valid_encodings(bundle), 10, 0),
                    std::invalid_argument);
    SampleStrategy missing;
    missing.kind = SampleStrategy::Kind::ValidEncodings;
    CHECK_THROWS_AS(sample_test(bundle.A_star, missing, 10, 0), std::invalid_argument);
}

TEST_CASE("symbolic canonical forms") {
    const FieldSpec f2(2, 1), f3(3, 1);
    CHECK(symbolic_canonical(xx_minus_x(f2)).is_zero());   // x^2 reduces to x
    CHECK_FALSE(symbolic_canonical(xx_minus_x(f3)).is_zero());  // already canonical

    // R over F(2): 1 - (x(x-1))^1 reduces to the constant 1
    const SparsePoly r2 = symbolic_canonical(build_R(f2));
    REQUIRE(r2.term_count() == 1);
    CHECK(r2.terms().begin()->first == std::vector<uint32_t>{0});
    CHECK(r2.terms().begin()->second == 1);

    // formal vs functional: x^q - x is formally nonzero, functionally zero
    ArithCircuitBuilder b(f3, 1);
    Ref pow = b.mul(b.mul(b.input(0), b.input(0)), b.input(0));
    const ArithCircuit vanish = b.build({b.sub(pow, b.input(0))});
    CHECK(symbolic_canonical(vanish).is_zero());
    CHECK_FALSE(symbolic_formal(vanish).is_zero());
}

TEST_CASE("canonicalization is idempotent") {
    const FieldSpec f3(3, 1);
    for (uint64_t seed = 0; seed < 30; ++seed) {
        const ArithCircuit c = tu::random_arith_circuit(seed, f3, 4, 25);
        const SparsePoly p = symbolic_canonical(c);
        const SparsePoly again = p.canonicalized();
        CHECK(again.terms() == p.terms());
    }
}

TEST_CASE("symbolic agrees with exhaustive on random circuits") {
    for (const FieldSpec& f : {FieldSpec(2, 1), FieldSpec(3, 1)}) {
        for (uint64_t seed = 0; seed < 60; ++seed) {
            const ArithCircuit c = tu::random_arith_circuit(seed, f, 6, 40);
            const bool sym_zero = symbolic_canonical(c).is_zero();
            const bool exh_zero = exhaustive_test(c).outcome == PitOutcome::IdenticallyZero;
            CHECK(sym_zero == exh_zero);
        }
        // force the zero side with vanishing multiples
        for (uint64_t seed = 0; seed < 10; ++seed) {
            const ArithCircuit c = times_vanishing(tu::random_arith_circuit(seed, f, 3, 15));
            CHECK(symbolic_canonical(c).is_zero());
            CHECK(exhaustive_test(c).outcome == PitOutcome::IdenticallyZero);
        }
    }
}

TEST_CASE("symbolic_test extracts a verifiable witness") {
    const FieldSpec f3(3, 1);
    const PitVerdict v = symbolic_test(xx_minus_x(f3));
    REQUIRE(v.outcome == PitOutcome::NonzeroWitness);
    CHECK(verify_witness_indices(xx_minus_x(f3), v.witness) == v.witness_value->index());
    CHECK(symbolic_test(times_vanishing(xx_minus_x(f3))).outcome == PitOutcome::IdenticallyZero);
}

TEST_CASE("SparsePoly term budget") {
    const FieldSpec f5(5, 1);
    // (x0+1)(x1+1)...(x9+1) explodes multiplicatively
    ArithCircuitBuilder b(f5, 10);
    Ref acc = b.add(b.input(0), b.one());
    for (uint32_t i = 1; i < 10; ++i) acc = b.mul(acc, b.add(b.input(i), b.one()));
    const ArithCircuit c = b.build({acc});
    CHECK_THROWS_AS(symbolic_canonical(c, 100), TermBudgetExceeded);
}

TEST_CASE("verify_witness") {
    const FieldSpec f3(3, 1);
    const ArithCircuit c = xx_minus_x(f3);
    CHECK(verify_witness(c, std::vector<FieldElement>{f3.element(2)}) == f3.element(2));
    CHECK(verify_witness(c, std::vector<FieldElement>{f3.element(0)}) == f3.zero());
    CHECK(verify_witness_indices(const_zero(f3), std::vector<uint32_t>{1}) == 0);
    CHECK_THROWS_AS(verify_witness(c, std::vector<FieldElement>{f3.one(), f3.one()}),
                    std::invalid_argument);
}

TEST_CASE("tampered witnesses surface as internal-consistency errors") {
    const FieldSpec f3(3, 1);
    const ArithCircuit c = xx_minus_x(f3);
    PitVerdict v = exhaustive_test(c);
    REQUIRE(v.outcome == PitOutcome::NonzeroWitness);
    assert_witness_verifies(c, v);  // genuine witness passes

    PitVerdict moved = v;
    moved.witness = {0};  // point where the circuit vanishes
    CHECK_THROWS_AS(assert_witness_verifies(c, moved), std::logic_error);

    PitVerdict misvalued = v;
    misvalued.witness_value = f3.one();  // claim differs from the evaluation
    CHECK_THROWS_AS(assert_witness_verifies(c, misvalued), std::logic_error);
}

TEST_CASE("poly evaluation matches the circuit") {
    const FieldSpec f9(3, 2);
    for (uint64_t seed = 0; seed < 15; ++seed) {
        const ArithCircuit c = tu::random_arith_circuit(seed, f9, 3, 20);
        const SparsePoly p = symbolic_canonical(c);
        tu::Rng rng(seed);
        for (int t = 0; t < 30; ++t) {
            std::vector<uint32_t> point(c.num_inputs());
            for (auto& v : point) v = uint32_t(rng.next(9));
            CHECK(p.eval_indices(point) == c.eval_indices(point)[0]);
        }
    }
}
