// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffpit/arithmetize.hpp"
#include "test_util.hpp"

using namespace ffpit;
namespace tu = testutil;

namespace {

// boolean/arithmetic agreement on every 0/1 assignment
void check_equivalent(const BoolCircuit& c, const ArithCircuit& a) {
    REQUIRE(a.num_inputs() == c.num_inputs());
    REQUIRE(a.outputs().size() == c.outputs().size());
    for (const auto& bits : tu::all_bit_assignments(c.num_inputs())) {
        const auto want = c.eval(bits);
        std::vector<uint32_t> in(bits.begin(), bits.end());
        const auto got = a.eval_indices(in);
        for (size_t i = 0; i < want.size(); ++i) CHECK(uint32_t(want[i]) == got[i]);
    }
}

}  // namespace

TEST_CASE("gate translations") {
    const FieldSpec f3(3, 1);
    const BoolCircuit c_and = [&] {
        BoolCircuitBuilder b(2);
        return b.build({b.and_(b.input(0), b.input(1))});
    }();
    const auto [a_and, r_and] = arithmetize_circuit(c_and, f3);
    CHECK(a_and.eval_indices(std::vector<uint32_t>{1, 1})[0] == 1);  // 1*1
    check_equivalent(c_and, a_and);

    const BoolCircuit c_or = [&] {
        BoolCircuitBuilder b(2);
        return b.build({b.or_(b.input(0), b.input(1))});
    }();
    const auto [a_or, r_or] = arithmetize_circuit(c_or, f3);
    CHECK(a_or.eval_indices(std::vector<uint32_t>{0, 0})[0] == 0);  // 1-(1-0)(1-0)
    check_equivalent(c_or, a_or);

    const BoolCircuit c_not = [&] {
        BoolCircuitBuilder b(1);
        return b.build({b.not_(b.input(0))});
    }();
    const auto [a_not, r_not] = arithmetize_circuit(c_not, f3);
    CHECK(a_not.eval_indices(std::vector<uint32_t>{0})[0] == 1);  // 1-0
    check_equivalent(c_not, a_not);

    const BoolCircuit consts = [&] {
        BoolCircuitBuilder b(0);
        return b.build({b.const0(), b.const1()});
    }();
    check_equivalent(consts, arithmetize_circuit(consts, f3).first);
}

TEST_CASE("rejects unbounded input") {
    BoolCircuitBuilder b(3, FaninMode::Unbounded);
    const BoolCircuit c =
        b.build({b.add_gate(BoolOp::Or, std::vector<Ref>{b.input(0), b.input(1), b.input(2)})});
    CHECK_THROWS_AS(arithmetize_circuit(c, FieldSpec(2, 1)), std::invalid_argument);
}

TEST_CASE("equivalence and bounds on seeded random circuits") {
    const FieldSpec fields[] = {FieldSpec(2, 1), FieldSpec(3, 1), FieldSpec(2, 2)};
    for (uint64_t seed = 0; seed < 60; ++seed) {
        const BoolCircuit c = tu::random_bool_circuit(seed, 8, 120);
        for (const FieldSpec& f : fields) {
            const auto [a, report] = arithmetize_circuit(c, f);
            check_equivalent(c, a);
            CHECK(report.target_metrics.size <= 4 * report.source_metrics.size + 1);
            CHECK(report.target_metrics.depth <= 3 * report.source_metrics.depth + 1);
            CHECK(report.size_bound_holds());
            CHECK(report.depth_bound_holds());
        }
    }
}

TEST_CASE("unbounded arithmetization") {
    const FieldSpec f2(2, 1);
    const BoolCircuit wide_or = [&] {
        BoolCircuitBuilder b(4, FaninMode::Unbounded);
        return b.build({b.add_gate(BoolOp::Or, std::vector<Ref>{b.input(0), b.input(1), b.input(2),
                                                                b.input(3)})});
    }();
    const auto [a_or, r_or] = unbounded_arithmetize(wide_or, f2);
    CHECK(a_or.eval_indices(std::vector<uint32_t>{0, 0, 0, 1})[0] == 1);
    check_equivalent(wide_or, a_or);

    const BoolCircuit wide_and = [&] {
        BoolCircuitBuilder b(3, FaninMode::Unbounded);
        return b.build(
            {b.add_gate(BoolOp::And, std::vector<Ref>{b.input(0), b.input(1), b.input(2)})});
    }();
    const auto [a_and, r_and] = unbounded_arithmetize(wide_and, f2);
    CHECK(a_and.eval_indices(std::vector<uint32_t>{1, 1, 0})[0] == 0);
    check_equivalent(wide_and, a_and);

    // depth-3-ish random unbounded circuits, exhaustive over 8 inputs
    const FieldSpec f3(3, 1);
    for (uint64_t seed = 0; seed < 30; ++seed) {
        const BoolCircuit c = tu::random_unbounded_circuit(seed, 8, 12, 8);
        const auto [a, report] = unbounded_arithmetize(c, f3);
        check_equivalent(c, a);
        CHECK(report.depth_bound_holds());
        CHECK(report.depth_constant == 4);
    }
}

TEST_CASE("R gadget") {
    // R(x) = 1 - (x(x-1))^(q-1): value 1 on {0,1}, zero elsewhere
    const uint32_t sizes[] = {2, 3, 4, 5, 7, 8, 9};
    for (uint32_t q : sizes) {
        const FieldSpec f = q == 4   ? FieldSpec(2, 2)
                            : q == 8 ? FieldSpec(2, 3)
                            : q == 9 ? FieldSpec(3, 2)
                                     : FieldSpec(q, 1);
        const ArithCircuit r = build_R(f);
        REQUIRE(r.num_inputs() == 1);
        for (uint32_t v = 0; v < q; ++v) {
            const uint32_t out = r.eval_indices(std::vector<uint32_t>{v})[0];
            if (v <= 1) CHECK(out == 1);
            else CHECK(out == 0);
        }
    }
    // F(3): R(2) = 1 - (2*1)^2 = 0
    CHECK(build_R(FieldSpec(3, 1)).eval_indices(std::vector<uint32_t>{2})[0] == 0);
}
