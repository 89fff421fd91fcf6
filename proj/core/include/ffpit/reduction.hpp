// SPDX-License-Identifier: Apache-2.0
//
// The verification pipeline circuits: the encoding-validity circuit V,
// the substitution circuits S0/S1, the booleanness-and-validity gadget
// G, the recursion checker H, and the assembled identity-testing
// instance A* = H * G.

#ifndef FFPIT_REDUCTION_HPP
#define FFPIT_REDUCTION_HPP

#include <filesystem>

#include "ffpit/arithmetize.hpp"
#include "ffpit/circuit.hpp"
#include "ffpit/encoding.hpp"

namespace ffpit {

/* Everything built for one (profile, field, decider) triple. With
   m = profile.total_length():
     V:  m inputs, 1 output   - matches is_valid_encoding bit for bit
     S0, S1: m inputs, m outputs - encoding-level substitution
     G:  m inputs, 1 output   - R(x_1)...R(x_m) * arithmetized V
     H:  m+3 inputs (f, y0, y1, y2), 1 output - recursion checker
     A_star: m+3 inputs, 1 output - H * G(f)
   H is linear in (y0, y1, y2): evaluating at the three unit y-vectors
   recovers its coefficient functions exactly. */
struct ReductionBundle {
    uint32_t n;
    EncodingProfile profile;
    FieldSpec field;
    BoolCircuit V;
    BoolCircuit S0;
    BoolCircuit S1;
    ArithCircuit G;
    ArithCircuit H;
    ArithCircuit A_star;
    BitString one_n;
    BitString zero_n;
    ArithmetizationReport decider_report;

    uint32_t m() const { return profile.total_length(); }
};

/// Validity circuit: eval_bool(V, s) == is_valid_encoding(s) for every
/// m-bit string s.
BoolCircuit build_V(const EncodingProfile& profile);

/* Substitution circuit for the given constant. On a valid encoding of f
   it outputs the encoding of substitute(f, value); the constants
   encoded_true/encoded_false pass through unchanged, as does any input
   whose tag is not FORMULA. Behavior on other invalid encodings is
   unconstrained (G masks them). */
BoolCircuit build_S(const EncodingProfile& profile, bool value);

/// G(x) = R(x_1)...R(x_m) * A_V(x) with a balanced product tree: zero
/// whenever some coordinate is outside {0,1} or the bits are not a valid
/// encoding, nonzero on valid encodings.
ArithCircuit build_G(const EncodingProfile& profile, const FieldSpec& field);

/* H(f, y0, y1, y2) =
     y0*(A_C(one_n) - 1) + y1*A_C(zero_n)
     + y2*(A_C(f) - (1 - (1 - A_C(S0(f)))(1 - A_C(S1(f)))))
   with A_C(one_n) and A_C(zero_n) folded to constants. A_C appears
   three times, deliberately unshared. */
ArithCircuit build_H(const BoolCircuit& decider, const EncodingProfile& profile,
                     const FieldSpec& field);

/// Assemble the full bundle for a decider with m inputs and 1 output.
ReductionBundle build_A_star(const BoolCircuit& decider, const EncodingProfile& profile,
                             const FieldSpec& field);

/// Write V.net, S0.net, S1.net, G.net, H.net, A_star.net plus a
/// manifest.json with parameters, sizes and depths into `dir`.
void export_bundle(const ReductionBundle& bundle, const std::filesystem::path& dir);
ReductionBundle import_bundle(const std::filesystem::path& dir);

}  // namespace ffpit

#endif  // FFPIT_REDUCTION_HPP
