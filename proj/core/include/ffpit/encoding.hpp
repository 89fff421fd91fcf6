// SPDX-License-Identifier: Apache-2.0
//
// Fixed-length binary encodings of normalized 3SAT instances.
//
// Layout (bit 0 first): a 2-bit tag (00=FORMULA, 01=TRUE, 10=FALSE, 11
// forbidden), then `clause_slots` clause slots, then padding (a single 1
// followed by 0s) when the slot area does not fill the string. Each
// clause slot holds `lits_per_clause` literal slots of shape
// (active bit, sign bit, index bits MSB-first); sign 1 means a positive
// literal. Active clause slots form a prefix in strictly increasing
// canonical order, active literal slots form a prefix with strictly
// increasing variable indices, and every inactive slot is all-zero,
// which makes the encoding of an instance unique.

#ifndef FFPIT_ENCODING_HPP
#define FFPIT_ENCODING_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ffpit/sat3.hpp"

namespace ffpit {

class EncodingProfile {
public:
    /// Full-size layout: total length 8*max(n,2)^4, three literal slots
    /// per clause, index width ceil(log2(n+1)).
    static EncodingProfile paper(uint32_t n);
    /// Six-bit layout for n = 1: tag plus two single-literal clause
    /// slots of (active, sign) with the variable index implicit. Small
    /// enough that the full reduction stays exhaustively checkable.
    static EncodingProfile mini();

    const std::string& name() const { return name_; }
    uint32_t n() const { return n_; }
    uint32_t total_length() const { return total_length_; }
    uint32_t tag_width() const { return 2; }
    uint32_t clause_slots() const { return clause_slots_; }
    uint32_t lits_per_clause() const { return lits_per_clause_; }
    uint32_t index_width() const { return index_width_; }
    uint32_t lit_width() const { return 2 + index_width_; }
    uint32_t clause_width() const { return lits_per_clause_ * lit_width(); }
    uint32_t padding_offset() const { return tag_width() + clause_slots_ * clause_width(); }
    bool has_padding() const { return padding_offset() < total_length_; }

    uint32_t clause_offset(uint32_t c) const { return tag_width() + c * clause_width(); }
    uint32_t lit_offset(uint32_t c, uint32_t l) const { return clause_offset(c) + l * lit_width(); }

    /// Number of distinct valid clauses over [1, n]; the slot area always
    /// has at least this capacity.
    static uint64_t max_clause_count(uint32_t n);

    bool operator==(const EncodingProfile&) const = default;

private:
    EncodingProfile() = default;
    std::string name_;
    uint32_t n_ = 0;
    uint32_t total_length_ = 0;
    uint32_t clause_slots_ = 0;
    uint32_t lits_per_clause_ = 0;
    uint32_t index_width_ = 0;
};

/// A 0/1 string of exactly profile.total_length() bits.
class BitString {
public:
    BitString(std::vector<uint8_t> bits, EncodingProfile profile);

    const std::vector<uint8_t>& bits() const { return bits_; }
    const EncodingProfile& profile() const { return profile_; }
    size_t size() const { return bits_.size(); }
    uint8_t operator[](size_t i) const { return bits_[i]; }

    /// Copy with one bit replaced.
    BitString with_bit(size_t i, bool value) const;

    bool operator==(const BitString&) const = default;

    std::string to_string() const;  // e.g. "010110"
    static BitString from_string(std::string_view text, const EncodingProfile& profile);

private:
    std::vector<uint8_t> bits_;
    EncodingProfile profile_;
};

struct DecodeError : std::runtime_error {
    DecodeError(std::string field_name, const std::string& what)
        : std::runtime_error("decode: " + field_name + ": " + what), field(std::move(field_name)) {}
    std::string field;  // first malformed field, e.g. "clause[2].literal[0].index"
};

/* Deterministic encoding of a valid instance. The instance's declared
   bound must not exceed profile.n(); the result always represents the
   instance at the profile's bound (the layout stores no bound of its
   own). decode(encode(f)) == f holds literally when f.n() equals
   profile.n(). */
BitString encode(const ThreeSatInstance& f, const EncodingProfile& profile);

/// Inverse of encode on valid encodings; throws DecodeError naming the
/// first malformed field otherwise. The result's bound is profile.n().
ThreeSatInstance decode(const BitString& s);

/// True exactly when s = encode(f) for some valid instance f with at
/// most profile.n() variables. Reference semantics for the generated
/// validity circuit.
bool is_valid_encoding(const BitString& s);

/// Encodings of the constants TRUE and FALSE.
BitString encoded_true(const EncodingProfile& profile);
BitString encoded_false(const EncodingProfile& profile);

}  // namespace ffpit

#endif  // FFPIT_ENCODING_HPP
