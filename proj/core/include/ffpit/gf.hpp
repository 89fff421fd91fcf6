// SPDX-License-Identifier: Apache-2.0
//
// Exact arithmetic in a finite field F(q), q = p^k, with element
// enumeration and multiplicative order.

#ifndef FFPIT_GF_HPP
#define FFPIT_GF_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ffpit {

class FieldElement;

/// Thrown when two elements of different fields meet in one operation.
struct FieldMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/* FieldSpec describes F(p^k) as the quotient F(p)[x] / (modulus) with a
   monic irreducible modulus of degree k. Instances are immutable and
   cheap to copy (shared internal data); elements carry one. Small fields
   get precomputed operation tables, larger ones fall back to coefficient
   arithmetic. */
class FieldSpec {
public:
    /// Default modulus: the lexicographically smallest monic irreducible
    /// of degree k (smallest when coefficients are read as a base-p
    /// integer c0 + c1*p + ...). For k = 1 this is the polynomial x.
    FieldSpec(uint64_t p, uint32_t k);

    /// Explicit modulus as k+1 coefficients c0..ck (little-endian),
    /// each in [0, p), with ck = 1. Irreducibility is checked by trial
    /// division against all monic polynomials of degree <= k/2.
    FieldSpec(uint64_t p, uint32_t k, std::vector<uint32_t> modulus);

    uint64_t p() const { return d_->p; }
    uint32_t k() const { return d_->k; }
    uint32_t q() const { return d_->q; }
    const std::vector<uint32_t>& modulus() const { return d_->modulus; }
    bool has_default_modulus() const { return d_->default_modulus; }

    FieldElement zero() const;
    FieldElement one() const;
    /// Element with enumeration index i in [0, q); index 0 is zero,
    /// index 1 is one. The index is the base-p value of the coefficient
    /// vector.
    FieldElement element(uint32_t index) const;
    FieldElement from_coefficients(std::span<const uint32_t> coeffs) const;

    /// All q elements in enumeration order (0 first, then 1).
    std::vector<FieldElement> elements() const;

    /// Two specs are equal when p, k and modulus coincide.
    bool operator==(const FieldSpec& other) const;
    bool operator!=(const FieldSpec& other) const { return !(*this == other); }

    /// "p^k" when the modulus is the default, "p^k:c0,c1,..." otherwise
    /// (non-leading modulus coefficients; monic implied).
    std::string to_literal() const;
    static FieldSpec parse_literal(std::string_view text);

    // Index-level arithmetic; the fast path for circuit evaluation.
    uint32_t add_idx(uint32_t a, uint32_t b) const;
    uint32_t sub_idx(uint32_t a, uint32_t b) const;
    uint32_t mul_idx(uint32_t a, uint32_t b) const;
    uint32_t neg_idx(uint32_t a) const;
    uint32_t inv_idx(uint32_t a) const;
    uint32_t pow_idx(uint32_t a, uint64_t e) const;

    struct Data {
        uint64_t p = 0;
        uint32_t k = 0;
        uint32_t q = 0;
        std::vector<uint32_t> modulus;  // k+1 coefficients, monic
        bool default_modulus = false;
        bool has_tables = false;
        std::vector<uint32_t> add_t, sub_t, mul_t;  // q*q each when tabled
        std::vector<uint32_t> neg_t, inv_t;         // q each when tabled
    };
    const Data& data() const { return *d_; }

private:
    explicit FieldSpec(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;

    uint32_t mul_generic(uint32_t a, uint32_t b) const;
};

/* An element of F(q), stored as its enumeration index together with its
   field. The canonical coefficient vector is recovered on demand. */
class FieldElement {
public:
    FieldElement(FieldSpec spec, uint32_t index);

    const FieldSpec& field() const { return spec_; }
    uint32_t index() const { return idx_; }
    /// k residues mod p, little-endian (constant term first).
    std::vector<uint32_t> coefficients() const;

    bool is_zero() const { return idx_ == 0; }
    bool is_one() const { return idx_ == 1; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;

    /// a^e by square-and-multiply; a^0 = 1 for every a, including zero.
    FieldElement pow(uint64_t e) const;
    /// Multiplicative inverse; throws on zero.
    FieldElement inverse() const;
    /// Least r >= 1 with a^r = 1; throws on zero.
    uint64_t order() const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    /// Comma-separated coefficient residues, e.g. "1,1" for x+1 in F(4).
    std::string to_string() const;
    static FieldElement parse(std::string_view text, const FieldSpec& spec);

private:
    FieldSpec spec_;
    uint32_t idx_;

    void require_same_field(const FieldElement& o) const;
};

}  // namespace ffpit

#endif  // FFPIT_GF_HPP
