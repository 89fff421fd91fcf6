// SPDX-License-Identifier: Apache-2.0

#include "ffpit/gf.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ffpit {
namespace {

constexpr uint32_t kTableCap = 512;   // tables up to q*q = 256 KiB entries
constexpr uint64_t kMaxQ = 1u << 30;  // element indices stay in uint32

bool is_prime(uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

// --- dense little-endian polynomials over F(p) -------------------------

using Poly = std::vector<uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<uint32_t>((r[i + j] + uint64_t(a[i]) * b[j]) % p);
    trim(r);
    return r;
}

// remainder of a modulo a monic divisor
Poly poly_mod(Poly a, const Poly& m, uint64_t p) {
    trim(a);
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        const uint64_t lead = a.back();
        const size_t shift = a.size() - 1 - dm;
        for (size_t i = 0; i <= dm; ++i) {
            uint64_t sub = (lead * m[i]) % p;
            uint64_t cur = a[shift + i];
            a[shift + i] = static_cast<uint32_t>((cur + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

Poly index_to_poly(uint32_t idx, uint64_t p, uint32_t k) {
    Poly c(k, 0);
    for (uint32_t i = 0; i < k && idx != 0; ++i) {
        c[i] = static_cast<uint32_t>(idx % p);
        idx = static_cast<uint32_t>(idx / p);
    }
    return c;
}

uint32_t poly_to_index(const Poly& c, uint64_t p) {
    uint64_t idx = 0;
    for (size_t i = c.size(); i-- > 0;) idx = idx * p + c[i];
    return static_cast<uint32_t>(idx);
}

bool is_irreducible(const Poly& m, uint64_t p) {
    const size_t deg = m.size() - 1;
    if (deg == 1) return true;
    // trial division by every monic polynomial of degree 1..deg/2
    for (size_t d = 1; d <= deg / 2; ++d) {
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (uint64_t c = 0; c < count; ++c) {
            Poly div(d + 1, 0);
            uint64_t t = c;
            for (size_t i = 0; i < d; ++i) {
                div[i] = static_cast<uint32_t>(t % p);
                t /= p;
            }
            div[d] = 1;
            if (poly_mod(m, div, p).empty()) return false;
        }
    }
    return true;
}

Poly default_modulus(uint64_t p, uint32_t k) {
    if (k == 1) return Poly{0, 1};  // the polynomial x
    uint64_t count = 1;
    for (uint32_t i = 0; i < k; ++i) count *= p;
    for (uint64_t c = 0; c < count; ++c) {
        Poly m(k + 1, 0);
        uint64_t t = c;
        for (uint32_t i = 0; i < k; ++i) {
            m[i] = static_cast<uint32_t>(t % p);
            t /= p;
        }
        m[k] = 1;
        if (is_irreducible(m, p)) return m;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

}  // namespace

// --- FieldSpec ---------------------------------------------------------

static std::shared_ptr<const FieldSpec::Data> make_data(uint64_t p, uint32_t k,
                                                        std::vector<uint32_t> modulus,
                                                        bool take_default) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");

    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > kMaxQ) throw std::invalid_argument("field size p^k too large");
    }

    auto d = std::make_shared<FieldSpec::Data>();
    d->p = p;
    d->k = k;
    d->q = static_cast<uint32_t>(q);

    if (take_default) {
        d->modulus = default_modulus(p, k);
        d->default_modulus = true;
    } else {
        if (modulus.size() != size_t(k) + 1)
            throw std::invalid_argument("modulus must have degree k (k+1 coefficients)");
        if (modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
        for (uint32_t c : modulus)
            if (c >= p) throw std::invalid_argument("modulus coefficient out of range [0, p)");
        if (!is_irreducible(modulus, p))
            throw std::invalid_argument("modulus is reducible over F(p)");
        d->modulus = std::move(modulus);
        d->default_modulus = (d->modulus == default_modulus(p, k));
    }

    if (q <= kTableCap) {
        auto* raw = const_cast<FieldSpec::Data*>(d.get());
        const uint32_t n = raw->q;
        raw->add_t.resize(size_t(n) * n);
        raw->sub_t.resize(size_t(n) * n);
        raw->mul_t.resize(size_t(n) * n);
        raw->neg_t.resize(n);
        raw->inv_t.assign(n, 0);
        for (uint32_t a = 0; a < n; ++a) {
            Poly pa = index_to_poly(a, p, k);
            for (uint32_t b = 0; b < n; ++b) {
                Poly pb = index_to_poly(b, p, k);
                Poly sum(k, 0), diff(k, 0);
                for (uint32_t i = 0; i < k; ++i) {
                    sum[i] = static_cast<uint32_t>((uint64_t(pa[i]) + pb[i]) % p);
                    diff[i] = static_cast<uint32_t>((uint64_t(pa[i]) + p - pb[i]) % p);
                }
                raw->add_t[size_t(a) * n + b] = poly_to_index(sum, p);
                raw->sub_t[size_t(a) * n + b] = poly_to_index(diff, p);
                Poly prod = poly_mod(poly_mul(pa, pb, p), raw->modulus, p);
                prod.resize(k, 0);
                raw->mul_t[size_t(a) * n + b] = poly_to_index(prod, p);
            }
            raw->neg_t[a] = raw->sub_t[0 * size_t(n) + a];
        }
        for (uint32_t a = 1; a < n; ++a)
            for (uint32_t b = 1; b < n; ++b)
                if (raw->mul_t[size_t(a) * n + b] == 1) raw->inv_t[a] = b;
        raw->has_tables = true;
    }
    return d;
}

FieldSpec::FieldSpec(uint64_t p, uint32_t k) : d_(make_data(p, k, {}, true)) {}

FieldSpec::FieldSpec(uint64_t p, uint32_t k, std::vector<uint32_t> modulus)
    : d_(make_data(p, k, std::move(modulus), false)) {}

bool FieldSpec::operator==(const FieldSpec& other) const {
    if (d_ == other.d_) return true;
    return d_->p == other.d_->p && d_->k == other.d_->k && d_->modulus == other.d_->modulus;
}

FieldElement FieldSpec::zero() const { return FieldElement(*this, 0); }
FieldElement FieldSpec::one() const { return FieldElement(*this, 1); }

FieldElement FieldSpec::element(uint32_t index) const {
    if (index >= q()) throw std::out_of_range("element index out of range");
    return FieldElement(*this, index);
}

FieldElement FieldSpec::from_coefficients(std::span<const uint32_t> coeffs) const {
    if (coeffs.size() > k()) throw std::invalid_argument("too many coefficients for degree-k field");
    uint64_t idx = 0;
    for (size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= p()) throw std::invalid_argument("coefficient out of range [0, p)");
        idx = idx * p() + coeffs[i];
    }
    return FieldElement(*this, static_cast<uint32_t>(idx));
}

std::vector<FieldElement> FieldSpec::elements() const {
    std::vector<FieldElement> out;
    out.reserve(q());
    for (uint32_t i = 0; i < q(); ++i) out.emplace_back(*this, i);
    return out;
}

uint32_t FieldSpec::mul_generic(uint32_t a, uint32_t b) const {
    Poly prod = poly_mod(poly_mul(index_to_poly(a, p(), k()), index_to_poly(b, p(), k()), p()),
                         d_->modulus, p());
    prod.resize(k(), 0);
    return poly_to_index(prod, p());
}

uint32_t FieldSpec::add_idx(uint32_t a, uint32_t b) const {
    if (d_->has_tables) return d_->add_t[size_t(a) * d_->q + b];
    Poly pa = index_to_poly(a, p(), k()), pb = index_to_poly(b, p(), k());
    for (uint32_t i = 0; i < k(); ++i) pa[i] = static_cast<uint32_t>((uint64_t(pa[i]) + pb[i]) % p());
    return poly_to_index(pa, p());
}

uint32_t FieldSpec::sub_idx(uint32_t a, uint32_t b) const {
    if (d_->has_tables) return d_->sub_t[size_t(a) * d_->q + b];
    Poly pa = index_to_poly(a, p(), k()), pb = index_to_poly(b, p(), k());
    for (uint32_t i = 0; i < k(); ++i) pa[i] = static_cast<uint32_t>((uint64_t(pa[i]) + p() - pb[i]) % p());
    return poly_to_index(pa, p());
}

uint32_t FieldSpec::mul_idx(uint32_t a, uint32_t b) const {
    if (d_->has_tables) return d_->mul_t[size_t(a) * d_->q + b];
    return mul_generic(a, b);
}

uint32_t FieldSpec::neg_idx(uint32_t a) const {
    if (d_->has_tables) return d_->neg_t[a];
    return sub_idx(0, a);
}

uint32_t FieldSpec::inv_idx(uint32_t a) const {
    if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
    if (d_->has_tables) return d_->inv_t[a];
    return pow_idx(a, uint64_t(q()) - 2);
}

uint32_t FieldSpec::pow_idx(uint32_t a, uint64_t e) const {
    uint32_t result = 1, base = a;
    while (e > 0) {
        if (e & 1) result = mul_idx(result, base);
        base = mul_idx(base, base);
        e >>= 1;
    }
    return result;
}

std::string FieldSpec::to_literal() const {
    std::string s = std::to_string(p()) + "^" + std::to_string(k());
    if (!has_default_modulus()) {
        s += ":";
        for (uint32_t i = 0; i < k(); ++i) {
            if (i) s += ",";
            s += std::to_string(modulus()[i]);
        }
    }
    return s;
}

static uint64_t parse_u64(std::string_view text, const char* what) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument(std::string("bad ") + what + " in field literal");
    return v;
}

FieldSpec FieldSpec::parse_literal(std::string_view text) {
    const size_t caret = text.find('^');
    if (caret == std::string_view::npos)
        throw std::invalid_argument("field literal must look like p^k, e.g. 2^1");
    const uint64_t p = parse_u64(text.substr(0, caret), "characteristic");
    std::string_view rest = text.substr(caret + 1);
    const size_t colon = rest.find(':');
    const uint64_t k = parse_u64(colon == std::string_view::npos ? rest : rest.substr(0, colon), "degree");
    if (k < 1 || k > 64) throw std::invalid_argument("bad degree in field literal");
    if (colon == std::string_view::npos) return FieldSpec(p, static_cast<uint32_t>(k));

    std::vector<uint32_t> mod;
    std::string_view coeffs = rest.substr(colon + 1);
    size_t pos = 0;
    while (pos <= coeffs.size()) {
        size_t comma = coeffs.find(',', pos);
        std::string_view tok = coeffs.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        mod.push_back(static_cast<uint32_t>(parse_u64(tok, "modulus coefficient")));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (mod.size() != k) throw std::invalid_argument("field literal modulus needs k coefficients");
    mod.push_back(1);  // monic leading coefficient
    return FieldSpec(p, static_cast<uint32_t>(k), std::move(mod));
}

// --- FieldElement ------------------------------------------------------

FieldElement::FieldElement(FieldSpec spec, uint32_t index) : spec_(std::move(spec)), idx_(index) {
    if (idx_ >= spec_.q()) throw std::out_of_range("element index out of range");
}

std::vector<uint32_t> FieldElement::coefficients() const {
    return index_to_poly(idx_, spec_.p(), spec_.k());
}

void FieldElement::require_same_field(const FieldElement& o) const {
    if (spec_ != o.spec_) throw FieldMismatchError("elements belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(o);
    return FieldElement(spec_, spec_.add_idx(idx_, o.idx_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_field(o);
    return FieldElement(spec_, spec_.sub_idx(idx_, o.idx_));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(o);
    return FieldElement(spec_, spec_.mul_idx(idx_, o.idx_));
}

FieldElement FieldElement::operator-() const { return FieldElement(spec_, spec_.neg_idx(idx_)); }

FieldElement FieldElement::pow(uint64_t e) const { return FieldElement(spec_, spec_.pow_idx(idx_, e)); }

FieldElement FieldElement::inverse() const { return FieldElement(spec_, spec_.inv_idx(idx_)); }

uint64_t FieldElement::order() const {
    if (is_zero()) throw std::domain_error("zero has no multiplicative order");
    uint64_t r = 1;
    uint32_t b = idx_;
    while (b != 1) {
        b = spec_.mul_idx(b, idx_);
        ++r;
    }
    return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
    return idx_ == o.idx_ && spec_ == o.spec_;
}

std::string FieldElement::to_string() const {
    const auto c = coefficients();
    std::string s;
    for (uint32_t i = 0; i < spec_.k(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s;
}

FieldElement FieldElement::parse(std::string_view text, const FieldSpec& spec) {
    std::vector<uint32_t> coeffs;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        coeffs.push_back(static_cast<uint32_t>(parse_u64(tok, "element coefficient")));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return spec.from_coefficients(coeffs);
}

}  // namespace ffpit
