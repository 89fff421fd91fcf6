// SPDX-License-Identifier: Apache-2.0

#include "ffpit/encoding.hpp"

#include <algorithm>
#include <stdexcept>

namespace ffpit {

namespace {

uint32_t ceil_log2(uint32_t v) {
    uint32_t w = 0;
    while ((uint64_t(1) << w) < v) ++w;
    return w;
}

}  // namespace

// --- EncodingProfile ---------------------------------------------------------

uint64_t EncodingProfile::max_clause_count(uint32_t n) {
    // sum over clause widths s = 1..3 of C(n,s) * 2^s
    uint64_t total = 0;
    if (n >= 1) total += uint64_t(n) * 2;
    if (n >= 2) total += uint64_t(n) * (n - 1) / 2 * 4;
    if (n >= 3) total += uint64_t(n) * (n - 1) * (n - 2) / 6 * 8;
    return total;
}

EncodingProfile EncodingProfile::paper(uint32_t n) {
    EncodingProfile p;
    p.name_ = "paper";
    p.n_ = n;
    const uint64_t base = std::max<uint64_t>(n, 2);
    const uint64_t len = 8 * base * base * base * base;
    if (len > (uint64_t(1) << 28)) throw std::invalid_argument("paper profile too large for this build");
    p.total_length_ = static_cast<uint32_t>(len);
    p.lits_per_clause_ = 3;
    p.index_width_ = ceil_log2(n + 1);
    const uint32_t cw = p.lits_per_clause_ * (2 + p.index_width_);
    p.clause_slots_ = (p.total_length_ - p.tag_width() - 1) / cw;  // leaves >= 1 padding bit
    if (p.clause_slots_ < max_clause_count(n))
        throw std::logic_error("paper profile cannot hold every valid instance at n=" + std::to_string(n));
    return p;
}

EncodingProfile EncodingProfile::mini() {
    EncodingProfile p;
    p.name_ = "mini";
    p.n_ = 1;
    p.total_length_ = 6;
    p.clause_slots_ = 2;
    p.lits_per_clause_ = 1;
    p.index_width_ = 0;
    return p;
}

// --- BitString ----------------------------------------------------------------

BitString::BitString(std::vector<uint8_t> bits, EncodingProfile profile)
    : bits_(std::move(bits)), profile_(std::move(profile)) {
    if (bits_.size() != profile_.total_length())
        throw std::invalid_argument("bit string length does not match the profile");
    for (uint8_t b : bits_)
        if (b > 1) throw std::invalid_argument("bit string entries must be 0 or 1");
}

BitString BitString::with_bit(size_t i, bool value) const {
    std::vector<uint8_t> b = bits_;
    b.at(i) = value ? 1 : 0;
    return BitString(std::move(b), profile_);
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (uint8_t b : bits_) s += b ? '1' : '0';
    return s;
}

BitString BitString::from_string(std::string_view text, const EncodingProfile& profile) {
    std::vector<uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw std::invalid_argument("encoding text must be 0/1 characters");
        bits.push_back(c == '1' ? 1 : 0);
    }
    return BitString(std::move(bits), profile);
}

// --- encode ---------------------------------------------------------------------

BitString encode(const ThreeSatInstance& f, const EncodingProfile& profile) {
    {
        const auto violations = validate_instance(f);
        if (!violations.empty())
            throw std::invalid_argument("encode: invalid instance: " + violations.front().detail);
    }
    if (f.n() > profile.n())
        throw std::invalid_argument("encode: instance bound " + std::to_string(f.n()) +
                                    " exceeds profile bound " + std::to_string(profile.n()));
    std::vector<uint8_t> bits(profile.total_length(), 0);
    switch (f.kind()) {
        case InstanceKind::True: bits[1] = 1; break;    // tag 01
        case InstanceKind::False: bits[0] = 1; break;   // tag 10
        case InstanceKind::Formula: break;              // tag 00
    }
    if (f.is_formula()) {
        if (f.clauses().size() > profile.clause_slots())
            throw std::invalid_argument("encode: instance exceeds the profile's clause capacity");
        for (uint32_t c = 0; c < f.clauses().size(); ++c) {
            const Clause& cl = f.clauses()[c];
            if (cl.size() > profile.lits_per_clause())
                throw std::invalid_argument("encode: clause " + std::to_string(c) +
                                            " does not fit the profile's literal slots");
            for (uint32_t l = 0; l < cl.size(); ++l) {
                const uint32_t off = profile.lit_offset(c, l);
                bits[off] = 1;
                bits[off + 1] = cl[l].positive ? 1 : 0;
                const uint32_t w = profile.index_width();
                for (uint32_t i = 0; i < w; ++i)
                    bits[off + 2 + i] = (cl[l].var >> (w - 1 - i)) & 1u;
            }
        }
    }
    if (profile.has_padding()) bits[profile.padding_offset()] = 1;
    return BitString(std::move(bits), profile);
}

// --- shared slot readers -----------------------------------------------------------

namespace {

struct LitView {
    bool active;
    bool positive;
    uint32_t var;       // 0 when index bits are absent or zero
    bool rest_zero;     // sign and index bits all zero
    bool index_zero;
};

LitView read_lit(const BitString& s, uint32_t c, uint32_t l) {
    const EncodingProfile& p = s.profile();
    const uint32_t off = p.lit_offset(c, l);
    LitView v;
    v.active = s[off] != 0;
    v.positive = s[off + 1] != 0;
    uint32_t idx = 0;
    bool all0 = true;
    for (uint32_t i = 0; i < p.index_width(); ++i) {
        idx = (idx << 1) | s[off + 2 + i];
        if (s[off + 2 + i]) all0 = false;
    }
    v.index_zero = all0;
    v.rest_zero = all0 && !v.positive;
    // implicit index 1 when the profile stores no index bits
    v.var = p.index_width() == 0 ? 1 : idx;
    return v;
}

bool lit_slot_zero(const LitView& v) { return !v.active && v.rest_zero; }

bool clause_slot_zero(const BitString& s, uint32_t c) {
    for (uint32_t l = 0; l < s.profile().lits_per_clause(); ++l)
        if (!lit_slot_zero(read_lit(s, c, l))) return false;
    return true;
}

// canonical comparison key: (active, var index bits, sign) per literal
uint64_t clause_key(const BitString& s, uint32_t c) {
    const EncodingProfile& p = s.profile();
    uint64_t key = 0;
    for (uint32_t l = 0; l < p.lits_per_clause(); ++l) {
        const uint32_t off = p.lit_offset(c, l);
        key = (key << 1) | s[off];  // active
        for (uint32_t i = 0; i < p.index_width(); ++i) key = (key << 1) | s[off + 2 + i];
        key = (key << 1) | s[off + 1];  // sign
    }
    return key;
}

bool padding_ok(const BitString& s) {
    const EncodingProfile& p = s.profile();
    if (!p.has_padding()) return true;
    if (s[p.padding_offset()] != 1) return false;
    for (uint32_t i = p.padding_offset() + 1; i < p.total_length(); ++i)
        if (s[i] != 0) return false;
    return true;
}

}  // namespace

// --- is_valid_encoding ---------------------------------------------------------------

bool is_valid_encoding(const BitString& s) {
    const EncodingProfile& p = s.profile();
    const uint8_t t0 = s[0], t1 = s[1];
    if (t0 && t1) return false;  // forbidden tag
    if (!padding_ok(s)) return false;

    if (t0 || t1) {  // TRUE or FALSE: every clause slot must be zero
        for (uint32_t c = 0; c < p.clause_slots(); ++c)
            if (!clause_slot_zero(s, c)) return false;
        return true;
    }

    // FORMULA
    bool seen_inactive = false;
    bool any_active = false;
    uint64_t prev_key = 0;
    for (uint32_t c = 0; c < p.clause_slots(); ++c) {
        const LitView first = read_lit(s, c, 0);
        if (!first.active) {
            if (!clause_slot_zero(s, c)) return false;
            seen_inactive = true;
            continue;
        }
        if (seen_inactive) return false;  // active slots must form a prefix
        any_active = true;

        uint32_t prev_var = 0;
        bool lit_inactive_seen = false;
        for (uint32_t l = 0; l < p.lits_per_clause(); ++l) {
            const LitView v = read_lit(s, c, l);
            if (!v.active) {
                if (!lit_slot_zero(v)) return false;
                lit_inactive_seen = true;
                continue;
            }
            if (lit_inactive_seen) return false;  // literal prefix rule
            if (p.index_width() > 0 && v.index_zero) return false;
            if (v.var < 1 || v.var > p.n()) return false;
            if (l > 0 && v.var <= prev_var) return false;  // distinct, ascending vars
            prev_var = v.var;
        }

        // the prefix rule makes slot c-1 active whenever this one is
        const uint64_t key = clause_key(s, c);
        if (c > 0 && prev_key >= key) return false;
        prev_key = key;
    }
    return any_active;
}

// --- decode -----------------------------------------------------------------------------

ThreeSatInstance decode(const BitString& s) {
    const EncodingProfile& p = s.profile();
    const uint8_t t0 = s[0], t1 = s[1];
    if (t0 && t1) throw DecodeError("tag", "tag 11 is forbidden");

    auto check_padding = [&] {
        if (!p.has_padding()) return;
        if (s[p.padding_offset()] != 1)
            throw DecodeError("padding", "padding must start with a 1 bit");
        for (uint32_t i = p.padding_offset() + 1; i < p.total_length(); ++i)
            if (s[i] != 0) throw DecodeError("padding", "padding tail must be all zero");
    };

    if (t0 || t1) {
        for (uint32_t c = 0; c < p.clause_slots(); ++c)
            if (!clause_slot_zero(s, c))
                throw DecodeError("clause[" + std::to_string(c) + "]",
                                  "constant instances carry no clause data");
        check_padding();
        return t1 ? ThreeSatInstance::constant_true(p.n()) : ThreeSatInstance::constant_false(p.n());
    }

    std::vector<Clause> clauses;
    bool seen_inactive = false;
    uint64_t prev_key = 0;
    for (uint32_t c = 0; c < p.clause_slots(); ++c) {
        const std::string cname = "clause[" + std::to_string(c) + "]";
        const LitView first = read_lit(s, c, 0);
        if (!first.active) {
            if (!clause_slot_zero(s, c))
                throw DecodeError(cname, "inactive clause slot must be all zero");
            seen_inactive = true;
            continue;
        }
        if (seen_inactive)
            throw DecodeError(cname, "active clause after an inactive slot");

        Clause clause;
        uint32_t prev_var = 0;
        bool lit_inactive_seen = false;
        for (uint32_t l = 0; l < p.lits_per_clause(); ++l) {
            const std::string lname = cname + ".literal[" + std::to_string(l) + "]";
            const LitView v = read_lit(s, c, l);
            if (!v.active) {
                if (!lit_slot_zero(v))
                    throw DecodeError(lname, "inactive literal slot must be all zero");
                lit_inactive_seen = true;
                continue;
            }
            if (lit_inactive_seen)
                throw DecodeError(lname, "active literal after an inactive slot");
            if (p.index_width() > 0 && v.index_zero)
                throw DecodeError(lname + ".index", "variable index 0 is invalid");
            if (v.var > p.n())
                throw DecodeError(lname + ".index", "variable index exceeds the bound");
            if (l > 0 && v.var <= prev_var)
                throw DecodeError(lname + ".index", "variable indices must strictly increase");
            prev_var = v.var;
            clause.push_back({v.var, v.positive});
        }
        const uint64_t key = clause_key(s, c);
        if (!clauses.empty() && prev_key >= key)
            throw DecodeError(cname, "clauses must be strictly increasing in canonical order");
        prev_key = key;
        clauses.push_back(std::move(clause));
    }
    if (clauses.empty())
        throw DecodeError("clause[0]", "a FORMULA encoding needs at least one active clause");
    check_padding();
    return ThreeSatInstance::formula(p.n(), std::move(clauses));
}

BitString encoded_true(const EncodingProfile& profile) {
    return encode(ThreeSatInstance::constant_true(profile.n()), profile);
}

BitString encoded_false(const EncodingProfile& profile) {
    return encode(ThreeSatInstance::constant_false(profile.n()), profile);
}

}  // namespace ffpit
