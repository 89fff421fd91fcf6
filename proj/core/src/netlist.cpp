// SPDX-License-Identifier: Apache-2.0

#include "ffpit/netlist.hpp"

#include <charconv>
#include <sstream>

namespace ffpit {
namespace {

const char* bool_op_name(BoolOp op) {
    switch (op) {
        case BoolOp::And: return "AND";
        case BoolOp::Or: return "OR";
        case BoolOp::Not: return "NOT";
        case BoolOp::Const0: return "CONST0";
        case BoolOp::Const1: return "CONST1";
    }
    return "?";
}

const char* arith_op_name(ArithOp op) {
    switch (op) {
        case ArithOp::Add: return "ADD";
        case ArithOp::Sub: return "SUB";
        case ArithOp::Mul: return "MUL";
        case ArithOp::Const: return "CONST";
    }
    return "?";
}

void write_ref(std::string& out, Ref r) {
    out += r.is_input() ? 'x' : 'g';
    out += std::to_string(r.index());
}

void write_outputs(std::string& out, std::span<const Ref> outputs) {
    out += "outputs:";
    for (size_t i = 0; i < outputs.size(); ++i) {
        out += i ? ", " : " ";
        write_ref(out, outputs[i]);
    }
    out += '\n';
}

// --- parsing helpers -----------------------------------------------------

struct LineLexer {
    std::string_view text;
    size_t pos = 0;
    size_t line_no = 0;

    bool next_line(std::string_view& line) {
        while (pos < text.size()) {
            size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view raw = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            // trim
            size_t b = raw.find_first_not_of(" \t\r");
            if (b == std::string_view::npos) continue;  // skip blank lines
            size_t e = raw.find_last_not_of(" \t\r");
            line = raw.substr(b, e - b + 1);
            return true;
        }
        return false;
    }
};

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i <= s.size()) {
        size_t comma = s.find(',', i);
        std::string_view tok = s.substr(i, comma == std::string_view::npos ? std::string_view::npos : comma - i);
        size_t b = tok.find_first_not_of(" \t");
        if (b == std::string_view::npos) {
            out.push_back({});
        } else {
            size_t e = tok.find_last_not_of(" \t");
            out.push_back(tok.substr(b, e - b + 1));
        }
        if (comma == std::string_view::npos) break;
        i = comma + 1;
    }
    return out;
}

uint32_t parse_index(std::string_view tok, size_t line, const char* what) {
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
        throw NetlistParseError(line, std::string("bad ") + what);
    return v;
}

Ref parse_ref(std::string_view tok, size_t line, uint32_t num_inputs, size_t gates_so_far) {
    if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'g'))
        throw NetlistParseError(line, "expected a reference like x0 or g3, got '" + std::string(tok) + "'");
    const uint32_t idx = parse_index(tok.substr(1), line, "reference index");
    if (tok[0] == 'x') {
        if (idx >= num_inputs) throw NetlistParseError(line, "input x" + std::to_string(idx) + " out of range");
        return Ref::input(idx);
    }
    if (idx >= gates_so_far)
        throw NetlistParseError(line, "reference to undefined gate g" + std::to_string(idx));
    return Ref::gate(idx);
}

struct Header {
    bool is_bool = false;
    FaninMode mode = FaninMode::Bounded;
    uint32_t inputs = 0;
    std::string field_literal;
};

Header parse_header(std::string_view line, size_t line_no) {
    auto toks = split_ws(line);
    if (toks.size() < 3) throw NetlistParseError(line_no, "header must be 'bool|arith <field> inputs=<n>'");
    Header h;
    if (toks[0] == "bool") {
        h.is_bool = true;
        if (toks[1] != "-") throw NetlistParseError(line_no, "boolean circuits use '-' for the field slot");
    } else if (toks[0] == "arith") {
        h.is_bool = false;
        h.field_literal = std::string(toks[1]);
    } else {
        throw NetlistParseError(line_no, "unknown circuit kind '" + std::string(toks[0]) + "'");
    }
    if (!toks[2].starts_with("inputs="))
        throw NetlistParseError(line_no, "expected inputs=<n>");
    h.inputs = parse_index(toks[2].substr(7), line_no, "input count");
    if (toks.size() == 4) {
        if (toks[3] != "fanin=unbounded" || !h.is_bool)
            throw NetlistParseError(line_no, "unexpected trailing header token");
        h.mode = FaninMode::Unbounded;
    } else if (toks.size() > 4) {
        throw NetlistParseError(line_no, "unexpected trailing header token");
    }
    return h;
}

// "g<i> = KIND rest" -> (i, KIND, rest); "outputs: rest" -> special
struct GateLine {
    bool is_outputs = false;
    uint32_t index = 0;
    std::string_view kind;
    std::string_view rest;
};

GateLine parse_gate_line(std::string_view line, size_t line_no, size_t expected_index) {
    GateLine g;
    if (line.starts_with("outputs:")) {
        g.is_outputs = true;
        g.rest = line.substr(8);
        return g;
    }
    auto toks = split_ws(line);
    if (toks.size() < 3 || toks[1] != "=")
        throw NetlistParseError(line_no, "expected 'g<i> = KIND ...' or 'outputs: ...'");
    if (toks[0].size() < 2 || toks[0][0] != 'g')
        throw NetlistParseError(line_no, "gate definitions start with g<i>");
    g.index = parse_index(toks[0].substr(1), line_no, "gate index");
    if (g.index != expected_index)
        throw NetlistParseError(line_no, "expected gate g" + std::to_string(expected_index) +
                                             ", got g" + std::to_string(g.index));
    g.kind = toks[2];
    const size_t kind_pos = line.find(toks[2], line.find('=') + 1);
    g.rest = line.substr(kind_pos + toks[2].size());
    const size_t b = g.rest.find_first_not_of(" \t");
    g.rest = (b == std::string_view::npos) ? std::string_view{} : g.rest.substr(b);
    return g;
}

std::vector<Ref> parse_ref_list(std::string_view rest, size_t line_no, uint32_t inputs, size_t gates) {
    std::vector<Ref> refs;
    if (rest.empty()) return refs;
    for (auto tok : split_commas(rest)) {
        if (tok.empty()) throw NetlistParseError(line_no, "empty reference in list");
        refs.push_back(parse_ref(tok, line_no, inputs, gates));
    }
    return refs;
}

}  // namespace

// --- serialization ---------------------------------------------------------

std::string to_netlist(const BoolCircuit& c) {
    std::string out = "bool - inputs=" + std::to_string(c.num_inputs());
    if (c.fanin_mode() == FaninMode::Unbounded) out += " fanin=unbounded";
    out += '\n';
    for (size_t i = 0; i < c.num_gates(); ++i) {
        out += "g" + std::to_string(i) + " = ";
        out += bool_op_name(c.gate_op(i));
        auto args = c.gate_args(i);
        for (size_t j = 0; j < args.size(); ++j) {
            out += j ? ", " : " ";
            write_ref(out, args[j]);
        }
        out += '\n';
    }
    write_outputs(out, c.outputs());
    return out;
}

std::string to_netlist(const ArithCircuit& c) {
    std::string out = "arith " + c.field().to_literal() + " inputs=" + std::to_string(c.num_inputs()) + "\n";
    for (size_t i = 0; i < c.num_gates(); ++i) {
        const auto& g = c.gate(i);
        out += "g" + std::to_string(i) + " = ";
        out += arith_op_name(g.op);
        if (g.op == ArithOp::Const) {
            out += " " + FieldElement(c.field(), g.const_index).to_string();
        } else {
            out += " ";
            write_ref(out, g.a);
            out += ", ";
            write_ref(out, g.b);
        }
        out += '\n';
    }
    write_outputs(out, c.outputs());
    return out;
}

// --- parsing ----------------------------------------------------------------

namespace {

BoolCircuit parse_bool_body(LineLexer& lex, const Header& h) {
    BoolCircuitBuilder b(h.inputs, h.mode);
    std::string_view line;
    size_t count = 0;
    while (true) {
        if (!lex.next_line(line)) throw NetlistParseError(lex.line_no, "missing outputs line");
        GateLine g = parse_gate_line(line, lex.line_no, count);
        if (g.is_outputs) {
            auto outs = parse_ref_list(g.rest, lex.line_no, h.inputs, count);
            if (outs.empty()) throw NetlistParseError(lex.line_no, "circuit needs at least one output");
            if (lex.next_line(line)) throw NetlistParseError(lex.line_no, "unexpected text after outputs line");
            return b.build(std::move(outs));
        }
        BoolOp op;
        if (g.kind == "AND") op = BoolOp::And;
        else if (g.kind == "OR") op = BoolOp::Or;
        else if (g.kind == "NOT") op = BoolOp::Not;
        else if (g.kind == "CONST0") op = BoolOp::Const0;
        else if (g.kind == "CONST1") op = BoolOp::Const1;
        else throw NetlistParseError(lex.line_no, "unknown boolean gate kind '" + std::string(g.kind) + "'");
        auto args = parse_ref_list(g.rest, lex.line_no, h.inputs, count);
        try {
            b.add_gate(op, args);
        } catch (const std::exception& e) {
            throw NetlistParseError(lex.line_no, e.what());
        }
        ++count;
    }
}

ArithCircuit parse_arith_body(LineLexer& lex, const Header& h) {
    FieldSpec field = [&] {
        try {
            return FieldSpec::parse_literal(h.field_literal);
        } catch (const std::exception& e) {
            throw NetlistParseError(1, e.what());
        }
    }();
    ArithCircuitBuilder b(field, h.inputs);
    std::string_view line;
    size_t count = 0;
    while (true) {
        if (!lex.next_line(line)) throw NetlistParseError(lex.line_no, "missing outputs line");
        GateLine g = parse_gate_line(line, lex.line_no, count);
        if (g.is_outputs) {
            auto outs = parse_ref_list(g.rest, lex.line_no, h.inputs, count);
            if (outs.empty()) throw NetlistParseError(lex.line_no, "circuit needs at least one output");
            if (lex.next_line(line)) throw NetlistParseError(lex.line_no, "unexpected text after outputs line");
            return b.build(std::move(outs));
        }
        if (g.kind == "CONST") {
            FieldElement e = [&] {
                try {
                    return FieldElement::parse(g.rest, field);
                } catch (const std::exception& ex) {
                    throw NetlistParseError(lex.line_no, ex.what());
                }
            }();
            // fresh gate even for repeated values, so gate lists round-trip
            b.const_gate(e.index());
        } else {
            ArithOp op;
            if (g.kind == "ADD") op = ArithOp::Add;
            else if (g.kind == "SUB") op = ArithOp::Sub;
            else if (g.kind == "MUL") op = ArithOp::Mul;
            else throw NetlistParseError(lex.line_no, "unknown arithmetic gate kind '" + std::string(g.kind) + "'");
            auto args = parse_ref_list(g.rest, lex.line_no, h.inputs, count);
            if (args.size() != 2) throw NetlistParseError(lex.line_no, "ADD/SUB/MUL take two operands");
            try {
                if (op == ArithOp::Add) b.add(args[0], args[1]);
                else if (op == ArithOp::Sub) b.sub(args[0], args[1]);
                else b.mul(args[0], args[1]);
            } catch (const std::exception& ex) {
                throw NetlistParseError(lex.line_no, ex.what());
            }
        }
        ++count;
    }
}

}  // namespace

AnyCircuit parse_netlist(std::string_view text) {
    LineLexer lex{text};
    std::string_view line;
    if (!lex.next_line(line)) throw NetlistParseError(1, "empty netlist");
    Header h = parse_header(line, lex.line_no);
    if (h.is_bool) return parse_bool_body(lex, h);
    return parse_arith_body(lex, h);
}

BoolCircuit parse_bool_netlist(std::string_view text) {
    AnyCircuit c = parse_netlist(text);
    if (auto* b = std::get_if<BoolCircuit>(&c)) return std::move(*b);
    throw NetlistParseError(1, "expected a boolean netlist");
}

ArithCircuit parse_arith_netlist(std::string_view text) {
    AnyCircuit c = parse_netlist(text);
    if (auto* a = std::get_if<ArithCircuit>(&c)) return std::move(*a);
    throw NetlistParseError(1, "expected an arithmetic netlist");
}

}  // namespace ffpit
