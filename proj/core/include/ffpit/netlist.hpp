// SPDX-License-Identifier: Apache-2.0
//
// Line-oriented textual netlist format for both circuit IRs.
//
//   bool - inputs=<n> [fanin=unbounded]
//   arith <field> inputs=<n>
//   g<i> = KIND ref[, ref...]        with ref = x<j> | g<j>
//   outputs: ref[, ref...]
//
// Gates appear in ascending contiguous index order and may only
// reference inputs or earlier gates; arithmetic constants are written as
// `CONST <element literal>`. Serialization is canonical (single spaces,
// sorted gate indices), so serialize(parse(t)) == t on canonical text
// and parse(serialize(c)) evaluates identically to c.

#ifndef FFPIT_NETLIST_HPP
#define FFPIT_NETLIST_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "ffpit/circuit.hpp"

namespace ffpit {

struct NetlistParseError : std::runtime_error {
    NetlistParseError(size_t line, const std::string& what)
        : std::runtime_error("netlist line " + std::to_string(line) + ": " + what), line(line) {}
    size_t line;
};

std::string to_netlist(const BoolCircuit& c);
std::string to_netlist(const ArithCircuit& c);

using AnyCircuit = std::variant<BoolCircuit, ArithCircuit>;
AnyCircuit parse_netlist(std::string_view text);

BoolCircuit parse_bool_netlist(std::string_view text);
ArithCircuit parse_arith_netlist(std::string_view text);

}  // namespace ffpit

#endif  // FFPIT_NETLIST_HPP
