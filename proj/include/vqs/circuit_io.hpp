#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "vqs/circuit.hpp"

namespace vqs {

// Line-oriented circuit text format (UTF-8):
//
//   qubits N          header, required first
//   KIND t [t2] [a]   one op per line; a is a decimal angle in radians or a
//                     parameter slot written $k
//   # ...             comment (full line or trailing)
//
// parse_circuit(render_circuit(c)) == c for every valid circuit.

struct CircuitParseError : std::runtime_error {
    CircuitParseError(int line, int column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line(line),
          column(column) {}

    int line;
    int column;
};

Circuit parse_circuit(std::string_view text);
std::string render_circuit(const Circuit& circuit);

}  // namespace vqs
