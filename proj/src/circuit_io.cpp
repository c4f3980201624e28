#include "vqs/circuit_io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <vector>

namespace vqs {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
        tokens.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return tokens;
}

int parse_int(const Token& tok, int line_no, const char* what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
        throw CircuitParseError(line_no, tok.column, std::string("expected ") + what + ", got '" + tok.text + "'");
    return value;
}

GateParam parse_angle(const Token& tok, int line_no) {
    if (!tok.text.empty() && tok.text[0] == '$') {
        int slot = 0;
        const char* begin = tok.text.data() + 1;
        const char* end = tok.text.data() + tok.text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, slot);
        if (ec != std::errc() || ptr != end || slot < 0)
            throw CircuitParseError(line_no, tok.column, "malformed parameter slot '" + tok.text + "'");
        return GateParam::slot(slot);
    }
    char* end = nullptr;
    const double value = std::strtod(tok.text.c_str(), &end);
    if (end != tok.text.c_str() + tok.text.size() || tok.text.empty())
        throw CircuitParseError(line_no, tok.column, "malformed angle '" + tok.text + "'");
    return GateParam::literal(value);
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    std::optional<Circuit> circuit;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::vector<Token> tokens = tokenize(line);
        if (tokens.empty()) continue;

        if (!circuit) {
            if (tokens[0].text != "qubits")
                throw CircuitParseError(line_no, tokens[0].column, "expected 'qubits N' header");
            if (tokens.size() != 2)
                throw CircuitParseError(line_no, tokens[0].column, "header must be exactly 'qubits N'");
            const int n = parse_int(tokens[1], line_no, "qubit count");
            if (n < 1) throw CircuitParseError(line_no, tokens[1].column, "qubit count must be >= 1");
            circuit.emplace(n);
            continue;
        }

        const std::optional<GateKind> kind = gate_kind_from_name(tokens[0].text);
        if (!kind)
            throw CircuitParseError(line_no, tokens[0].column, "unknown gate '" + tokens[0].text + "'");

        const int arity = gate_arity(*kind);
        const bool takes_angle = gate_takes_angle(*kind);
        const std::size_t expected = 1 + static_cast<std::size_t>(arity) + (takes_angle ? 1 : 0);
        if (tokens.size() < expected) {
            const Token& last = tokens.back();
            const int col = last.column + static_cast<int>(last.text.size()) + 1;
            const char* missing = (tokens.size() <= static_cast<std::size_t>(arity)) ? "missing target qubit"
                                                                                     : "missing angle";
            throw CircuitParseError(line_no, col, missing);
        }
        if (tokens.size() > expected)
            throw CircuitParseError(line_no, tokens[expected].column, "unexpected token '" + tokens[expected].text + "'");

        GateOp op;
        op.kind = *kind;
        for (int t = 0; t < arity; ++t) {
            const int q = parse_int(tokens[1 + static_cast<std::size_t>(t)], line_no, "qubit index");
            op.targets.push_back(q);
        }
        if (takes_angle) op.param = parse_angle(tokens[expected - 1], line_no);

        try {
            circuit->append(std::move(op));
        } catch (const std::invalid_argument& e) {
            throw CircuitParseError(line_no, tokens[0].column, e.what());
        }
    }
    if (!circuit) throw CircuitParseError(line_no, 1, "empty input: missing 'qubits N' header");
    return *circuit;
}

std::string render_circuit(const Circuit& circuit) {
    std::string out = "qubits " + std::to_string(circuit.num_qubits()) + "\n";
    char buf[64];
    for (const GateOp& op : circuit.ops()) {
        out += gate_kind_name(op.kind);
        for (int q : op.targets) {
            out += ' ';
            out += std::to_string(q);
        }
        if (op.param) {
            out += ' ';
            if (op.param->is_slot) {
                out += '$';
                out += std::to_string(op.param->slot_index);
            } else {
                std::snprintf(buf, sizeof buf, "%.17g", op.param->value);
                out += buf;
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace vqs
