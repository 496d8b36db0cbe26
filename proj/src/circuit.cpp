// SPDX-License-Identifier: Apache-2.0
#include "qhe/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qhe {

const char* logical_gate_name(LogicalGate g) {
  switch (g) {
    case LogicalGate::X: return "X";
    case LogicalGate::Z: return "Z";
    case LogicalGate::H: return "H";
    case LogicalGate::S: return "S";
    case LogicalGate::T: return "T";
    case LogicalGate::Cnot: return "CNOT";
  }
  throw std::logic_error("bad LogicalGate");
}

std::size_t LogicalCircuit::t_count() const {
  return static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(),
      [](const LogicalGateOp& g) { return g.kind == LogicalGate::T; }));
}

namespace {

LogicalGate gate_from_token(const std::string& tok, std::size_t line_no) {
  if (tok == "X") return LogicalGate::X;
  if (tok == "Z") return LogicalGate::Z;
  if (tok == "H") return LogicalGate::H;
  if (tok == "S") return LogicalGate::S;
  if (tok == "T") return LogicalGate::T;
  if (tok == "CNOT") return LogicalGate::Cnot;
  throw CircuitParseError("line " + std::to_string(line_no) + ": unknown gate '" + tok + "'");
}

std::size_t wire_from_token(const std::string& tok, std::size_t line_no) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw CircuitParseError("line " + std::to_string(line_no) + ": bad wire index '" + tok + "'");
  return static_cast<std::size_t>(std::stoull(tok));
}

}  // namespace

LogicalCircuit LogicalCircuit::parse(std::istream& in, std::size_t min_wires) {
  LogicalCircuit c;
  c.wires = std::max<std::size_t>(min_wires, 1);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    LogicalGateOp op;
    op.kind = gate_from_token(tok, line_no);
    std::string a, b, extra;
    if (!(ls >> a))
      throw CircuitParseError("line " + std::to_string(line_no) + ": missing wire index");
    op.wire_a = wire_from_token(a, line_no);
    if (op.kind == LogicalGate::Cnot) {
      if (!(ls >> b))
        throw CircuitParseError("line " + std::to_string(line_no) + ": CNOT needs two wires");
      op.wire_b = wire_from_token(b, line_no);
      if (op.wire_a == op.wire_b)
        throw CircuitParseError("line " + std::to_string(line_no) + ": CNOT wires must differ");
    }
    if (ls >> extra)
      throw CircuitParseError("line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
    c.wires = std::max({c.wires, op.wire_a + 1,
                        op.kind == LogicalGate::Cnot ? op.wire_b + 1 : std::size_t{0}});
    c.gates.push_back(op);
  }
  return c;
}

LogicalCircuit LogicalCircuit::parse_text(const std::string& text, std::size_t min_wires) {
  std::istringstream in(text);
  return parse(in, min_wires);
}

LogicalCircuit LogicalCircuit::parse_file(const std::string& path, std::size_t min_wires) {
  std::ifstream in(path);
  if (!in) throw CircuitParseError("cannot open circuit file: " + path);
  return parse(in, min_wires);
}

std::string LogicalCircuit::to_text() const {
  std::ostringstream os;
  for (const auto& g : gates) {
    os << logical_gate_name(g.kind) << ' ' << g.wire_a;
    if (g.kind == LogicalGate::Cnot) os << ' ' << g.wire_b;
    os << '\n';
  }
  return os.str();
}

nlohmann::json LogicalCircuit::to_json() const {
  nlohmann::json j;
  j["wires"] = wires;
  j["text"] = to_text();
  return j;
}

LogicalCircuit LogicalCircuit::from_json(const nlohmann::json& j) {
  return parse_text(j.at("text").get<std::string>(), j.at("wires").get<std::size_t>());
}

}  // namespace qhe
