// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhe {

enum class LogicalGate { X, Z, H, S, T, Cnot };

const char* logical_gate_name(LogicalGate g);

struct LogicalGateOp {
  LogicalGate kind;
  std::size_t wire_a = 0;
  std::size_t wire_b = 0;  // CNOT target; unused otherwise

  bool operator==(const LogicalGateOp&) const = default;
};

// A logical circuit over the gate set {X, Z, H, S, T, CNOT}. Text format: one
// gate per line ("H 0", "CNOT 0 1"), '#' starts a comment, blank lines are
// ignored. Wire count is the largest referenced wire + 1, or an explicit
// minimum supplied by the caller.
struct LogicalCircuit {
  std::size_t wires = 1;
  std::vector<LogicalGateOp> gates;

  std::size_t t_count() const;

  static LogicalCircuit parse(std::istream& in, std::size_t min_wires = 1);
  static LogicalCircuit parse_text(const std::string& text, std::size_t min_wires = 1);
  static LogicalCircuit parse_file(const std::string& path, std::size_t min_wires = 1);

  std::string to_text() const;
  nlohmann::json to_json() const;
  static LogicalCircuit from_json(const nlohmann::json& j);

  bool operator==(const LogicalCircuit&) const = default;
};

struct CircuitParseError : std::runtime_error {
  explicit CircuitParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qhe
