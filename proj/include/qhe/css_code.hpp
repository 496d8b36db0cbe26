// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qhe/gf2.hpp"
#include "qhe/pauli.hpp"
#include "qhe/state.hpp"

namespace qhe {

// Syndrome of a Pauli error: x_bits come from the Z-type checks (rows of h_z)
// and flag X components; z_bits come from the X-type checks (rows of h_x) and
// flag Z components.
struct Syndrome {
  BitVector x_bits;
  BitVector z_bits;

  bool is_zero() const { return bitvec_weight(x_bits) == 0 && bitvec_weight(z_bits) == 0; }
  bool operator==(const Syndrome&) const = default;
};

// Self-dual CSS code data. h_x and h_z are parity-check matrices for the X-
// and Z-type stabilizer generators; logical operators are full Pauli strings.
// The encoding circuit maps qubit 0 = |psi>, qubits 1..n-1 = |0> to the
// encoded logical state, using H and CNOT only.
struct CssCode {
  std::string name;
  std::size_t n = 1;
  std::size_t k = 1;
  std::size_t d = 1;
  BinaryMatrix h_x;
  BinaryMatrix h_z;
  std::vector<PauliString> logical_x;
  std::vector<PauliString> logical_z;
  std::vector<GateOp> encoding_circuit;

  std::size_t correctable_weight() const { return (d - 1) / 2; }

  // Transversal application of this gate on every physical qubit implements
  // the logical S. For codes whose logical X has weight 3 mod 4 the physical
  // per-qubit gate is S-dagger.
  GateKind phase_unit() const;

  nlohmann::json to_json() const;
  static CssCode from_json(const nlohmann::json& j);
};

CssCode steane_code();    // [[7,1,3]]
CssCode identity_code();  // [[1,1,1]], trivial encoding; for oracles and tests

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_passed() const;
  const ValidationCheck* find(const std::string& name) const;
};

// Checks, in order: shape consistency, h_x h_z^T = 0, equal row spaces of h_x
// and h_z, doubly even h_x rows, logical operator (anti)commutation, and a
// simulated encoding-circuit check that the prepared state is fixed by every
// stabilizer generator and by logical Z (skipped above `sim_limit` qubits).
ValidationReport validate_css_properties(const CssCode& code, std::size_t sim_limit = 16);

Syndrome syndrome_of(const CssCode& code, const PauliString& error);

// Minimum-weight correction for a syndrome, exact for weight <= (d-1)/2
// single-qubit error patterns; returns a literal I/X/Y/Z string (phase +1).
PauliString decode_syndrome(const CssCode& code, const Syndrome& s);

struct LogicalReadout {
  int logical_bit = 0;
  bool detected_error = false;
};

// Interprets a transversal Z-basis readout of a codeword: corrects the word to
// the nearest dual-containing codeword via the Z-type checks, then reports the
// parity over the logical Z support.
LogicalReadout decode_logical_z_readout(const CssCode& code, const std::vector<int>& bits);

bool in_stabilizer_group(const CssCode& code, const PauliString& p);  // up to phase

}  // namespace qhe
