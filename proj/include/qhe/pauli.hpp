// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qhe/gf2.hpp"

namespace qhe {

enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(PauliOp op);
PauliOp pauli_from_char(char c);

// n-qubit Pauli operator with an exact global phase in {+1, +i, -1, -i},
// stored as the exponent of i. Multiplication tracks the phase exactly.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : ops_(n, PauliOp::I) {}

  // Accepts an optional phase prefix ("+", "-", "i", "-i") followed by
  // characters from {I, X, Y, Z}, e.g. "-iXZY".
  static PauliString from_string(std::string_view s);
  static PauliString single(std::size_t n, std::size_t pos, PauliOp op);

  std::size_t size() const { return ops_.size(); }
  PauliOp op(std::size_t i) const { return ops_.at(i); }
  void set_op(std::size_t i, PauliOp op) { ops_.at(i) = op; }

  // Phase as a power of i (0..3) and as a complex number.
  int phase_exponent() const { return phase_; }
  void set_phase_exponent(int e) { phase_ = ((e % 4) + 4) % 4; }
  std::complex<double> phase() const;

  std::size_t weight() const;
  BitVector x_support() const;  // 1 where op is X or Y
  BitVector z_support() const;  // 1 where op is Z or Y

  PauliString operator*(const PauliString& rhs) const;
  bool commutes_with(const PauliString& other) const;

  bool operator==(const PauliString& other) const = default;
  bool equals_up_to_phase(const PauliString& other) const { return ops_ == other.ops_; }

  std::string to_string() const;  // phase prefix plus letters

 private:
  std::vector<PauliOp> ops_;
  int phase_ = 0;
};

// Pauli from binary symplectic data: op i is X^x[i] Z^z[i] (Y carries phase +1
// by the convention Y = i X Z, so x=z=1 yields the literal Pauli Y).
PauliString pauli_from_supports(const BitVector& x, const BitVector& z);

}  // namespace qhe
