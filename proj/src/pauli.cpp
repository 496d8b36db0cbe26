// SPDX-License-Identifier: Apache-2.0
#include "qhe/pauli.hpp"

#include <stdexcept>

namespace qhe {
namespace {

struct Product {
  PauliOp op;
  int phase;  // power of i
};

// row * col for single-qubit Paulis; XY = iZ, YZ = iX, ZX = iY.
Product multiply_ops(PauliOp a, PauliOp b) {
  if (a == PauliOp::I) return {b, 0};
  if (b == PauliOp::I) return {a, 0};
  if (a == b) return {PauliOp::I, 0};
  switch (a) {
    case PauliOp::X:
      return b == PauliOp::Y ? Product{PauliOp::Z, 1} : Product{PauliOp::Y, 3};
    case PauliOp::Y:
      return b == PauliOp::Z ? Product{PauliOp::X, 1} : Product{PauliOp::Z, 3};
    case PauliOp::Z:
      return b == PauliOp::X ? Product{PauliOp::Y, 1} : Product{PauliOp::X, 3};
    default:
      return {PauliOp::I, 0};  // unreachable
  }
}

}  // namespace

char pauli_char(PauliOp op) {
  switch (op) {
    case PauliOp::I: return 'I';
    case PauliOp::X: return 'X';
    case PauliOp::Y: return 'Y';
    case PauliOp::Z: return 'Z';
  }
  throw std::logic_error("bad PauliOp");
}

PauliOp pauli_from_char(char c) {
  switch (c) {
    case 'I': return PauliOp::I;
    case 'X': return PauliOp::X;
    case 'Y': return PauliOp::Y;
    case 'Z': return PauliOp::Z;
    default: throw std::invalid_argument("Pauli letter must be one of I, X, Y, Z");
  }
}

PauliString PauliString::from_string(std::string_view s) {
  PauliString p;
  std::size_t i = 0;
  int phase = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') phase += 2;
    ++i;
  }
  if (i < s.size() && s[i] == 'i' && i + 1 < s.size()) {
    // Leading "i"/"-i" phase; a trailing bare "i" would be ambiguous with the
    // identity letter, so the phase form requires at least one letter after.
    phase += 1;
    ++i;
  }
  for (; i < s.size(); ++i) p.ops_.push_back(pauli_from_char(s[i]));
  p.set_phase_exponent(phase);
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t pos, PauliOp op) {
  PauliString p(n);
  p.set_op(pos, op);
  return p;
}

std::complex<double> PauliString::phase() const {
  switch (phase_) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (auto op : ops_) w += (op != PauliOp::I);
  return w;
}

BitVector PauliString::x_support() const {
  BitVector v(ops_.size(), 0);
  for (std::size_t i = 0; i < ops_.size(); ++i)
    v[i] = (ops_[i] == PauliOp::X || ops_[i] == PauliOp::Y);
  return v;
}

BitVector PauliString::z_support() const {
  BitVector v(ops_.size(), 0);
  for (std::size_t i = 0; i < ops_.size(); ++i)
    v[i] = (ops_[i] == PauliOp::Z || ops_[i] == PauliOp::Y);
  return v;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (size() != rhs.size()) throw std::invalid_argument("PauliString length mismatch");
  PauliString out(size());
  int phase = phase_ + rhs.phase_;
  for (std::size_t i = 0; i < size(); ++i) {
    Product pr = multiply_ops(ops_[i], rhs.ops_[i]);
    out.ops_[i] = pr.op;
    phase += pr.phase;
  }
  out.set_phase_exponent(phase);
  return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (size() != other.size()) throw std::invalid_argument("PauliString length mismatch");
  int anti = bitvec_parity(x_support(), other.z_support()) ^
             bitvec_parity(z_support(), other.x_support());
  return anti == 0;
}

std::string PauliString::to_string() const {
  std::string s;
  switch (phase_) {
    case 1: s = "i"; break;
    case 2: s = "-"; break;
    case 3: s = "-i"; break;
    default: break;
  }
  for (auto op : ops_) s.push_back(pauli_char(op));
  return s;
}

PauliString pauli_from_supports(const BitVector& x, const BitVector& z) {
  if (x.size() != z.size()) throw std::invalid_argument("support length mismatch");
  PauliString p(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && z[i])
      p.set_op(i, PauliOp::Y);
    else if (x[i])
      p.set_op(i, PauliOp::X);
    else if (z[i])
      p.set_op(i, PauliOp::Z);
  }
  return p;
}

}  // namespace qhe
