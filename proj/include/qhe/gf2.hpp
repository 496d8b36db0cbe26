// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace qhe {

using BitVector = std::vector<std::uint8_t>;

// Dense matrix over GF(2), row-major storage, one byte per entry.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols);

  // Rows given as strings of '0'/'1', e.g. {"1110100", "1101010"}.
  static BinaryMatrix from_rows(std::initializer_list<std::string_view> rows);
  static BinaryMatrix from_rows(const std::vector<BitVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint8_t operator()(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, std::uint8_t v);

  BitVector row(std::size_t r) const;
  BitVector col(std::size_t c) const;

  BinaryMatrix transposed() const;
  BinaryMatrix multiply(const BinaryMatrix& other) const;
  BitVector multiply(const BitVector& v) const;

  // Appends the rows of `other` below this matrix (column counts must match).
  BinaryMatrix stacked(const BinaryMatrix& other) const;
  BinaryMatrix stacked_row(const BitVector& v) const;

  std::size_t rank() const;
  bool is_zero() const;
  bool in_row_space(const BitVector& v) const;
  bool same_row_space(const BinaryMatrix& other) const;

  bool operator==(const BinaryMatrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

// Elementwise XOR of two equal-length bit vectors.
BitVector bitvec_xor(const BitVector& a, const BitVector& b);
std::size_t bitvec_weight(const BitVector& v);
int bitvec_parity(const BitVector& a, const BitVector& b);  // <a, b> mod 2
BitVector bitvec_from_string(std::string_view s);
std::string bitvec_to_string(const BitVector& v);

}  // namespace qhe
