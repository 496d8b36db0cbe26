// SPDX-License-Identifier: Apache-2.0
#include "qhe/gf2.hpp"

#include <sstream>
#include <stdexcept>

namespace qhe {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

BinaryMatrix BinaryMatrix::from_rows(std::initializer_list<std::string_view> rows) {
  std::vector<BitVector> parsed;
  parsed.reserve(rows.size());
  for (auto s : rows) parsed.push_back(bitvec_from_string(s));
  return from_rows(parsed);
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<BitVector>& rows) {
  if (rows.empty()) return BinaryMatrix();
  BinaryMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged rows in BinaryMatrix");
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

std::uint8_t BinaryMatrix::operator()(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("BinaryMatrix index");
  return data_[r * cols_ + c];
}

void BinaryMatrix::set(std::size_t r, std::size_t c, std::uint8_t v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("BinaryMatrix index");
  data_[r * cols_ + c] = v & 1u;
}

BitVector BinaryMatrix::row(std::size_t r) const {
  if (r >= rows_) throw std::out_of_range("BinaryMatrix row");
  return BitVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

BitVector BinaryMatrix::col(std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("BinaryMatrix col");
  BitVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = data_[r * cols_ + c];
  return out;
}

BinaryMatrix BinaryMatrix::transposed() const {
  BinaryMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.set(c, r, data_[r * cols_ + c]);
  return m;
}

BinaryMatrix BinaryMatrix::multiply(const BinaryMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("BinaryMatrix shape mismatch");
  BinaryMatrix m(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < other.cols_; ++c) {
      std::uint8_t acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc ^= data_[r * cols_ + k] & other(k, c);
      m.set(r, c, acc);
    }
  return m;
}

BitVector BinaryMatrix::multiply(const BitVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("BinaryMatrix/vector length mismatch");
  BitVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint8_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc ^= data_[r * cols_ + c] & v[c];
    out[r] = acc;
  }
  return out;
}

BinaryMatrix BinaryMatrix::stacked(const BinaryMatrix& other) const {
  if (rows_ == 0) return other;
  if (other.rows_ == 0) return *this;
  if (cols_ != other.cols_) throw std::invalid_argument("BinaryMatrix stack width mismatch");
  BinaryMatrix m(rows_ + other.rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.set(r, c, data_[r * cols_ + c]);
  for (std::size_t r = 0; r < other.rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.set(rows_ + r, c, other(r, c));
  return m;
}

BinaryMatrix BinaryMatrix::stacked_row(const BitVector& v) const {
  return stacked(BinaryMatrix::from_rows(std::vector<BitVector>{v}));
}

std::size_t BinaryMatrix::rank() const {
  std::vector<std::uint8_t> a = data_;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows_ && a[pivot * cols_ + c] == 0) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != rank)
      for (std::size_t k = 0; k < cols_; ++k) std::swap(a[pivot * cols_ + k], a[rank * cols_ + k]);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r != rank && a[r * cols_ + c]) {
        for (std::size_t k = 0; k < cols_; ++k) a[r * cols_ + k] ^= a[rank * cols_ + k];
      }
    }
    ++rank;
  }
  return rank;
}

bool BinaryMatrix::is_zero() const {
  for (auto b : data_)
    if (b) return false;
  return true;
}

bool BinaryMatrix::in_row_space(const BitVector& v) const {
  if (v.size() != cols_ && rows_ != 0) throw std::invalid_argument("row space length mismatch");
  if (bitvec_weight(v) == 0) return true;
  if (rows_ == 0) return false;
  return stacked_row(v).rank() == rank();
}

bool BinaryMatrix::same_row_space(const BinaryMatrix& other) const {
  if (rows_ == 0 && other.rows_ == 0) return true;
  if (cols_ != other.cols_) return false;
  std::size_t ra = rank();
  std::size_t rb = other.rank();
  return ra == rb && stacked(other).rank() == ra;
}

std::string BinaryMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << int(data_[r * cols_ + c]);
    if (r + 1 < rows_) os << '\n';
  }
  return os.str();
}

BitVector bitvec_xor(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("bitvec length mismatch");
  BitVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

std::size_t bitvec_weight(const BitVector& v) {
  std::size_t w = 0;
  for (auto b : v) w += b & 1u;
  return w;
}

int bitvec_parity(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("bitvec length mismatch");
  std::uint8_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
  return acc;
}

BitVector bitvec_from_string(std::string_view s) {
  BitVector out;
  out.reserve(s.size());
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bit string must be 0/1");
    out.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return out;
}

std::string bitvec_to_string(const BitVector& v) {
  std::string s;
  s.reserve(v.size());
  for (auto b : v) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace qhe
