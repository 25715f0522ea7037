#include "yoneda/exactint/int_matrix.hpp"

#include <ostream>
#include <sstream>

#include "yoneda/errors.hpp"

namespace yoneda {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Integer>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Integer(1);
  return m;
}

IntMatrix IntMatrix::column(std::span<const Integer> entries) {
  IntMatrix m(entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> entries, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < entries.size() && i < rows && i < cols; ++i) m(i, i) = entries[i];
  return m;
}

std::vector<Integer> IntMatrix::col(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void IntMatrix::set_col(std::size_t c, std::span<const Integer> values) {
  if (values.size() != rows_) throw DimensionMismatch("set_col: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool IntMatrix::is_zero_col(std::size_t c) const {
  for (std::size_t r = 0; r < rows_; ++r)
    if (!(*this)(r, c).is_zero()) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::select_cols(std::span<const std::size_t> which) const {
  IntMatrix out(rows_, which.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < which.size(); ++k) out(r, k) = (*this)(r, which[k]);
  return out;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> which) const {
  IntMatrix out(which.size(), cols_);
  for (std::size_t k = 0; k < which.size(); ++k)
    for (std::size_t c = 0; c < cols_; ++c) out(k, c) = (*this)(which[k], c);
  return out;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
  IntMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& src) {
  if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_) throw DimensionMismatch("set_block out of range");
  for (std::size_t r = 0; r < src.rows_; ++r)
    for (std::size_t c = 0; c < src.cols_; ++c) (*this)(r0 + r, c0 + c) = src(r, c);
}

IntMatrix IntMatrix::hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw DimensionMismatch("hcat: row counts differ");
  IntMatrix out(a.rows_, a.cols_ + b.cols_);
  out.set_block(0, 0, a);
  out.set_block(0, a.cols_, b);
  return out;
}

IntMatrix IntMatrix::vcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.cols_) throw DimensionMismatch("vcat: column counts differ");
  IntMatrix out(a.rows_ + b.rows_, a.cols_);
  out.set_block(0, 0, a);
  out.set_block(a.rows_, 0, b);
  return out;
}

IntMatrix IntMatrix::block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows_ + b.rows_, a.cols_ + b.cols_);
  out.set_block(0, 0, a);
  out.set_block(a.rows_, a.cols_, b);
  return out;
}

IntMatrix IntMatrix::kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const Integer& s = a(i, j);
      if (s.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t l = 0; l < b.cols_; ++l) out(i * b.rows_ + k, j * b.cols_ + l) = s * b(k, l);
    }
  return out;
}

IntMatrix IntMatrix::vec() const {
  IntMatrix out(rows_ * cols_, 1);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t r = 0; r < rows_; ++r) out(c * rows_ + r, 0) = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::unvec(const IntMatrix& column, std::size_t rows, std::size_t cols) {
  if (column.rows_ != rows * cols || column.cols_ != 1) throw DimensionMismatch("unvec: wrong length");
  IntMatrix out(rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = column(c * rows + r, 0);
  return out;
}

void IntMatrix::check_same_shape(const IntMatrix& rhs, const char* what) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch(std::string(what) + ": shape mismatch");
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& rhs) {
  check_same_shape(rhs, "matrix +");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!rhs.data_[k].is_zero()) data_[k] += rhs.data_[k];
  return *this;
}

IntMatrix& IntMatrix::operator-=(const IntMatrix& rhs) {
  check_same_shape(rhs, "matrix -");
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (!rhs.data_[k].is_zero()) data_[k] -= rhs.data_[k];
  return *this;
}

IntMatrix& IntMatrix::operator*=(const Integer& scalar) {
  for (auto& x : data_)
    if (!x.is_zero()) x *= scalar;
  return *this;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
  IntMatrix out(a.rows_, b.cols_);
  // Row-oriented accumulation skipping zero entries of the left factor;
  // most matrices built here are sparse.
  for (std::size_t i = 0; i < a.rows_; ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& s = a(i, k);
      if (s.is_zero()) continue;
      auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b_row[j].is_zero()) out_row[j].add_mul(s, b_row[j]);
    }
  }
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r > 0) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c > 0) os << ", ";
      os << (*this)(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

IntVector operator*(const IntMatrix& a, const IntVector& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector product: length mismatch");
  IntVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    for (std::size_t k = 0; k < x.size(); ++k)
      if (!r[k].is_zero() && !x[k].is_zero()) out[i].add_mul(r[k], x[k]);
  }
  return out;
}

}  // namespace yoneda
