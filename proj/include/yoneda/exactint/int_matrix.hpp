#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "yoneda/exactint/integer.hpp"

namespace yoneda {

// Dense row-major matrix of exact integers.
//
// Zero-dimension matrices (0×n, n×0) are first-class and flow through every
// operation; they encode maps to or from the zero group.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<Integer>> rows);

  static IntMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static IntMatrix identity(std::size_t n);
  static IntMatrix column(std::span<const Integer> entries);
  static IntMatrix diagonal(std::span<const Integer> entries, std::size_t rows, std::size_t cols);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::vector<Integer> col(std::size_t c) const;
  void set_col(std::size_t c, std::span<const Integer> values);

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_zero_col(std::size_t c) const;

  [[nodiscard]] IntMatrix transpose() const;
  [[nodiscard]] IntMatrix select_cols(std::span<const std::size_t> which) const;
  [[nodiscard]] IntMatrix select_rows(std::span<const std::size_t> which) const;
  [[nodiscard]] IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& src);

  // [A | B]
  [[nodiscard]] static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);
  // [A ; B]
  [[nodiscard]] static IntMatrix vcat(const IntMatrix& a, const IntMatrix& b);
  [[nodiscard]] static IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);
  // Kronecker product A ⊗ B.
  [[nodiscard]] static IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
  // Column-major vectorisation, a rows·cols × 1 column.
  [[nodiscard]] IntMatrix vec() const;
  [[nodiscard]] static IntMatrix unvec(const IntMatrix& column, std::size_t rows, std::size_t cols);

  IntMatrix& operator+=(const IntMatrix& rhs);
  IntMatrix& operator-=(const IntMatrix& rhs);
  IntMatrix& operator*=(const Integer& scalar);
  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend IntMatrix operator-(IntMatrix a) { return a *= Integer(-1); }
  friend IntMatrix operator*(IntMatrix a, const Integer& s) { return a *= s; }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  [[nodiscard]] std::string to_string() const;

 private:
  void check_same_shape(const IntMatrix& rhs, const char* what) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// Column vector helpers.
using IntVector = std::vector<Integer>;
IntVector operator*(const IntMatrix& a, const IntVector& x);

}  // namespace yoneda
