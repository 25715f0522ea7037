#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "yoneda/exactint/int_matrix.hpp"

namespace yoneda {

// U·A·V = D with U, V unimodular and D diagonal with d₁ | d₂ | … (all ≥ 0).
// Trailing ones and zeros are kept on the diagonal.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inv;
  IntMatrix V_inv;
  std::size_t source_rows = 0;
  std::size_t source_cols = 0;
  std::size_t rank = 0;

  // The min(rows, cols) diagonal entries of D.
  [[nodiscard]] std::vector<Integer> diagonal() const;
};

// Classical elimination: pivot on the smallest nonzero |entry|, ties broken
// by smallest (row, col). Deterministic.
SmithDecomposition snf(const IntMatrix& a);

// Diagonal of the Smith form only; skips the transform bookkeeping.
std::vector<Integer> smith_diagonal(const IntMatrix& a);

// Column-style integer echelon form A·V = H.
//
// Columns [0, rank) of H are in echelon form with strictly increasing pivot
// rows and positive pivots; the remaining columns are zero. V is unimodular,
// so its trailing columns are a saturated basis of ker A.
class ColumnEchelon {
 public:
  explicit ColumnEchelon(const IntMatrix& a, bool track_transform = true);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t rank() const noexcept { return pivot_rows_.size(); }

  // Basis of ker A, cols − rank columns.
  [[nodiscard]] IntMatrix kernel() const;
  // Basis of the column lattice of A (the nonzero echelon columns).
  [[nodiscard]] IntMatrix image_basis() const;
  // Coordinates y with image_basis()·y = b, when b lies in the column lattice.
  [[nodiscard]] std::optional<IntVector> lattice_coordinates(const IntVector& b) const;
  // Some x with A·x = b.
  [[nodiscard]] std::optional<IntVector> solve(const IntVector& b) const;
  [[nodiscard]] bool contains(const IntVector& b) const { return lattice_coordinates(b).has_value(); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  bool tracked_;
  std::vector<std::vector<Integer>> h_;  // column-major echelon columns
  std::vector<std::vector<Integer>> v_;  // column-major transform
  std::vector<std::size_t> pivot_rows_;
};

// Columns form a basis of {x : A·x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

// Basis of the lattice spanned by the columns of `generators`.
IntMatrix lattice_basis(const IntMatrix& generators);

std::size_t rank(const IntMatrix& a);

// Some x with A·x = b, or nullopt. Throws DimensionMismatch when b has the wrong length.
std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b);

// Some x with A·x − b ∈ colspan(rel), or nullopt.
std::optional<IntVector> solve_mod(const IntMatrix& a, const IntVector& b, const IntMatrix& rel);

// Solves A·X ≡ B (mod colspan(rel)) column by column with one factorisation.
std::optional<IntMatrix> solve_mod_columns(const IntMatrix& a, const IntMatrix& b, const IntMatrix& rel);

}  // namespace yoneda
