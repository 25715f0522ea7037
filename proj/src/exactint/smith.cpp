#include "yoneda/exactint/smith.hpp"

#include <algorithm>
#include <utility>

#include "yoneda/errors.hpp"

namespace yoneda {

namespace {

// Working state for Smith elimination; transforms are tracked on request.
class SmithWork {
 public:
  SmithWork(const IntMatrix& a, bool track) : d_(a), track_(track) {
    if (track_) {
      u_ = IntMatrix::identity(a.rows());
      u_inv_ = IntMatrix::identity(a.rows());
      v_ = IntMatrix::identity(a.cols());
      v_inv_ = IntMatrix::identity(a.cols());
    }
  }

  void run() {
    const std::size_t m = d_.rows(), n = d_.cols();
    std::size_t t = 0;
    while (t < m && t < n) {
      auto piv = find_pivot(t);
      if (!piv) break;
      bring_to(t, piv->first, piv->second);
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (d_(i, t).is_zero()) continue;
          Integer q = Integer::nearest_quotient(d_(i, t), d_(t, t));
          q.negate();
          add_row(i, t, q);
          if (!d_(i, t).is_zero()) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (d_(t, j).is_zero()) continue;
          Integer q = Integer::nearest_quotient(d_(t, j), d_(t, t));
          q.negate();
          add_col(j, t, q);
          if (!d_(t, j).is_zero()) clean = false;
        }
        if (!clean) {
          // A remainder smaller than the pivot survived; move the smallest one in.
          std::size_t bi = t, bj = t;
          for (std::size_t i = t + 1; i < m; ++i)
            if (!d_(i, t).is_zero() && Integer::compare_abs(d_(i, t), d_(bi, bj)) < 0) bi = i, bj = t;
          for (std::size_t j = t + 1; j < n; ++j)
            if (!d_(t, j).is_zero() && Integer::compare_abs(d_(t, j), d_(bi, bj)) < 0) bi = t, bj = j;
          bring_to(t, bi, bj);
          continue;
        }
        // Row and column cleared; enforce divisibility into the trailing block.
        bool fixed = false;
        for (std::size_t i = t + 1; i < m && !fixed; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!Integer::divides(d_(t, t), d_(i, j))) {
              add_row(t, i, Integer(1));
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (d_(t, t).sign() < 0) negate_row(t);
      ++t;
    }
    rank_ = t;
  }

  IntMatrix d_, u_, u_inv_, v_, v_inv_;
  bool track_;
  std::size_t rank_ = 0;

 private:
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < d_.rows(); ++i)
      for (std::size_t j = t; j < d_.cols(); ++j) {
        const Integer& x = d_(i, j);
        if (x.is_zero()) continue;
        if (!best || Integer::compare_abs(x, d_(best->first, best->second)) < 0) {
          best = {i, j};
          if (x == Integer(1) || x == Integer(-1)) return best;
        }
      }
    return best;
  }

  void bring_to(std::size_t t, std::size_t i, std::size_t j) {
    if (i != t) swap_rows(i, t);
    if (j != t) swap_cols(j, t);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap_ranges(d_.row(i).begin(), d_.row(i).end(), d_.row(j).begin());
    if (!track_) return;
    std::swap_ranges(u_.row(i).begin(), u_.row(i).end(), u_.row(j).begin());
    for (std::size_t r = 0; r < u_inv_.rows(); ++r) std::swap(u_inv_(r, i), u_inv_(r, j));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < d_.rows(); ++r) std::swap(d_(r, i), d_(r, j));
    if (!track_) return;
    for (std::size_t r = 0; r < v_.rows(); ++r) std::swap(v_(r, i), v_(r, j));
    std::swap_ranges(v_inv_.row(i).begin(), v_inv_.row(i).end(), v_inv_.row(j).begin());
  }

  // row_i += q·row_j
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    axpy_row(d_, i, j, q);
    if (!track_) return;
    axpy_row(u_, i, j, q);
    // U⁻¹ ← U⁻¹·E⁻¹ : col_j −= q·col_i
    for (std::size_t r = 0; r < u_inv_.rows(); ++r)
      if (!u_inv_(r, i).is_zero()) u_inv_(r, j).sub_mul(q, u_inv_(r, i));
  }

  // col_i += q·col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    axpy_col(d_, i, j, q);
    if (!track_) return;
    axpy_col(v_, i, j, q);
    // V⁻¹ ← E⁻¹·V⁻¹ : row_j −= q·row_i
    auto src = v_inv_.row(i);
    auto dst = v_inv_.row(j);
    for (std::size_t c = 0; c < src.size(); ++c)
      if (!src[c].is_zero()) dst[c].sub_mul(q, src[c]);
  }

  void negate_row(std::size_t i) {
    for (auto& x : d_.row(i)) x.negate();
    if (!track_) return;
    for (auto& x : u_.row(i)) x.negate();
    for (std::size_t r = 0; r < u_inv_.rows(); ++r) u_inv_(r, i).negate();
  }

  static void axpy_row(IntMatrix& m, std::size_t i, std::size_t j, const Integer& q) {
    auto src = m.row(j);
    auto dst = m.row(i);
    for (std::size_t c = 0; c < src.size(); ++c)
      if (!src[c].is_zero()) dst[c].add_mul(q, src[c]);
  }

  static void axpy_col(IntMatrix& m, std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m(r, j).is_zero()) m(r, i).add_mul(q, m(r, j));
  }
};

}  // namespace

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i) out.push_back(D(i, i));
  return out;
}

SmithDecomposition snf(const IntMatrix& a) {
  SmithWork w(a, true);
  w.run();
  SmithDecomposition out;
  out.U = std::move(w.u_);
  out.D = std::move(w.d_);
  out.V = std::move(w.v_);
  out.U_inv = std::move(w.u_inv_);
  out.V_inv = std::move(w.v_inv_);
  out.source_rows = a.rows();
  out.source_cols = a.cols();
  out.rank = w.rank_;
  return out;
}

std::vector<Integer> smith_diagonal(const IntMatrix& a) {
  SmithWork w(a, false);
  w.run();
  std::vector<Integer> out;
  for (std::size_t i = 0; i < a.rows() && i < a.cols(); ++i) out.push_back(w.d_(i, i));
  return out;
}

// ---------------------------------------------------------------------------
// ColumnEchelon

ColumnEchelon::ColumnEchelon(const IntMatrix& a, bool track_transform)
    : rows_(a.rows()), cols_(a.cols()), tracked_(track_transform) {
  h_.assign(cols_, std::vector<Integer>(rows_));
  for (std::size_t r = 0; r < rows_; ++r) {
    auto row = a.row(r);
    for (std::size_t c = 0; c < cols_; ++c)
      if (!row[c].is_zero()) h_[c][r] = row[c];
  }
  if (tracked_) {
    v_.assign(cols_, std::vector<Integer>(cols_));
    for (std::size_t c = 0; c < cols_; ++c) v_[c][c] = Integer(1);
  }

  // col_j -= q·col_p over rows ≥ r (earlier rows of active columns are zero).
  auto reduce = [&](std::size_t j, std::size_t p, std::size_t r, const Integer& q) {
    auto& hj = h_[j];
    const auto& hp = h_[p];
    for (std::size_t i = r; i < rows_; ++i)
      if (!hp[i].is_zero()) hj[i].sub_mul(q, hp[i]);
    if (tracked_) {
      auto& vj = v_[j];
      const auto& vp = v_[p];
      for (std::size_t i = 0; i < cols_; ++i)
        if (!vp[i].is_zero()) vj[i].sub_mul(q, vp[i]);
    }
  };

  std::size_t k = 0;
  std::vector<std::size_t> live;
  for (std::size_t r = 0; r < rows_ && k < cols_; ++r) {
    for (;;) {
      live.clear();
      for (std::size_t j = k; j < cols_; ++j)
        if (!h_[j][r].is_zero()) live.push_back(j);
      if (live.empty()) break;
      std::size_t p = live.front();
      for (std::size_t j : live)
        if (Integer::compare_abs(h_[j][r], h_[p][r]) < 0) p = j;
      if (live.size() == 1) {
        if (p != k) {
          std::swap(h_[p], h_[k]);
          if (tracked_) std::swap(v_[p], v_[k]);
        }
        if (h_[k][r].sign() < 0) {
          for (std::size_t i = r; i < rows_; ++i) h_[k][i].negate();
          if (tracked_)
            for (auto& x : v_[k]) x.negate();
        }
        pivot_rows_.push_back(r);
        ++k;
        break;
      }
      for (std::size_t j : live) {
        if (j == p) continue;
        Integer q = Integer::nearest_quotient(h_[j][r], h_[p][r]);
        reduce(j, p, r, q);
      }
    }
  }
}

IntMatrix ColumnEchelon::kernel() const {
  if (!tracked_) throw InternalInvariant("ColumnEchelon::kernel requires the tracked transform");
  const std::size_t k = rank();
  IntMatrix out(cols_, cols_ - k);
  for (std::size_t j = k; j < cols_; ++j)
    for (std::size_t i = 0; i < cols_; ++i) out(i, j - k) = v_[j][i];
  return out;
}

IntMatrix ColumnEchelon::image_basis() const {
  const std::size_t k = rank();
  IntMatrix out(rows_, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < rows_; ++i) out(i, j) = h_[j][i];
  return out;
}

std::optional<IntVector> ColumnEchelon::lattice_coordinates(const IntVector& b) const {
  if (b.size() != rows_) throw DimensionMismatch("lattice_coordinates: right-hand side has wrong length");
  IntVector residual = b;
  IntVector y(rank());
  std::size_t t = 0;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (t < pivot_rows_.size() && pivot_rows_[t] == r) {
      if (!residual[r].is_zero()) {
        const auto& col = h_[t];
        if (!Integer::divides(col[r], residual[r])) return std::nullopt;
        Integer q = Integer::divexact(residual[r], col[r]);
        for (std::size_t i = r; i < rows_; ++i)
          if (!col[i].is_zero()) residual[i].sub_mul(q, col[i]);
        y[t] = std::move(q);
      }
      ++t;
    } else if (!residual[r].is_zero()) {
      return std::nullopt;
    }
  }
  return y;
}

std::optional<IntVector> ColumnEchelon::solve(const IntVector& b) const {
  if (!tracked_) throw InternalInvariant("ColumnEchelon::solve requires the tracked transform");
  auto y = lattice_coordinates(b);
  if (!y) return std::nullopt;
  IntVector x(cols_);
  for (std::size_t t = 0; t < y->size(); ++t) {
    const Integer& c = (*y)[t];
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < cols_; ++i)
      if (!v_[t][i].is_zero()) x[i].add_mul(c, v_[t][i]);
  }
  return x;
}

// ---------------------------------------------------------------------------

IntMatrix kernel_basis(const IntMatrix& a) { return ColumnEchelon(a, true).kernel(); }

IntMatrix lattice_basis(const IntMatrix& generators) { return ColumnEchelon(generators, false).image_basis(); }

std::size_t rank(const IntMatrix& a) { return ColumnEchelon(a, false).rank(); }

std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve: right-hand side length differs from row count");
  return ColumnEchelon(a, true).solve(b);
}

std::optional<IntVector> solve_mod(const IntMatrix& a, const IntVector& b, const IntMatrix& rel) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_mod: right-hand side length differs from row count");
  if (rel.rows() != a.rows()) throw DimensionMismatch("solve_mod: relation matrix has wrong row count");
  if (rel.cols() == 0) return solve(a, b);
  auto x = solve(IntMatrix::hcat(a, rel), b);
  if (!x) return std::nullopt;
  x->resize(a.cols());
  return x;
}

std::optional<IntMatrix> solve_mod_columns(const IntMatrix& a, const IntMatrix& b, const IntMatrix& rel) {
  if (b.rows() != a.rows()) throw DimensionMismatch("solve_mod_columns: right-hand side row count differs");
  if (rel.rows() != a.rows()) throw DimensionMismatch("solve_mod_columns: relation matrix has wrong row count");
  ColumnEchelon ech(rel.cols() == 0 ? a : IntMatrix::hcat(a, rel), true);
  IntMatrix out(a.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto x = ech.solve(b.col(j));
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < a.cols(); ++i) out(i, j) = (*x)[i];
  }
  return out;
}

}  // namespace yoneda
