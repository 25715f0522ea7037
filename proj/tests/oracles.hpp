#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the Smith or echelon code under test.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "yoneda/exactint.hpp"

namespace oracle {

using yoneda::Integer;
using yoneda::IntMatrix;

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi,
                               double density = 1.0) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::bernoulli_distribution keep(density);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (keep(rng)) m(r, c) = Integer(val(rng));
  return m;
}

// Fraction-free determinant by cofactor expansion; fine for k ≤ 5.
inline Integer det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return Integer(1);
  if (n == 1) return a(0, 0);
  Integer total;
  std::vector<std::size_t> rows(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    std::iota(rows.begin(), rows.end(), 1);
    Integer minor = det(a.select_rows(rows).select_cols(cols));
    if (j % 2 == 0)
      total.add_mul(a(0, j), minor);
    else
      total.sub_mul(a(0, j), minor);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Invariant factors from determinantal divisors: d_k = gcd of k×k minors,
// factor_k = d_k / d_{k-1}. Zero once d_k vanishes.
inline std::vector<Integer> invariant_factors_by_minors(const IntMatrix& a) {
  const std::size_t r = std::min(a.rows(), a.cols());
  std::vector<Integer> out;
  Integer prev(1);
  for (std::size_t k = 1; k <= r; ++k) {
    Integer g;
    subsets(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
      subsets(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
        g = Integer::gcd(g, det(a.select_rows(rows).select_cols(cols)));
      });
    });
    if (g.is_zero()) {
      for (; k <= r; ++k) out.emplace_back(0);
      break;
    }
    out.push_back(Integer::divexact(g, prev));
    prev = g;
  }
  return out;
}


// Invariant factors of ⊕ℤ/cᵢ by primary decomposition (no Smith form).
// Orders 0 contribute to the free rank, orders 1 vanish.
inline std::vector<long> invariant_factors_of_cyclics(const std::vector<long>& orders, std::size_t* free_rank = nullptr) {
  std::map<long, std::vector<long>> by_prime;
  std::size_t rank = 0;
  for (long c : orders) {
    if (c == 0) {
      ++rank;
      continue;
    }
    c = c < 0 ? -c : c;
    for (long p = 2; c > 1; ++p) {
      if (c % p != 0) continue;
      long q = 1;
      while (c % p == 0) c /= p, q *= p;
      by_prime[p].push_back(q);
    }
  }
  std::size_t len = 0;
  for (auto& [p, powers] : by_prime) {
    std::sort(powers.begin(), powers.end());
    len = std::max(len, powers.size());
  }
  std::vector<long> out(len, 1);
  for (auto& [p, powers] : by_prime)
    for (std::size_t k = 0; k < powers.size(); ++k) out[len - powers.size() + k] *= powers[k];
  if (free_rank) *free_rank = rank;
  return out;
}

inline long gcd_long(long a, long b) { return std::gcd(a, b); }

}  // namespace oracle
