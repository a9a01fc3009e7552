#pragma once

// Test-only exact LP oracle for the moment-matched prior construction.
//
// Generic dense two-phase tableau simplex over GMP rationals with Bland's
// rule. Deliberately shares nothing with the production solver: it works on
// the integer-scaled grid with raw monomial moment rows, no symmetry folding
// tricks beyond the variable layout, and no floating point.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ipmlab::oracle {

struct ExactLpResult {
  mpq_class objective;
  std::vector<mpq_class> x;
  std::size_t pivots = 0;
};

// maximize c.x  s.t.  A x = b, x >= 0, b >= 0.
inline ExactLpResult exact_simplex_max(const std::vector<std::vector<mpq_class>>& A,
                                       const std::vector<mpq_class>& b,
                                       const std::vector<mpq_class>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  const std::size_t cols = n + m;  // structural + artificials
  // Tableau rows 0..m-1 constraints, row m objective; last column rhs.
  std::vector<std::vector<mpq_class>> T(m + 1, std::vector<mpq_class>(cols + 1, 0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) throw std::invalid_argument("exact_simplex_max: negative rhs");
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][cols] = b[i];
    basis[i] = n + i;
  }

  std::size_t pivots = 0;
  auto pivot = [&](std::size_t r, std::size_t e) {
    const mpq_class p = T[r][e];
    for (auto& v : T[r]) v /= p;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r || T[i][e] == 0) continue;
      const mpq_class f = T[i][e];
      for (std::size_t j = 0; j <= cols; ++j)
        if (T[r][j] != 0) T[i][j] -= f * T[r][j];
    }
    basis[r] = e;
    ++pivots;
  };

  // Objective row holds reduced costs z_j - c_j for minimization of -c
  // (phase 2) or of the artificial sum (phase 1). Enter on negative entries.
  auto run = [&](std::size_t allowed_cols) {
    for (;;) {
      std::size_t e = cols;
      for (std::size_t j = 0; j < allowed_cols; ++j)
        if (T[m][j] < 0) { e = j; break; }
      if (e == cols) return;
      std::size_t r = m;
      mpq_class best;
      for (std::size_t i = 0; i < m; ++i) {
        if (T[i][e] <= 0) continue;
        mpq_class ratio = T[i][cols] / T[i][e];
        if (r == m || ratio < best || (ratio == best && basis[i] < basis[r])) {
          best = ratio;
          r = i;
        }
      }
      if (r == m) throw std::runtime_error("exact_simplex_max: unbounded");
      pivot(r, e);
    }
  };

  // Phase 1: minimize sum of artificials.
  for (std::size_t j = 0; j <= cols; ++j) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < m; ++i) s += T[i][j];
    T[m][j] = (j >= n && j < cols) ? mpq_class(0) : mpq_class(-s);
  }
  run(cols);
  if (T[m][cols] != 0) throw std::runtime_error("exact_simplex_max: infeasible");
  // Drive zero-level artificials out where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (T[i][j] != 0) { pivot(i, j); break; }
  }

  // Phase 2 objective row: -c plus basis adjustment.
  for (std::size_t j = 0; j <= cols; ++j) T[m][j] = (j < n) ? mpq_class(-c[j]) : mpq_class(0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t bj = basis[i];
    if (bj >= n || T[m][bj] == 0) continue;
    const mpq_class f = T[m][bj];
    for (std::size_t j = 0; j <= cols; ++j) T[m][j] -= f * T[i][j];
  }
  run(n);

  ExactLpResult out;
  out.x.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) out.x[basis[i]] = T[i][cols];
  out.objective = 0;
  for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
  out.pivots = pivots;
  return out;
}

// Exact optimal gap E_{q1}|t| - E_{q0}|t| for symmetric priors on the grid
// {-1 + 2i/(grid-1)} with even moments 2..2K matched, tau = 1.
inline mpq_class exact_prior_gap(int K, int grid_size) {
  const long g1 = grid_size - 1;
  std::vector<long> s;  // nonnegative grid points times (grid-1)
  for (long i = 0; i < grid_size; ++i) {
    const long v = 2 * i - g1;
    if (v >= 0) s.push_back(v);
  }
  const std::size_t half = s.size();
  const std::size_t n = 2 * half;
  const std::size_t m = static_cast<std::size_t>(K) + 2;
  std::vector<std::vector<mpq_class>> A(m, std::vector<mpq_class>(n, 0));
  std::vector<mpq_class> b(m, 0), c(n, 0);
  b[0] = 1;
  b[1] = 1;
  for (std::size_t p = 0; p < half; ++p) {
    A[0][p] = 1;
    A[1][half + p] = 1;
    mpz_class power = 1;
    const mpz_class sq = mpz_class(s[p]) * s[p];
    for (int l = 1; l <= K; ++l) {
      power *= sq;
      A[1 + l][p] = power;
      A[1 + l][half + p] = -power;
    }
    const mpq_class t(s[p], g1);
    c[p] = t;
    c[half + p] = -t;
  }
  for (auto& row : A)
    for (auto& v : row) v.canonicalize();
  for (auto& v : c) v.canonicalize();
  return exact_simplex_max(A, b, c).objective;
}

}  // namespace ipmlab::oracle
