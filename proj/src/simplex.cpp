#include "ipmlab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ipmlab {
namespace {

class Tableau {
 public:
  Tableau(const LpProblem& lp, const SimplexOptions& opt)
      : m_(lp.rows), n_(lp.cols), width_(lp.cols + lp.rows + 1), opt_(opt),
        t_((lp.rows + 1) * width_, 0.0), basis_(lp.rows) {
    for (std::size_t i = 0; i < m_; ++i) {
      const double sgn = lp.b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sgn * lp.a(i, j);
      at(i, n_ + i) = 1.0;
      rhs(i) = sgn * lp.b[i];
      basis_[i] = n_ + i;
    }
  }

  LpSolution solve(const LpProblem& lp) {
    // Phase 1: minimize the artificial sum; the objective row stores reduced
    // costs of the minimization, entering columns have negative entries.
    for (std::size_t j = 0; j < width_; ++j) {
      if (j >= n_ && j < n_ + m_) continue;
      double s = 0.0;
      for (std::size_t i = 0; i < m_; ++i) s += at(i, j);
      at(m_, j) = -s;
    }
    iterate(n_ + m_);
    double scale = 1.0;
    for (std::size_t i = 0; i < m_; ++i) scale = std::max(scale, std::abs(lp.b[i]));
    if (-at(m_, width_ - 1) > opt_.feasibility_tol * scale)
      throw SolverError("simplex: problem is infeasible", iterations_);
    drive_out_artificials();

    for (std::size_t j = 0; j < width_; ++j) at(m_, j) = j < n_ ? -lp.c[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t bj = basis_[i];
      if (bj >= n_) continue;
      const double f = at(m_, bj);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(m_, j) -= f * at(i, j);
    }
    iterate(n_);

    LpSolution sol;
    sol.x.assign(n_, 0.0);
    sol.basis.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) {
        sol.x[basis_[i]] = std::max(0.0, rhs(i));
        sol.basis[i] = basis_[i];
      } else {
        sol.basis[i] = n_;
      }
    }
    for (std::size_t j = 0; j < n_; ++j) sol.objective += lp.c[j] * sol.x[j];
    sol.iterations = iterations_;
    return sol;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double& rhs(std::size_t i) { return at(i, width_ - 1); }

  void pivot(std::size_t r, std::size_t e) {
    const double p = at(r, e);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) /= p;
    at(r, e) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(r, j);
      at(i, e) = 0.0;
    }
    basis_[r] = e;
    ++iterations_;
  }

  // Dantzig pricing; switches to Bland's rule after a run of degenerate
  // pivots so cycling cannot persist.
  void iterate(std::size_t allowed) {
    std::size_t degenerate_run = 0;
    for (;;) {
      if (iterations_ >= opt_.max_iterations)
        throw SolverError("simplex: iteration limit reached", iterations_);
      const bool bland = degenerate_run > 50;
      std::size_t e = allowed;
      double best = -opt_.optimality_tol;
      for (std::size_t j = 0; j < allowed; ++j) {
        const double rc = at(m_, j);
        if (rc < best) {
          e = j;
          if (bland) break;
          best = rc;
        }
      }
      if (e == allowed) return;

      std::size_t r = m_;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, e);
        if (a <= opt_.pivot_tol) continue;
        const double q = std::max(0.0, rhs(i)) / a;
        if (q < ratio - 1e-14 || (q <= ratio + 1e-14 && r < m_ && basis_[i] < basis_[r])) {
          ratio = q;
          r = i;
        }
      }
      if (r == m_) throw SolverError("simplex: problem is unbounded", iterations_);
      degenerate_run = ratio <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(r, e);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::size_t best = n_;
      double mag = opt_.pivot_tol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(at(i, j)) > mag) {
          mag = std::abs(at(i, j));
          best = j;
        }
      }
      if (best < n_) pivot(i, best);
    }
  }

  std::size_t m_, n_, width_;
  SimplexOptions opt_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::size_t iterations_ = 0;
};

}  // namespace

LpSolution simplex_maximize(const LpProblem& lp, const SimplexOptions& options) {
  if (lp.A.size() != lp.rows * lp.cols || lp.b.size() != lp.rows || lp.c.size() != lp.cols)
    throw std::invalid_argument("simplex_maximize: inconsistent problem dimensions");
  Tableau t(lp, options);
  return t.solve(lp);
}

}  // namespace ipmlab
