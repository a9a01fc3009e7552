#pragma once

// Dense two-phase tableau simplex for small equality-form LPs:
//   maximize c.x  subject to  A x = b,  x >= 0,  b >= 0.
// Sized for a handful of rows and a few thousand columns.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipmlab {

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t iterations)
      : std::runtime_error(what + " (after " + std::to_string(iterations) + " iterations)"),
        iterations_(iterations) {}
  std::size_t iterations() const { return iterations_; }

 private:
  std::size_t iterations_;
};

struct LpProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> A;  // row-major rows x cols
  std::vector<double> b;
  std::vector<double> c;

  double& a(std::size_t i, std::size_t j) { return A[i * cols + j]; }
  double a(std::size_t i, std::size_t j) const { return A[i * cols + j]; }
};

struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
  /// Structural column basic in each row; equals cols for a row whose
  /// artificial variable stayed basic (redundant constraint).
  std::vector<std::size_t> basis;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  std::size_t max_iterations = 50000;
  double feasibility_tol = 1e-10;
  double optimality_tol = 1e-12;
  double pivot_tol = 1e-11;
};

/// Throws SolverError when infeasible, unbounded, or out of iterations.
LpSolution simplex_maximize(const LpProblem& lp, const SimplexOptions& options = {});

}  // namespace ipmlab
