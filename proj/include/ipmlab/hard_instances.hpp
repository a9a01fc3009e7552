#pragma once

// Composite-hypothesis densities nu_theta = 1 + n^{-1/2} sum_k theta_k h_{Jk}
// built on the all-mother orientation at level J, with mu = Unif([0,1]^d).

#include <vector>

#include "ipmlab/haar_mra.hpp"
#include "ipmlab/moment_priors.hpp"
#include "ipmlab/points.hpp"
#include "ipmlab/random.hpp"

namespace ipmlab {

struct HardInstance {
  int dim = 1;
  int J = 0;
  double beta = 0.0;
  double gamma = 0.0;
  double n = 1.0;  // sample size; amplitude is n^{-1/2}
  double M = 1.0;  // Besov radius the perturbation must respect
  std::vector<double> theta;  // 2^{dJ} entries

  double amplitude() const;
  /// Orientation carrying the perturbation: all axes mother, 2^d - 1.
  int orientation() const { return (1 << dim) - 1; }

  /// Throws std::domain_error naming the first failing k when the density
  /// would go negative or the smoothness budget is exceeded.
  void validate() const;
};

/// Density of nu_theta at resolution J + 1.
DyadicDensity build_density(const HardInstance& h);

/// Exact d_{F_gamma}(Unif, nu_theta) = (2^{-dJ})^{gamma/d + 1/2} n^{-1/2} sum_k |theta_k|.
double true_ipm(const HardInstance& h);

/// Largest tau for which theta in [-tau, tau]^{2^{dJ}} keeps the instance
/// valid and inside the smoothness budget.
double max_admissible_tau(int dim, int J, double beta, double n, double M);

/// count i.i.d. draws from p by inverse CDF.
std::vector<double> draw_theta(const DiscretePrior& p, std::size_t count, Rng& rng);

/// n i.i.d. points from a piecewise-constant density: categorical cell by
/// mass, then uniform inside the cell.
PointSet sample(const DyadicFunction& density, std::size_t n, Rng& rng);

/// Cumulative cell masses for repeated sampling from one density.
class CellSampler {
 public:
  explicit CellSampler(const DyadicFunction& density);
  PointSet draw(std::size_t n, Rng& rng) const;

 private:
  int dim_;
  int level_;
  std::vector<double> cdf_;
};

}  // namespace ipmlab
