#pragma once

// Symmetric discrete priors on [-tau, tau] with matched even moments up to
// order 2K and a maximal gap in E|t|, obtained from a linear program on a
// symmetric grid.

#include <cstdint>
#include <vector>

namespace ipmlab {

/// Symmetric probability measure with finitely many atoms in [-tau, tau].
class DiscretePrior {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Validates: support strictly increasing inside [-tau, tau], weights
  /// nonnegative with unit sum, and symmetry under t -> -t.
  DiscretePrior(double tau, std::vector<double> support, std::vector<double> weights);

  /// Point mass at 0.
  static DiscretePrior dirac_zero(double tau);
  /// (delta_{-a} + delta_a) / 2.
  static DiscretePrior symmetric_pair(double tau, double a);

  double tau() const { return tau_; }
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }

 private:
  double tau_;
  std::vector<double> support_;
  std::vector<double> weights_;
};

struct PriorPair {
  DiscretePrior q0;
  DiscretePrior q1;
  int K = 0;
  double gap = 0.0;    // E_{q1}|t| - E_{q0}|t|
  double kappa = 0.0;  // gap * K / (2 tau)

  double tau() const { return q0.tau(); }
};

struct PriorOptions {
  /// Nonzero: present LP columns to the solver in a shuffled order, which
  /// changes the pivot path (used to check optimality is path independent).
  std::uint64_t column_shuffle_seed = 0;
};

inline constexpr int kDefaultPriorGrid = 2001;

/// Solves the moment-matching LP on the grid {-tau + 2 tau i / (grid - 1)}.
/// Throws std::invalid_argument when grid_size < 4K + 4 or tau <= 0 and
/// SolverError when the LP method fails.
PriorPair construct_prior_pair(int K, double tau, int grid_size = kDefaultPriorGrid,
                               const PriorOptions& options = {});

/// Same weights on supports scaled by tau / pair.tau(); gap and kappa are
/// recomputed. Exact counterpart of constructing at the new tau.
PriorPair dilate(const PriorPair& pair, double tau);

/// sum_i w_i s_i^l with compensated summation.
double moment(const DiscretePrior& p, int l);

/// sum_i w_i |s_i|.
double mean_abs(const DiscretePrior& p);

/// Standard deviation of |t| under p.
double sd_abs(const DiscretePrior& p);

/// ceil((c/2) ln n / ln ln n), at least 1. Throws std::domain_error for n < 16
/// or c <= 0.
int choose_K(double n, double c);

}  // namespace ipmlab
