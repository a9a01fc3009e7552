#pragma once

// Finite-n evaluation of the two-composite-hypothesis lower bound:
// l2 cross terms of the n-fold mixtures, the per-coordinate TV bound, the
// IPM separation of the two priors, concentration slack, and the resulting
// risk certificate.

#include <span>
#include <vector>

#include "ipmlab/moment_priors.hpp"

namespace ipmlab {

/// sum_{i,j} w_i w'_j (1 + s_i s'_j / n)^n, evaluated in 50-digit arithmetic.
/// Throws std::domain_error if some 1 + s s' / n <= 0.
double l2_cross(const DiscretePrior& pa, const DiscretePrior& pb, double n);

/// l2_cross(q1,q1) + l2_cross(q0,q0) - 2 l2_cross(q1,q0), combined before
/// rounding so the moment cancellation is resolved. Requires tau^2 < n.
double l2_distance_sq(const PriorPair& pair, double n);

/// Same quantity through the moment series
/// sum_{l=1}^{floor(n/2)} (m1(2l) - m0(2l))^2 C(n,2l) / n^{2l}, with binomials
/// from log-factorials. Terms are summed until they are negligible.
double l2_distance_sq_series(const PriorPair& pair, double n);

/// Individual series terms for l = 1..max_l (index 0 holds l = 1).
std::vector<double> l2_series_terms(const PriorPair& pair, double n, int max_l);

struct TvBound {
  double bound = 0.0;     // (1/2) 2^{dJ} sqrt(l2_distance_sq)
  double envelope = 0.0;  // 2^{dJ} tau^{2K} / sqrt((2K)!) exp(tau^4 / 2)
};

TvBound tv_upper_bound(const PriorPair& pair, int J, int d, double n);

/// Rate exponent (beta + gamma) / (2 beta + d).
double rate_exponent(double beta, double gamma, int d);

/// n^{-(beta+gamma)/(2beta+d)} * gap.
double separation(const PriorPair& pair, double n, double beta, double gamma, int d);

/// scale * sd(|theta|) / sqrt(2^{dJ}).
double concentration_delta(const DiscretePrior& p, int J, int d, double scale);

struct LowerBoundCertificate {
  double n = 0.0;
  int d = 1;
  double beta = 0.0;
  double gamma = 0.0;
  double c = 2.0;
  int J = 0;
  int K = 0;
  double tau = 1.0;
  int grid_size = 0;
  double gap = 0.0;
  double separation = 0.0;
  double tv_bound = 0.0;
  double tv_envelope = 0.0;
  double delta0 = 0.0;
  double delta1 = 0.0;
  /// (separation / 4) (1 - min(tv_bound, 1)) - (delta0 + delta1) / 2
  double value = 0.0;

  bool positive() const { return value > 0.0; }
  double delta() const { return 0.5 * (delta0 + delta1); }
};

/// Full chain with K = choose_K(n, c) and J = choose_truncation(n, beta, d).
/// A nonpositive value is returned, not thrown; check positive().
LowerBoundCertificate lower_bound_certificate(double n, double beta, double gamma, int d,
                                              double c = 2.0, double tau = 1.0,
                                              int grid_size = kDefaultPriorGrid);

/// Same chain for an already constructed prior pair (K taken from the pair).
LowerBoundCertificate certificate_from_pair(double n, double beta, double gamma, int d,
                                            const PriorPair& pair, double c = 2.0);

/// value / (n^{-(beta+gamma)/(2beta+d)} lnln n / ln n).
double normalized_ratio(const LowerBoundCertificate& cert);

struct TelescopingResult {
  bool holds = false;
  double lhs = 0.0;  // |prod a - prod b|
  double rhs = 0.0;  // sum_i |a_i - b_i| prod_{k<i} b_k prod_{k>i} a_k
};

/// Checks |prod a - prod b| <= sum_i |a_i - b_i| prod_{k<i} b_k prod_{k>i} a_k
/// up to relative 1e-10. Throws std::invalid_argument on length mismatch,
/// length < 2, or negative entries.
TelescopingResult telescoping_check(std::span<const double> a, std::span<const double> b);

}  // namespace ipmlab
