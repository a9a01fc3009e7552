#pragma once

// Besov norms of Haar coefficient trees and the closed-form IPM induced by
// the Besov unit ball B^{gamma,inf}_inf(1).
//
// Every quantity here is "at resolution L": levels the coefficient tree does
// not represent contribute zero. The scaling coefficient enters as an extra
// level with weight 1; for two probability densities it cancels.

#include <limits>

#include "ipmlab/haar_mra.hpp"

namespace ipmlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Hoelder conjugate of an integrability index in [1, inf].
double conjugate_index(double p);

struct SmoothnessParams {
  double beta = 0.0;   // measure smoothness
  double gamma = 0.0;  // metric smoothness
  double p = kInf;
  double q = kInf;
  double M = 1.0;      // Besov radius of the measure class

  double p_star() const { return conjugate_index(p); }
  double q_star() const { return conjugate_index(q); }
  /// Throws std::domain_error on negative smoothness, p or q below 1, or M <= 0.
  void validate() const;
};

/// ( sum_j [2^{j beta} (2^{jd})^{1/2-1/p} ||theta_j||_p]^q )^{1/q}, with
/// |scaling| as an extra weight-1 term. q = inf takes the max.
double besov_norm(const WaveletCoeffs& c, double beta, double p, double q);

/// d_{F_gamma}(u, v) = |u0 - v0| + sum_{j,o,k} (2^{-dj})^{gamma/d + 1/2} |u - v|.
double ipm_closed_form(const WaveletCoeffs& u, const WaveletCoeffs& v, double gamma);

/// General (p, q) dual expression
/// ( sum_j [(2^{-dj})^{gamma/d + 1/2 - 1/p} ||u_j - v_j||_{p*}]^{q*} )^{1/q*}.
/// Coincides with ipm_closed_form at p = q = inf.
double ipm_dual(const WaveletCoeffs& u, const WaveletCoeffs& v, double gamma, double p, double q);

/// Extremal element of the B^{gamma,inf}_inf unit ball attaining the supremum
/// in ipm_closed_form: f = sign(u - v) * weight, ties resolved to +.
WaveletCoeffs dual_witness(const WaveletCoeffs& u, const WaveletCoeffs& v, double gamma);

/// sum over all coefficients (scaling included) of f * (u - v), i.e.
/// int f d(mu) - int f d(nu) for piecewise-constant inputs.
double pairing(const WaveletCoeffs& f, const WaveletCoeffs& u, const WaveletCoeffs& v);

/// Exact Wasserstein-1 distance between two densities on [0,1]:
/// the integral of |F_u - F_v| for piecewise-linear CDFs.
double exact_w1_1d(const DyadicFunction& u, const DyadicFunction& v);

/// Level weight (2^{-dj})^{gamma/d + 1/2} of the closed-form IPM.
double ipm_level_weight(int dim, int level, double gamma);

}  // namespace ipmlab
