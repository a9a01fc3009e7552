#pragma once

// Plug-in IPM estimation from samples via wavelet-truncated (smoothed)
// empirical measures.

#include "ipmlab/haar_mra.hpp"
#include "ipmlab/points.hpp"

namespace ipmlab {

/// Smoothed empirical measure: empirical Haar coefficients of levels [0, J).
/// Generally a signed function; never synthesized into a density.
struct SmoothedMeasure {
  WaveletCoeffs coeffs;
  std::size_t sample_count = 0;
  int truncation = 0;
};

/// J = round(log2(n) / (d + 2 beta)), nearest with ties down, at least 0.
/// beta = inf gives 0.
int choose_truncation(double n, double beta, int d);

/// Empirical coefficients (1/n) sum_i h_{jok}(Y_i) for j < J, scaling 1.
/// Throws std::domain_error for points outside [0,1]^d or empty input.
SmoothedMeasure empirical_coeffs(const PointSet& points, int J, int d);

/// d_{F_gamma} between smoothed empirical measures, truncated at
/// choose_truncation(min(m, n), beta, d).
double plugin_ipm(const PointSet& x, const PointSet& y, double beta, double gamma, int d);

/// Un-smoothed baseline: plug-in with truncation at L_max (2^{d L_max} >> n).
double empirical_measure_ipm(const PointSet& x, const PointSet& y, double gamma, int d,
                             int L_max);

/// One-sample baseline against a known measure given by its coefficients;
/// levels the reference lacks count as zero.
double empirical_measure_ipm(const WaveletCoeffs& reference, const PointSet& y, double gamma,
                             int L_max);

/// Default un-smoothed resolution ceil(log2(n)/d) + 3.
int default_empirical_level(std::size_t n, int d);

}  // namespace ipmlab
