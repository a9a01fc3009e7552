#include "ipmlab/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ipmlab/besov_ipm.hpp"

namespace ipmlab {

int choose_truncation(double n, double beta, int d) {
  if (!(n >= 1.0)) throw std::domain_error("choose_truncation: n must be >= 1");
  if (d < 1) throw std::domain_error("choose_truncation: d must be positive");
  if (!(beta >= 0.0)) throw std::domain_error("choose_truncation: beta must be nonnegative");
  if (std::isinf(beta)) return 0;
  const double x = std::log2(n) / (d + 2.0 * beta);
  // Nearest integer, ties toward zero; the epsilon absorbs log2 rounding.
  const double j = std::ceil(x - 0.5 - 1e-9);
  return std::max(0, static_cast<int>(j));
}

SmoothedMeasure empirical_coeffs(const PointSet& points, int J, int d) {
  if (points.dim() != d) throw std::domain_error("empirical_coeffs: point dimension mismatch");
  if (points.empty()) throw std::domain_error("empirical_coeffs: no sample points");
  if (J < 0) throw std::domain_error("empirical_coeffs: J must be nonnegative");
  const std::size_t n = points.size();
  for (double v : points.coords())
    if (!(v >= 0.0 && v <= 1.0))
      throw std::domain_error("empirical_coeffs: point outside [0,1]^d");

  // Every h_{jok} with j < J is constant on level-J cells, so the empirical
  // averages are exactly the coefficients of the level-J histogram density.
  const std::size_t cells = std::size_t{1} << (d * J);
  std::vector<double> hist(cells, 0.0);
  for (std::size_t i = 0; i < n; ++i) hist[cell_of(points.point(i), J)] += 1.0;
  const double scale = static_cast<double>(cells) / static_cast<double>(n);
  for (double& v : hist) v *= scale;
  WaveletCoeffs c = analyze(DyadicFunction(d, J, std::move(hist)));
  c.set_scaling(1.0);
  return SmoothedMeasure{std::move(c), n, J};
}

double plugin_ipm(const PointSet& x, const PointSet& y, double beta, double gamma, int d) {
  if (x.empty() || y.empty()) throw std::domain_error("plugin_ipm: both samples must be nonempty");
  const double m = static_cast<double>(std::min(x.size(), y.size()));
  const int J = choose_truncation(m, beta, d);
  return ipm_closed_form(empirical_coeffs(x, J, d).coeffs, empirical_coeffs(y, J, d).coeffs,
                         gamma);
}

double empirical_measure_ipm(const PointSet& x, const PointSet& y, double gamma, int d,
                             int L_max) {
  if (L_max < 1) throw std::domain_error("empirical_measure_ipm: L_max must be >= 1");
  return ipm_closed_form(empirical_coeffs(x, L_max, d).coeffs,
                         empirical_coeffs(y, L_max, d).coeffs, gamma);
}

double empirical_measure_ipm(const WaveletCoeffs& reference, const PointSet& y, double gamma,
                             int L_max) {
  if (L_max < 1) throw std::domain_error("empirical_measure_ipm: L_max must be >= 1");
  const WaveletCoeffs ref = with_levels(reference, L_max);
  return ipm_closed_form(ref, empirical_coeffs(y, L_max, reference.dim()).coeffs, gamma);
}

int default_empirical_level(std::size_t n, int d) {
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 1)));
  return static_cast<int>(std::ceil(lg / d - 1e-9)) + 3;
}

}  // namespace ipmlab
