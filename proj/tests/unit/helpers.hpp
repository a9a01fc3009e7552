#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ipmlab/haar_mra.hpp"

namespace testutil {

inline std::vector<double> random_values(std::size_t count, std::mt19937_64& rng, double lo = -1.0,
                                         double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(count);
  for (auto& x : v) x = u(rng);
  return v;
}

inline ipmlab::DyadicFunction random_function(int d, int L, std::mt19937_64& rng) {
  return ipmlab::DyadicFunction(d, L, random_values(std::size_t{1} << (d * L), rng));
}

// Positive values normalised to mean 1.
inline ipmlab::DyadicDensity random_density(int d, int L, std::mt19937_64& rng) {
  auto v = random_values(std::size_t{1} << (d * L), rng, 0.05, 2.0);
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  for (double& x : v) x /= m;
  return ipmlab::DyadicDensity(d, L, std::move(v));
}

inline ipmlab::WaveletCoeffs random_coeffs(int d, int L, std::mt19937_64& rng, double scaling = 1.0) {
  return ipmlab::WaveletCoeffs(d, L, scaling,
                               random_values(ipmlab::WaveletCoeffs::detail_size(d, L), rng));
}

// Cell centre of cell index c on the level-L grid in [0,1]^d.
inline std::vector<double> cell_center(int d, int L, std::size_t c) {
  std::vector<double> x(d);
  const std::size_t mask = (std::size_t{1} << L) - 1;
  for (int a = 0; a < d; ++a) {
    const std::size_t k = (c >> (static_cast<std::size_t>(L) * (d - 1 - a))) & mask;
    x[a] = (static_cast<double>(k) + 0.5) * std::ldexp(1.0, -L);
  }
  return x;
}

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace testutil
