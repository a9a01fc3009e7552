#include "ipmlab/hard_instances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ipmlab/besov_ipm.hpp"

namespace ipmlab {
namespace {

constexpr double kSlack = 1e-12;

std::size_t per_axis(std::size_t cell, int dim, int level, int axis) {
  const std::size_t shift = static_cast<std::size_t>(level) * (dim - 1 - axis);
  return (cell >> shift) & ((std::size_t{1} << level) - 1);
}

// (2^{dJ})^{-(beta/d + 1/2)} M
double budget(int dim, int J, double beta, double M) {
  return M * std::pow(2.0, -static_cast<double>(dim) * J * (beta / dim + 0.5));
}

}  // namespace

double HardInstance::amplitude() const { return 1.0 / std::sqrt(n); }

void HardInstance::validate() const {
  if (dim < 1) throw std::domain_error("HardInstance: dim must be positive");
  if (J < 0) throw std::domain_error("HardInstance: J must be nonnegative");
  if (!(n >= 1.0)) throw std::domain_error("HardInstance: n must be >= 1");
  if (!(beta >= 0.0) || !(gamma >= 0.0))
    throw std::domain_error("HardInstance: beta and gamma must be nonnegative");
  if (!(M > 0.0)) throw std::domain_error("HardInstance: M must be positive");
  const std::size_t cells = std::size_t{1} << (dim * J);
  if (theta.size() != cells)
    throw std::domain_error("HardInstance: theta must have 2^{dJ} = " + std::to_string(cells) +
                            " entries, got " + std::to_string(theta.size()));
  const double a = amplitude();
  const double peak = std::pow(2.0, 0.5 * dim * J);
  const double cap = budget(dim, J, beta, M);
  for (std::size_t k = 0; k < cells; ++k) {
    const double t = std::abs(theta[k]);
    if (!std::isfinite(theta[k]))
      throw std::domain_error("HardInstance: theta[" + std::to_string(k) + "] is not finite");
    if (a * t * peak > 1.0 + kSlack)
      throw std::domain_error("HardInstance: density negative on the support of k = " +
                              std::to_string(k) + " (a|theta_k| 2^{Jd/2} = " +
                              std::to_string(a * t * peak) + " > 1)");
    if (a * t > cap + kSlack)
      throw std::domain_error("HardInstance: smoothness budget exceeded at k = " +
                              std::to_string(k) + " (a|theta_k| = " + std::to_string(a * t) +
                              " > " + std::to_string(cap) + ")");
  }
}

DyadicDensity build_density(const HardInstance& h) {
  h.validate();
  const int d = h.dim;
  const int L = h.J + 1;
  const std::size_t cells = std::size_t{1} << (d * L);
  const double scale = h.amplitude() * std::pow(2.0, 0.5 * d * h.J);
  std::vector<double> values(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t parent = 0;
    bool negative = false;
    for (int a = 0; a < d; ++a) {
      const std::size_t ca = per_axis(c, d, L, a);
      parent |= (ca >> 1) << (static_cast<std::size_t>(h.J) * (d - 1 - a));
      if (ca & 1U) negative = !negative;
    }
    const double bump = scale * h.theta[parent];
    values[c] = negative ? 1.0 - bump : 1.0 + bump;
  }
  return DyadicDensity(d, L, std::move(values));
}

double true_ipm(const HardInstance& h) {
  h.validate();
  double s = 0.0;
  for (double t : h.theta) s += std::abs(t);
  return ipm_level_weight(h.dim, h.J, h.gamma) * h.amplitude() * s;
}

double max_admissible_tau(int dim, int J, double beta, double n, double M) {
  const double sqrt_n = std::sqrt(n);
  const double by_budget = budget(dim, J, beta, M) * sqrt_n;
  const double by_validity = sqrt_n * std::pow(2.0, -0.5 * dim * J);
  return std::min(by_budget, by_validity);
}

std::vector<double> draw_theta(const DiscretePrior& p, std::size_t count, Rng& rng) {
  const auto& s = p.support();
  const auto& w = p.weights();
  std::vector<double> cdf(w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) cdf[i] = (acc += w[i]);
  std::vector<double> out(count);
  for (auto& v : out) {
    const double u = uniform01(rng) * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t i = std::min<std::size_t>(it - cdf.begin(), s.size() - 1);
    v = s[i];
  }
  return out;
}

CellSampler::CellSampler(const DyadicFunction& density)
    : dim_(density.dim()), level_(density.level()), cdf_(density.cell_count()) {
  double acc = 0.0;
  const auto vals = density.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] < 0.0) throw std::domain_error("CellSampler: negative density value");
    cdf_[i] = (acc += vals[i]);
  }
  if (!(acc > 0.0)) throw std::domain_error("CellSampler: density has no mass");
}

PointSet CellSampler::draw(std::size_t n, Rng& rng) const {
  PointSet pts(dim_);
  pts.reserve(n);
  const double total = cdf_.back();
  const double width = std::ldexp(1.0, -level_);
  std::vector<double> x(dim_);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform01(rng) * total;
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const std::size_t cell = std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
    for (int a = 0; a < dim_; ++a) {
      const double lo = static_cast<double>(per_axis(cell, dim_, level_, a)) * width;
      x[a] = std::min(lo + uniform01(rng) * width, std::nextafter(lo + width, lo));
    }
    pts.push_back(x);
  }
  return pts;
}

PointSet sample(const DyadicFunction& density, std::size_t n, Rng& rng) {
  return CellSampler(density).draw(n, rng);
}

}  // namespace ipmlab
