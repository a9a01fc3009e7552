#include "ipmlab/besov_ipm.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipmlab {
namespace {

void require_same_shape(const WaveletCoeffs& u, const WaveletCoeffs& v, const char* who) {
  if (!u.same_shape(v))
    throw std::domain_error(std::string(who) + ": coefficient trees differ in dim or max_level");
}

void require_index(double p, const char* name) {
  if (!(p >= 1.0)) throw std::domain_error(std::string(name) + " must lie in [1, inf]");
}

double lp_norm(std::span<const double> x, double p) {
  if (p == kInf) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  // Scale by the max to avoid overflow for large p.
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

// Aggregates per-level terms in l_q.
class LqAccumulator {
 public:
  explicit LqAccumulator(double q) : q_(q) {}
  void add(double term) {
    if (q_ == kInf)
      acc_ = std::max(acc_, term);
    else if (term > 0.0)
      acc_ += q_ == 1.0 ? term : std::pow(term, q_);
  }
  double result() const {
    if (q_ == kInf || q_ == 1.0) return acc_;
    return std::pow(acc_, 1.0 / q_);
  }

 private:
  double q_;
  double acc_ = 0.0;
};

}  // namespace

double conjugate_index(double p) {
  require_index(p, "p");
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

void SmoothnessParams::validate() const {
  if (!(beta >= 0.0)) throw std::domain_error("beta must be nonnegative");
  if (!(gamma >= 0.0)) throw std::domain_error("gamma must be nonnegative");
  require_index(p, "p");
  require_index(q, "q");
  if (!(M > 0.0)) throw std::domain_error("M must be positive");
}

double ipm_level_weight(int dim, int level, double gamma) {
  return std::pow(2.0, -static_cast<double>(dim) * level * (gamma / dim + 0.5));
}

double besov_norm(const WaveletCoeffs& c, double beta, double p, double q) {
  require_index(p, "p");
  require_index(q, "q");
  const double inv_p = p == kInf ? 0.0 : 1.0 / p;
  LqAccumulator acc(q);
  acc.add(std::abs(c.scaling()));
  for (int j = 0; j < c.max_level(); ++j) {
    const double w = std::pow(2.0, j * beta) *
                     std::pow(2.0, static_cast<double>(c.dim()) * j * (0.5 - inv_p));
    acc.add(w * lp_norm(c.level_span(j), p));
  }
  return acc.result();
}

double ipm_closed_form(const WaveletCoeffs& u, const WaveletCoeffs& v, double gamma) {
  require_same_shape(u, v, "ipm_closed_form");
  double total = std::abs(u.scaling() - v.scaling());
  for (int j = 0; j < u.max_level(); ++j) {
    const auto a = u.level_span(j);
    const auto b = v.level_span(j);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    total += ipm_level_weight(u.dim(), j, gamma) * s;
  }
  return total;
}

double ipm_dual(const WaveletCoeffs& u, const WaveletCoeffs& v, double gamma, double p,
                double q) {
  require_same_shape(u, v, "ipm_dual");
  const double ps = conjugate_index(p);
  const double qs = conjugate_index(q);
  const double inv_p = p == kInf ? 0.0 : 1.0 / p;
  const int d = u.dim();
  LqAccumulator acc(qs);
  acc.add(std::abs(u.scaling() - v.scaling()));
  std::vector<double> diff;
  for (int j = 0; j < u.max_level(); ++j) {
    const auto a = u.level_span(j);
    const auto b = v.level_span(j);
    diff.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    const double w = std::pow(2.0, -static_cast<double>(d) * j * (gamma / d + 0.5 - inv_p));
    acc.add(w * lp_norm(diff, ps));
  }
  return acc.result();
}

WaveletCoeffs dual_witness(const WaveletCoeffs& u, const WaveletCoeffs& v, double gamma) {
  require_same_shape(u, v, "dual_witness");
  WaveletCoeffs f(u.dim(), u.max_level());
  f.set_scaling(u.scaling() >= v.scaling() ? 1.0 : -1.0);
  for (int j = 0; j < u.max_level(); ++j) {
    const double w = ipm_level_weight(u.dim(), j, gamma);
    const auto a = u.level_span(j);
    const auto b = v.level_span(j);
    auto out = f.level_span(j);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] >= b[i] ? w : -w;
  }
  return f;
}

double pairing(const WaveletCoeffs& f, const WaveletCoeffs& u, const WaveletCoeffs& v) {
  require_same_shape(f, u, "pairing");
  require_same_shape(u, v, "pairing");
  double total = f.scaling() * (u.scaling() - v.scaling());
  const auto fd = f.detail();
  const auto ud = u.detail();
  const auto vd = v.detail();
  for (std::size_t i = 0; i < fd.size(); ++i) total += fd[i] * (ud[i] - vd[i]);
  return total;
}

double exact_w1_1d(const DyadicFunction& u, const DyadicFunction& v) {
  if (u.dim() != 1 || v.dim() != 1) throw std::domain_error("exact_w1_1d: requires dim = 1");
  if (u.level() != v.level()) throw std::domain_error("exact_w1_1d: levels differ");
  const double h = std::ldexp(1.0, -u.level());
  const auto a = u.values();
  const auto b = v.values();
  double total = 0.0;
  double left = 0.0;  // CDF difference at the left edge of the cell
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double right = left + (a[i] - b[i]) * h;
    const double al = std::abs(left), ar = std::abs(right);
    if ((left >= 0.0) == (right >= 0.0) || al == 0.0 || ar == 0.0)
      total += 0.5 * h * (al + ar);
    else  // linear segment crosses zero: two triangles
      total += 0.5 * h * (al * al + ar * ar) / (al + ar);
    left = right;
  }
  return total;
}

}  // namespace ipmlab
