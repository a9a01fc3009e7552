#include "ipmlab/lecam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ipmlab/estimator.hpp"

namespace ipmlab {
namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

constexpr double kNegativeClamp = 1e-12;

Big cross_term(const DiscretePrior& pa, const DiscretePrior& pb, double n) {
  const Big bn(n);
  Big total = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    for (std::size_t j = 0; j < pb.size(); ++j) {
      const Big x = Big(pa.support()[i]) * Big(pb.support()[j]) / bn;
      if (x <= -1)
        throw std::domain_error("l2_cross: 1 + s s'/n <= 0 (requires tau^2 < n)");
      total += Big(pa.weights()[i]) * Big(pb.weights()[j]) * exp(bn * log1p(x));
    }
  }
  return total;
}

void require_tau_below_sqrt_n(const PriorPair& pair, double n) {
  if (!(n >= 1.0)) throw std::domain_error("n must be >= 1");
  if (!(pair.tau() * pair.tau() < n)) throw std::domain_error("requires tau^2 < n");
}

// log C(n, k) - k log n
double log_binom_over_power(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) - k * std::log(n);
}

}  // namespace

double l2_cross(const DiscretePrior& pa, const DiscretePrior& pb, double n) {
  if (!(n >= 1.0)) throw std::domain_error("l2_cross: n must be >= 1");
  return static_cast<double>(cross_term(pa, pb, n));
}

double l2_distance_sq(const PriorPair& pair, double n) {
  require_tau_below_sqrt_n(pair, n);
  const Big v = cross_term(pair.q1, pair.q1, n) + cross_term(pair.q0, pair.q0, n) -
                2 * cross_term(pair.q1, pair.q0, n);
  const double out = static_cast<double>(v);
  if (out < -kNegativeClamp)
    throw std::logic_error("l2_distance_sq: negative beyond cancellation noise: " +
                           std::to_string(out));
  return std::max(0.0, out);
}

std::vector<double> l2_series_terms(const PriorPair& pair, double n, int max_l) {
  std::vector<double> terms;
  const int last = std::min<int>(max_l, static_cast<int>(std::floor(n / 2.0)));
  for (int l = 1; l <= last; ++l) {
    const double diff = moment(pair.q1, 2 * l) - moment(pair.q0, 2 * l);
    if (diff == 0.0) {
      terms.push_back(0.0);
      continue;
    }
    terms.push_back(diff * diff * std::exp(log_binom_over_power(n, 2.0 * l)));
  }
  return terms;
}

double l2_distance_sq_series(const PriorPair& pair, double n) {
  require_tau_below_sqrt_n(pair, n);
  const int last = static_cast<int>(std::floor(n / 2.0));
  const double log_tau = std::log(pair.tau());
  double sum = 0.0, comp = 0.0;
  for (int l = 1; l <= last; ++l) {
    // |m1 - m0| <= tau^{2l} and C(n,2l)/n^{2l} <= 1/(2l)!: once this bound on
    // every remaining term is negligible, the tail is too (it decays
    // factorially).
    const double log_bound =
        std::log(4.0) + 4.0 * l * log_tau - std::lgamma(2.0 * l + 1.0);
    if (l > pair.K + 1 && 2.0 * l > pair.tau() * pair.tau() &&
        log_bound < std::log(std::max(sum * 1e-22, 1e-300)))
      break;
    const double diff = moment(pair.q1, 2 * l) - moment(pair.q0, 2 * l);
    if (diff == 0.0) continue;
    const double term = diff * diff * std::exp(log_binom_over_power(n, 2.0 * l));
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

TvBound tv_upper_bound(const PriorPair& pair, int J, int d, double n) {
  if (J < 0 || d < 1) throw std::domain_error("tv_upper_bound: invalid J or d");
  const double coords = std::pow(2.0, static_cast<double>(d) * J);
  TvBound out;
  out.bound = 0.5 * coords * std::sqrt(l2_distance_sq(pair, n));
  const double tau = pair.tau();
  const double log_env = 2.0 * pair.K * std::log(tau) - 0.5 * std::lgamma(2.0 * pair.K + 1.0) +
                         0.5 * std::pow(tau, 4);
  out.envelope = coords * std::exp(log_env);
  return out;
}

double rate_exponent(double beta, double gamma, int d) { return (beta + gamma) / (2.0 * beta + d); }

double separation(const PriorPair& pair, double n, double beta, double gamma, int d) {
  return std::pow(n, -rate_exponent(beta, gamma, d)) * pair.gap;
}

double concentration_delta(const DiscretePrior& p, int J, int d, double scale) {
  return scale * sd_abs(p) / std::sqrt(std::pow(2.0, static_cast<double>(d) * J));
}

LowerBoundCertificate certificate_from_pair(double n, double beta, double gamma, int d,
                                            const PriorPair& pair, double c) {
  LowerBoundCertificate cert;
  cert.n = n;
  cert.d = d;
  cert.beta = beta;
  cert.gamma = gamma;
  cert.c = c;
  cert.K = pair.K;
  cert.tau = pair.tau();
  cert.J = choose_truncation(n, beta, d);
  cert.gap = pair.gap;
  cert.separation = separation(pair, n, beta, gamma, d);
  const TvBound tv = tv_upper_bound(pair, cert.J, d, n);
  cert.tv_bound = tv.bound;
  cert.tv_envelope = tv.envelope;
  const double scale = std::pow(n, -rate_exponent(beta, gamma, d));
  cert.delta0 = concentration_delta(pair.q0, cert.J, d, scale);
  cert.delta1 = concentration_delta(pair.q1, cert.J, d, scale);
  cert.value = 0.25 * cert.separation * (1.0 - std::min(cert.tv_bound, 1.0)) -
               0.5 * (cert.delta0 + cert.delta1);
  return cert;
}

LowerBoundCertificate lower_bound_certificate(double n, double beta, double gamma, int d,
                                              double c, double tau, int grid_size) {
  const int K = choose_K(n, c);
  LowerBoundCertificate cert =
      certificate_from_pair(n, beta, gamma, d, construct_prior_pair(K, tau, grid_size), c);
  cert.grid_size = grid_size;
  return cert;
}

double normalized_ratio(const LowerBoundCertificate& cert) {
  const double ln = std::log(cert.n);
  const double rate = std::pow(cert.n, -rate_exponent(cert.beta, cert.gamma, cert.d));
  return cert.value / (rate * std::log(ln) / ln);
}

TelescopingResult telescoping_check(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("telescoping_check: length mismatch");
  if (a.size() < 2) throw std::invalid_argument("telescoping_check: need length >= 2");
  const std::size_t N = a.size();
  for (std::size_t i = 0; i < N; ++i)
    if (!(a[i] >= 0.0) || !(b[i] >= 0.0))
      throw std::invalid_argument("telescoping_check: entries must be nonnegative");

  double pa = 1.0, pb = 1.0;
  for (std::size_t i = 0; i < N; ++i) {
    pa *= a[i];
    pb *= b[i];
  }
  // suffix[i] = prod_{k>i} a_k
  std::vector<double> suffix(N, 1.0);
  for (std::size_t i = N - 1; i-- > 0;) suffix[i] = suffix[i + 1] * a[i + 1];
  double rhs = 0.0, prefix = 1.0;
  for (std::size_t i = 0; i < N; ++i) {
    rhs += std::abs(a[i] - b[i]) * prefix * suffix[i];
    prefix *= b[i];
  }
  TelescopingResult r;
  r.lhs = std::abs(pa - pb);
  r.rhs = rhs;
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-10) + 1e-300;
  return r;
}

}  // namespace ipmlab
