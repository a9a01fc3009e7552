#include "ipmlab/moment_priors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "ipmlab/simplex.hpp"

namespace ipmlab {
namespace {

constexpr double kPruneBelow = 1e-12;

class Neumaier {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Nonnegative half of the unit symmetric grid, ascending.
std::vector<double> folded_grid(int grid_size) {
  const long g1 = grid_size - 1;
  std::vector<double> t;
  for (long i = 0; i < grid_size; ++i) {
    const long v = 2 * i - g1;
    if (v >= 0) t.push_back(static_cast<double>(v) / static_cast<double>(g1));
  }
  return t;
}

// Even Chebyshev polynomials T_2, T_4, ..., T_2K at t.
void even_chebyshev(double t, int K, std::vector<double>& out) {
  out.assign(K, 0.0);
  double prev = 1.0, cur = t;
  for (int deg = 2; deg <= 2 * K; ++deg) {
    const double next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
    if (deg % 2 == 0) out[deg / 2 - 1] = cur;
  }
}

// Re-solves B x = b for the optimal basis in extended precision with one
// round of iterative refinement. Returns false when B is singular or the
// refined point leaves the nonnegative orthant.
bool polish_basis(const LpProblem& lp, const std::vector<std::size_t>& basis,
                  std::vector<double>& x) {
  const std::size_t m = lp.rows;
  for (std::size_t j : basis)
    if (j >= lp.cols) return false;
  using Real = long double;
  std::vector<Real> B(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) B[i * m + k] = lp.a(i, basis[k]);

  auto solve = [&](std::vector<Real> rhs, std::vector<Real>& out) {
    std::vector<Real> M = B;
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < m; ++r)
        if (std::abs(M[r * m + col]) > std::abs(M[piv * m + col])) piv = r;
      if (std::abs(M[piv * m + col]) < 1e-300L) return false;
      if (piv != col) {
        for (std::size_t k = 0; k < m; ++k) std::swap(M[piv * m + k], M[col * m + k]);
        std::swap(rhs[piv], rhs[col]);
      }
      for (std::size_t r = col + 1; r < m; ++r) {
        const Real f = M[r * m + col] / M[col * m + col];
        if (f == 0) continue;
        for (std::size_t k = col; k < m; ++k) M[r * m + k] -= f * M[col * m + k];
        rhs[r] -= f * rhs[col];
      }
    }
    out.assign(m, 0);
    for (std::size_t i = m; i-- > 0;) {
      Real s = rhs[i];
      for (std::size_t k = i + 1; k < m; ++k) s -= M[i * m + k] * out[k];
      out[i] = s / M[i * m + i];
    }
    return true;
  };

  std::vector<Real> rhs(lp.b.begin(), lp.b.end()), xb;
  if (!solve(rhs, xb)) return false;
  std::vector<Real> resid(m), corr;
  for (std::size_t i = 0; i < m; ++i) {
    Real s = rhs[i];
    for (std::size_t k = 0; k < m; ++k) s -= B[i * m + k] * xb[k];
    resid[i] = s;
  }
  if (solve(resid, corr))
    for (std::size_t k = 0; k < m; ++k) xb[k] += corr[k];

  for (Real v : xb)
    if (v < -1e-12L) return false;
  x.assign(lp.cols, 0.0);
  for (std::size_t k = 0; k < m; ++k) x[basis[k]] = std::max(0.0, static_cast<double>(xb[k]));
  return true;
}

// Unfolds weights on |t| into a symmetric prior on [-tau, tau].
DiscretePrior unfold(double tau, const std::vector<double>& grid, std::vector<double> w) {
  Neumaier total;
  for (double& v : w) {
    if (v < kPruneBelow) v = 0.0;
    total.add(v);
  }
  const double mass = total.value();
  if (!(mass > 0.0)) throw std::logic_error("prior LP returned a measure with no mass");
  std::vector<double> pos_s, pos_w;
  double at_zero = 0.0;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    if (w[p] == 0.0) continue;
    const double wp = w[p] / mass;
    if (grid[p] == 0.0) {
      at_zero = wp;
    } else {
      pos_s.push_back(grid[p] * tau);
      pos_w.push_back(0.5 * wp);
    }
  }
  std::vector<double> support, weights;
  for (std::size_t i = pos_s.size(); i-- > 0;) {
    support.push_back(-pos_s[i]);
    weights.push_back(pos_w[i]);
  }
  if (at_zero > 0.0) {
    support.push_back(0.0);
    weights.push_back(at_zero);
  }
  for (std::size_t i = 0; i < pos_s.size(); ++i) {
    support.push_back(pos_s[i]);
    weights.push_back(pos_w[i]);
  }
  return DiscretePrior(tau, std::move(support), std::move(weights));
}

}  // namespace

DiscretePrior::DiscretePrior(double tau, std::vector<double> support, std::vector<double> weights)
    : tau_(tau), support_(std::move(support)), weights_(std::move(weights)) {
  if (!(tau_ > 0.0)) throw std::domain_error("DiscretePrior: tau must be positive");
  if (support_.empty() || support_.size() != weights_.size())
    throw std::domain_error("DiscretePrior: support and weights must be nonempty, equal length");
  Neumaier total;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (std::abs(support_[i]) > tau_ * (1.0 + kTolerance))
      throw std::domain_error("DiscretePrior: support point outside [-tau, tau]");
    if (i > 0 && !(support_[i] > support_[i - 1]))
      throw std::domain_error("DiscretePrior: support must be strictly increasing");
    if (!(weights_[i] >= 0.0)) throw std::domain_error("DiscretePrior: negative weight");
    total.add(weights_[i]);
  }
  if (std::abs(total.value() - 1.0) > kTolerance)
    throw std::domain_error("DiscretePrior: weights sum to " + std::to_string(total.value()));
  const std::size_t n = support_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(support_[i] + support_[n - 1 - i]) > kTolerance ||
        std::abs(weights_[i] - weights_[n - 1 - i]) > kTolerance)
      throw std::domain_error("DiscretePrior: not symmetric under t -> -t");
  }
}

DiscretePrior DiscretePrior::dirac_zero(double tau) { return DiscretePrior(tau, {0.0}, {1.0}); }

DiscretePrior DiscretePrior::symmetric_pair(double tau, double a) {
  if (a == 0.0) return dirac_zero(tau);
  const double s = std::abs(a);
  return DiscretePrior(tau, {-s, s}, {0.5, 0.5});
}

double moment(const DiscretePrior& p, int l) {
  if (l < 0) throw std::domain_error("moment: order must be nonnegative");
  Neumaier acc;
  const auto& s = p.support();
  const auto& w = p.weights();
  for (std::size_t i = 0; i < s.size(); ++i) acc.add(w[i] * (l == 0 ? 1.0 : std::pow(s[i], l)));
  return acc.value();
}

double mean_abs(const DiscretePrior& p) {
  Neumaier acc;
  for (std::size_t i = 0; i < p.size(); ++i) acc.add(p.weights()[i] * std::abs(p.support()[i]));
  return acc.value();
}

double sd_abs(const DiscretePrior& p) {
  const double m = mean_abs(p);
  Neumaier acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double dev = std::abs(p.support()[i]) - m;
    acc.add(p.weights()[i] * dev * dev);
  }
  return std::sqrt(std::max(0.0, acc.value()));
}

int choose_K(double n, double c) {
  if (!(n >= 16.0)) throw std::domain_error("choose_K: requires n >= 16");
  if (!(c > 0.0)) throw std::domain_error("choose_K: c must be positive");
  const double ln = std::log(n);
  const double k = std::ceil(0.5 * c * ln / std::log(ln));
  return std::max(1, static_cast<int>(k));
}

PriorPair construct_prior_pair(int K, double tau, int grid_size, const PriorOptions& options) {
  if (K < 1) throw std::invalid_argument("construct_prior_pair: K must be positive");
  if (!(tau > 0.0)) throw std::invalid_argument("construct_prior_pair: tau must be positive");
  if (grid_size < 4 * K + 4)
    throw std::invalid_argument("construct_prior_pair: grid_size must be >= 4K + 4 (= " +
                                std::to_string(4 * K + 4) + ")");

  // Solve in unit coordinates; |t| and t^l are homogeneous so supports and
  // the gap scale by tau afterwards.
  const std::vector<double> grid = folded_grid(grid_size);
  const std::size_t half = grid.size();

  std::vector<std::size_t> order(2 * half);
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  if (options.column_shuffle_seed != 0) {
    std::mt19937_64 rng(options.column_shuffle_seed);
    for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);
  }

  // Column layout (before shuffling): [q1 weights on |t| | q0 weights on |t|].
  LpProblem lp;
  lp.rows = static_cast<std::size_t>(K) + 2;
  lp.cols = 2 * half;
  lp.A.assign(lp.rows * lp.cols, 0.0);
  lp.b.assign(lp.rows, 0.0);
  lp.c.assign(lp.cols, 0.0);
  lp.b[0] = 1.0;
  lp.b[1] = 1.0;
  std::vector<double> cheb;
  for (std::size_t col = 0; col < lp.cols; ++col) {
    const std::size_t orig = order[col];
    const bool is_q1 = orig < half;
    const std::size_t p = is_q1 ? orig : orig - half;
    const double sgn = is_q1 ? 1.0 : -1.0;
    lp.a(is_q1 ? 0 : 1, col) = 1.0;
    even_chebyshev(grid[p], K, cheb);
    for (int l = 0; l < K; ++l) lp.a(2 + l, col) = sgn * cheb[l];
    lp.c[col] = sgn * grid[p];
  }

  const LpSolution sol = simplex_maximize(lp);
  std::vector<double> x;
  if (!polish_basis(lp, sol.basis, x)) x = sol.x;

  std::vector<double> w1(half, 0.0), w0(half, 0.0);
  for (std::size_t col = 0; col < lp.cols; ++col) {
    const std::size_t orig = order[col];
    if (orig < half)
      w1[orig] = x[col];
    else
      w0[orig - half] = x[col];
  }

  PriorPair pair{unfold(tau, grid, std::move(w0)), unfold(tau, grid, std::move(w1)), K, 0.0, 0.0};
  pair.gap = std::max(0.0, mean_abs(pair.q1) - mean_abs(pair.q0));
  pair.kappa = pair.gap * K / (2.0 * tau);
  return pair;
}

PriorPair dilate(const PriorPair& pair, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("dilate: tau must be positive");
  const double r = tau / pair.tau();
  auto scaled = [&](const DiscretePrior& p) {
    std::vector<double> s(p.support());
    for (double& v : s) v *= r;
    return DiscretePrior(tau, std::move(s), p.weights());
  };
  PriorPair out{scaled(pair.q0), scaled(pair.q1), pair.K, 0.0, 0.0};
  out.gap = std::max(0.0, mean_abs(out.q1) - mean_abs(out.q0));
  out.kappa = out.gap * out.K / (2.0 * tau);
  return out;
}

}  // namespace ipmlab
