#include "ipmlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

#include "ipmlab/besov_ipm.hpp"
#include "ipmlab/estimator.hpp"
#include "ipmlab/hard_instances.hpp"

namespace ipmlab {
namespace {

std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end || s.empty())
    throw std::invalid_argument("n-grid: bad " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

// Per-n state shared read-only by the replicates of that n.
struct Setup {
  std::size_t n = 0;
  int J = 0;
  int L_max = 0;
  std::optional<PriorPair> pair;
  double tau = 0.0;
};

struct Shared {
  const RateConfig* cfg = nullptr;
  std::optional<CellSampler> uniform;
  std::optional<CellSampler> boundary;
  double boundary_truth = 0.0;
  WaveletCoeffs uniform_ref{1, 0};
};

Shared make_shared(const RateConfig& cfg) {
  Shared s;
  s.cfg = &cfg;
  s.uniform.emplace(DyadicDensity::uniform(cfg.d, 0));
  if (cfg.family == TargetFamily::Boundary) {
    const int L = boundary_level(cfg);
    const WaveletCoeffs target = boundary_coeffs(cfg.d, L, cfg.beta, cfg.boundary_amplitude);
    WaveletCoeffs unif(cfg.d, L);
    unif.set_scaling(1.0);
    s.boundary_truth = ipm_closed_form(unif, target, cfg.gamma);
    s.boundary.emplace(synthesize(target));
  }
  if (cfg.family == TargetFamily::Dudley) {
    s.uniform_ref = WaveletCoeffs(cfg.d, 0);
    s.uniform_ref.set_scaling(1.0);
  }
  return s;
}

Setup make_setup(const RateConfig& cfg, std::size_t n, std::map<int, PriorPair>& cache) {
  Setup st;
  st.n = n;
  const double nd = static_cast<double>(n);
  st.J = choose_truncation(nd, cfg.beta, cfg.d);
  st.L_max = cfg.empirical_level > 0 ? cfg.empirical_level : default_empirical_level(n, cfg.d);
  if (cfg.family == TargetFamily::Hard) {
    const int K = choose_K(nd, cfg.c);
    auto it = cache.find(K);
    if (it == cache.end()) it = cache.emplace(K, construct_prior_pair(K, 1.0, cfg.prior_grid)).first;
    st.tau = hard_family_tau(cfg, n);
    st.pair = dilate(it->second, st.tau);
  }
  return st;
}

double replicate_error(const Shared& sh, const Setup& st, int rep) {
  const RateConfig& cfg = *sh.cfg;
  Rng rng = seed_for(cfg.master_seed, st.n, static_cast<std::uint64_t>(rep));
  switch (cfg.family) {
    case TargetFamily::Null: {
      const PointSet x = sh.uniform->draw(st.n, rng);
      const PointSet y = sh.uniform->draw(st.n, rng);
      return plugin_ipm(x, y, cfg.beta, cfg.gamma, cfg.d);
    }
    case TargetFamily::Boundary: {
      const PointSet x = sh.uniform->draw(st.n, rng);
      const PointSet y = sh.boundary->draw(st.n, rng);
      return std::abs(plugin_ipm(x, y, cfg.beta, cfg.gamma, cfg.d) - sh.boundary_truth);
    }
    case TargetFamily::Hard: {
      // Even replicates draw theta from q0, odd ones from q1.
      const DiscretePrior& prior = (rep % 2 == 0) ? st.pair->q0 : st.pair->q1;
      HardInstance h;
      h.dim = cfg.d;
      h.J = st.J;
      h.beta = cfg.beta;
      h.gamma = cfg.gamma;
      h.n = static_cast<double>(st.n);
      h.M = cfg.radius;
      h.theta = draw_theta(prior, std::size_t{1} << (cfg.d * st.J), rng);
      const double truth = true_ipm(h);
      const PointSet x = sh.uniform->draw(st.n, rng);
      const PointSet y = sample(build_density(h), st.n, rng);
      return std::abs(plugin_ipm(x, y, cfg.beta, cfg.gamma, cfg.d) - truth);
    }
    case TargetFamily::Dudley: {
      const PointSet y = sh.uniform->draw(st.n, rng);
      return empirical_measure_ipm(sh.uniform_ref, y, cfg.gamma, st.L_max);
    }
  }
  throw std::logic_error("unknown target family");
}

RateRow summarize(std::size_t n, std::span<const double> errs, double tau) {
  RateRow row;
  row.n = n;
  row.reps = static_cast<int>(errs.size());
  row.tau = tau;
  double mean = 0.0;
  for (double e : errs) mean += e;
  mean /= static_cast<double>(errs.size());
  double ss = 0.0;
  for (double e : errs) ss += (e - mean) * (e - mean);
  const double m = static_cast<double>(errs.size());
  row.mean_error = mean;
  row.stderr_ = errs.size() > 1 ? std::sqrt(ss / (m - 1.0) / m) : 0.0;
  return row;
}

}  // namespace

TargetFamily parse_family(std::string_view name) {
  if (name == "null") return TargetFamily::Null;
  if (name == "boundary") return TargetFamily::Boundary;
  if (name == "hard") return TargetFamily::Hard;
  if (name == "dudley") return TargetFamily::Dudley;
  throw std::invalid_argument("unknown target family '" + std::string(name) +
                              "' (expected null, boundary, hard or dudley)");
}

std::string family_name(TargetFamily f) {
  switch (f) {
    case TargetFamily::Null: return "null";
    case TargetFamily::Boundary: return "boundary";
    case TargetFamily::Hard: return "hard";
    case TargetFamily::Dudley: return "dudley";
  }
  return "?";
}

std::vector<std::size_t> geometric_grid(std::size_t start, std::size_t stop, std::size_t factor) {
  if (start < 1) throw std::invalid_argument("n-grid: start must be >= 1");
  if (factor < 2) throw std::invalid_argument("n-grid: factor must be >= 2");
  if (stop < start) throw std::invalid_argument("n-grid: stop must be >= start");
  std::vector<std::size_t> out;
  for (std::size_t n = start; n <= stop; n *= factor) {
    out.push_back(n);
    if (n > stop / factor) break;
  }
  return out;
}

std::vector<std::size_t> parse_n_grid(std::string_view spec) {
  const auto a = spec.find(':');
  const auto b = a == std::string_view::npos ? a : spec.find(':', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos)
    throw std::invalid_argument("n-grid must look like start:stop:xfactor, got '" +
                                std::string(spec) + "'");
  std::string_view f = spec.substr(b + 1);
  if (!f.empty() && (f.front() == 'x' || f.front() == 'X')) f.remove_prefix(1);
  return geometric_grid(parse_size(spec.substr(0, a), "start"),
                        parse_size(spec.substr(a + 1, b - a - 1), "stop"), parse_size(f, "factor"));
}

std::vector<std::size_t> default_n_grid() { return geometric_grid(256, 16384, 2); }

void RateConfig::validate() const {
  if (d < 1 || d > 3) throw std::invalid_argument("rate config: d must be in 1..3");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("rate config: beta must be finite and >= 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("rate config: gamma must be finite and >= 0");
  if (n_grid.size() < 4) throw std::invalid_argument("rate config: n-grid needs >= 4 points");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 16) throw std::invalid_argument("rate config: every n must be >= 16");
    if (i > 0 && n_grid[i] <= n_grid[i - 1])
      throw std::invalid_argument("rate config: n-grid must be strictly increasing");
  }
  if (reps < 10) throw std::invalid_argument("rate config: reps must be >= 10");
  if (!(boundary_amplitude > 0.0)) throw std::invalid_argument("rate config: amplitude must be > 0");
  if (!(radius > 0.0)) throw std::invalid_argument("rate config: radius must be > 0");
  if (!(c > 0.0)) throw std::invalid_argument("rate config: c must be > 0");
  if (!(tau > 0.0)) throw std::invalid_argument("rate config: tau must be > 0");
  if (empirical_level < 0) throw std::invalid_argument("rate config: empirical level must be >= 0");
  if (family == TargetFamily::Hard) {
    const int K = choose_K(static_cast<double>(n_grid.back()), c);
    if (prior_grid < 4 * K + 4)
      throw std::invalid_argument("rate config: prior grid must be >= 4K + 4 = " +
                                  std::to_string(4 * K + 4));
  }
  const int levels = family == TargetFamily::Boundary ? boundary_level(*this)
                     : family == TargetFamily::Dudley
                         ? (empirical_level > 0 ? empirical_level
                                                : default_empirical_level(n_grid.back(), d))
                         : 0;
  if (d * levels > 30)
    throw std::invalid_argument("rate config: grid resolution 2^{d L} too large (d L = " +
                                std::to_string(d * levels) + ")");
}

double theoretical_exponent(const RateConfig& config) {
  if (config.family == TargetFamily::Dudley) return -1.0 / config.d;
  return -rate_exponent(config.beta, config.gamma, config.d);
}

int boundary_level(const RateConfig& config) {
  const double top = static_cast<double>(config.n_grid.empty() ? 1 : config.n_grid.back());
  return static_cast<int>(std::ceil(std::log2(top) / config.d - 1e-9)) + 2;
}

WaveletCoeffs boundary_coeffs(int d, int L, double beta, double M) {
  WaveletCoeffs c(d, L);
  c.set_scaling(1.0);
  for (int j = 0; j < L; ++j) {
    const double mag = M * std::pow(2.0, -j * (beta + 0.5 * d));
    for (int o = 1; o <= c.orientations(); ++o)
      for (std::size_t k = 0; k < c.cells_at(j); ++k) c.at(j, o, k) = (k % 2 == 0) ? mag : -mag;
  }
  const DyadicFunction f = synthesize(c);
  for (double v : f.values())
    if (v < 0.0)
      throw std::domain_error("boundary target is negative somewhere; lower the amplitude M");
  return c;
}

double hard_family_tau(const RateConfig& config, std::size_t n) {
  const double nd = static_cast<double>(n);
  const int J = choose_truncation(nd, config.beta, config.d);
  return std::min(config.tau, max_admissible_tau(config.d, J, config.beta, nd, config.radius));
}

std::vector<double> replicate_errors(const RateConfig& config, std::size_t n) {
  config.validate();
  const Shared sh = make_shared(config);
  std::map<int, PriorPair> cache;
  const Setup st = make_setup(config, n, cache);
  std::vector<double> errs(static_cast<std::size_t>(config.reps));
  parallel_for(errs.size(), config.threads,
               [&](std::size_t r) { errs[r] = replicate_error(sh, st, static_cast<int>(r)); });
  return errs;
}

RateReport rate_sweep(const RateConfig& config) {
  config.validate();
  const Shared sh = make_shared(config);
  std::map<int, PriorPair> cache;
  std::vector<Setup> setups;
  for (std::size_t n : config.n_grid) setups.push_back(make_setup(config, n, cache));

  const std::size_t reps = static_cast<std::size_t>(config.reps);
  std::vector<double> errs(setups.size() * reps);
  // Largest n first so the slow tail does not serialize the end of the run.
  parallel_for(errs.size(), config.threads, [&](std::size_t i) {
    const std::size_t idx = errs.size() - 1 - i;
    errs[idx] = replicate_error(sh, setups[idx / reps], static_cast<int>(idx % reps));
  });

  RateReport report;
  report.config = config;
  report.theoretical_exponent = theoretical_exponent(config);
  std::vector<double> means;
  for (std::size_t s = 0; s < setups.size(); ++s) {
    report.rows.push_back(summarize(setups[s].n,
                                    std::span<const double>(errs).subspan(s * reps, reps),
                                    setups[s].tau));
    means.push_back(report.rows.back().mean_error);
  }
  report.fit = fit_slope(config.n_grid, means);
  return report;
}

SlopeFit fit_slope(std::span<const std::size_t> n, std::span<const double> mean_error) {
  if (n.size() != mean_error.size()) throw std::invalid_argument("fit_slope: length mismatch");
  if (n.size() < 3) throw std::invalid_argument("fit_slope: need >= 3 points");
  const std::size_t m = n.size();
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (n[i] == 0) throw std::domain_error("fit_slope: n must be positive");
    if (!(mean_error[i] > 0.0))
      throw std::domain_error("fit_slope: nonpositive error at n = " + std::to_string(n[i]) +
                              " (exact-zero errors cannot be fitted on a log scale)");
    x[i] = std::log(static_cast<double>(n[i]));
    y[i] = std::log(mean_error[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::domain_error("fit_slope: n values must not all be equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ssr += r * r;
  }
  fit.slope_stderr = m > 2 ? std::sqrt(ssr / static_cast<double>(m - 2) / sxx) : 0.0;
  return fit;
}

std::vector<LowerBoundCertificate> certificate_sweep(const CertificateConfig& config) {
  if (config.n_grid.empty()) throw std::invalid_argument("certificate sweep: empty n-grid");
  std::map<int, std::optional<PriorPair>> pairs;
  for (std::size_t n : config.n_grid) pairs[choose_K(static_cast<double>(n), config.c)];
  std::vector<int> Ks;
  for (const auto& [K, _] : pairs) Ks.push_back(K);
  std::vector<std::optional<PriorPair>> built(Ks.size());
  parallel_for(Ks.size(), config.threads, [&](std::size_t i) {
    built[i] = construct_prior_pair(Ks[i], config.tau, config.prior_grid);
  });
  for (std::size_t i = 0; i < Ks.size(); ++i) pairs[Ks[i]] = std::move(built[i]);

  std::vector<LowerBoundCertificate> out(config.n_grid.size());
  parallel_for(out.size(), config.threads, [&](std::size_t i) {
    const double n = static_cast<double>(config.n_grid[i]);
    out[i] = certificate_from_pair(n, config.beta, config.gamma, config.d,
                                   *pairs.at(choose_K(n, config.c)), config.c);
    out[i].grid_size = config.prior_grid;
  });
  return out;
}

Rng seed_for(std::uint64_t master_seed, std::uint64_t n, std::uint64_t replicate) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(master_seed), hi(master_seed), lo(n), hi(n), lo(replicate), hi(replicate)};
  return Rng(seq);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("IPMLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(resolve_threads(threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i; !failed.load() && (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ipmlab
