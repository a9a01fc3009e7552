#pragma once

// Monte Carlo rate sweeps, log-log slope fits, certificate sweeps and
// deterministic per-replicate seeding.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ipmlab/haar_mra.hpp"
#include "ipmlab/lecam.hpp"
#include "ipmlab/random.hpp"

namespace ipmlab {

enum class TargetFamily { Null, Boundary, Hard, Dudley };

TargetFamily parse_family(std::string_view name);
std::string family_name(TargetFamily f);

/// Geometric grid start, start*factor, ... up to and including stop.
std::vector<std::size_t> geometric_grid(std::size_t start, std::size_t stop, std::size_t factor);

/// Parses "start:stop:xfactor" (the x is optional), e.g. "256:16384:x2".
std::vector<std::size_t> parse_n_grid(std::string_view spec);

/// Default grid 2^8 .. 2^14.
std::vector<std::size_t> default_n_grid();

struct RateConfig {
  TargetFamily family = TargetFamily::Boundary;
  int d = 1;
  double beta = 1.0;
  double gamma = 0.5;
  std::vector<std::size_t> n_grid = default_n_grid();
  int reps = 50;
  std::uint64_t master_seed = 1;
  int threads = 0;  // 0: IPMLAB_THREADS, then hardware concurrency

  double boundary_amplitude = 0.25;  // M in +-M 2^{-j(beta+d/2)}
  double radius = 1.0;               // Besov radius for hard instances
  double c = 2.0;
  double tau = 1.0;
  int prior_grid = kDefaultPriorGrid;
  int empirical_level = 0;  // Dudley L_max; 0 means default_empirical_level(n, d)

  /// Throws std::invalid_argument with a description of the first problem.
  void validate() const;
};

struct RateRow {
  std::size_t n = 0;
  double mean_error = 0.0;
  double stderr_ = 0.0;
  int reps = 0;
  double tau = 0.0;  // prior scale actually used (hard family only)
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

struct RateReport {
  RateConfig config;
  std::vector<RateRow> rows;
  SlopeFit fit;
  double theoretical_exponent = 0.0;
};

/// Runs every (n, replicate) pair, possibly in parallel; the report depends
/// only on the config.
RateReport rate_sweep(const RateConfig& config);

/// Per-replicate absolute errors for one n (the raw data behind a RateRow).
std::vector<double> replicate_errors(const RateConfig& config, std::size_t n);

/// -(beta+gamma)/(2beta+d), or -1/d for the Dudley family.
double theoretical_exponent(const RateConfig& config);

/// OLS of ln(error) on ln(n). Needs >= 3 points; nonpositive errors throw
/// std::domain_error.
SlopeFit fit_slope(std::span<const std::size_t> n, std::span<const double> mean_error);

/// Prior scale for hard instances at n: min(tau, max_admissible_tau) so the
/// instance stays inside the smoothness budget after J is rounded.
double hard_family_tau(const RateConfig& config, std::size_t n);

/// Detail coefficients +-M 2^{-j(beta+d/2)} on levels j < L, signs alternating
/// in k; throws std::domain_error if the synthesized density goes negative.
WaveletCoeffs boundary_coeffs(int d, int L, double beta, double M);

/// Resolution of the boundary target for a given n-grid.
int boundary_level(const RateConfig& config);

struct CertificateConfig {
  int d = 1;
  double beta = 1.0;
  double gamma = 0.5;
  double c = 2.0;
  double tau = 1.0;
  int prior_grid = kDefaultPriorGrid;
  std::vector<std::size_t> n_grid;
  int threads = 0;
};

/// One certificate per n, in grid order. Prior pairs are shared across n
/// with equal K.
std::vector<LowerBoundCertificate> certificate_sweep(const CertificateConfig& config);

/// Independent stream per (master, n, replicate).
Rng seed_for(std::uint64_t master_seed, std::uint64_t n, std::uint64_t replicate);

/// Worker count: requested if > 0, else IPMLAB_THREADS if > 0, else hardware.
int resolve_threads(int requested);

/// Calls fn(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace ipmlab
