// ipmlab command line: prior construction, lower-bound certificates and
// Monte Carlo rate sweeps.
//
// Exit codes: 0 ok, 2 usage or precondition, 3 LP solver failure,
// 4 experiment failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipmlab/harness.hpp"
#include "ipmlab/io.hpp"
#include "ipmlab/lecam.hpp"
#include "ipmlab/moment_priors.hpp"
#include "ipmlab/plot.hpp"
#include "ipmlab/simplex.hpp"

namespace {

using namespace ipmlab;

enum Exit { kOk = 0, kUsage = 2, kSolver = 3, kRuntime = 4 };

// Precondition failures detected after parsing; mapped to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw std::runtime_error("failed writing '" + path + "'");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

std::string with_suffix(const std::string& path, const std::string& tag) {
  std::filesystem::path p(path);
  const std::string stem = p.stem().string() + "-" + tag + p.extension().string();
  return (p.parent_path() / stem).string();
}

struct PriorsArgs {
  int K = 0;
  double tau = 1.0;
  int grid = kDefaultPriorGrid;
  std::string out;
};

int run_priors(const PriorsArgs& a) {
  if (a.K < 1) throw UsageError("--K must be >= 1");
  if (!(a.tau > 0.0)) throw UsageError("--tau must be > 0");
  if (a.grid < 4 * a.K + 4)
    throw UsageError("--grid must be >= 4K + 4 = " + std::to_string(4 * a.K + 4));
  const PriorPair pair = construct_prior_pair(a.K, a.tau, a.grid);
  write_file(a.out, to_json(pair).dump(2) + "\n");
  std::cout << "gap " << format_double(pair.gap) << "\nkappa " << format_double(pair.kappa)
            << "\n";
  return kOk;
}

struct CertificateArgs {
  std::optional<double> n;
  std::string n_grid;
  double beta = 0, gamma = 0;
  int d = 1;
  double c = 2.0, tau = 1.0;
  int grid = kDefaultPriorGrid;
  std::string out, json_out;
  int threads = 0;
};

int run_certificate(const CertificateArgs& a) {
  if (a.d < 1) throw UsageError("--d must be >= 1");
  if (!(a.beta >= 0.0) || !(a.gamma >= 0.0)) throw UsageError("--beta and --gamma must be >= 0");
  if (!(a.c > 0.0) || !(a.tau > 0.0)) throw UsageError("--c and --tau must be > 0");
  if (a.n) {
    if (!(*a.n >= 16.0)) throw UsageError("--n must be >= 16");
    const int K = choose_K(*a.n, a.c);
    if (a.grid < 4 * K + 4)
      throw UsageError("--grid must be >= 4K + 4 = " + std::to_string(4 * K + 4));
    if (!(a.tau * a.tau < *a.n)) throw UsageError("--tau must satisfy tau^2 < n");
    const auto cert = lower_bound_certificate(*a.n, a.beta, a.gamma, a.d, a.c, a.tau, a.grid);
    emit(a.out, to_json(cert).dump(2) + "\n");
    return kOk;
  }
  CertificateConfig cfg;
  cfg.d = a.d;
  cfg.beta = a.beta;
  cfg.gamma = a.gamma;
  cfg.c = a.c;
  cfg.tau = a.tau;
  cfg.prior_grid = a.grid;
  cfg.threads = a.threads;
  try {
    cfg.n_grid = parse_n_grid(a.n_grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (std::size_t n : cfg.n_grid) {
    if (n < 16) throw UsageError("every n in --n-grid must be >= 16");
    const int K = choose_K(static_cast<double>(n), a.c);
    if (a.grid < 4 * K + 4)
      throw UsageError("--grid must be >= 4K + 4 = " + std::to_string(4 * K + 4));
  }
  const auto certs = certificate_sweep(cfg);
  std::ostringstream csv;
  write_certificate_csv(csv, certs);
  emit(a.out, csv.str());
  if (!a.json_out.empty()) {
    Json arr = Json::array();
    for (const auto& c : certs) arr.push_back(to_json(c));
    write_file(a.json_out, arr.dump(2) + "\n");
  }
  return kOk;
}

struct RateArgs {
  std::vector<std::string> targets{"boundary"};
  double beta = 1.0, gamma = 0.5;
  int d = 1;
  std::string n_grid = "256:16384:x2";
  int reps = 50;
  std::uint64_t seed = 1;
  std::string out, json_out, svg;
  double amplitude = 0.25, radius = 1.0, c = 2.0, tau = 1.0;
  int grid = kDefaultPriorGrid;
  int lmax = 0;
  int threads = 0;
};

int run_rate(const RateArgs& a) {
  std::vector<RateConfig> configs;
  for (const std::string& t : a.targets) {
    RateConfig cfg;
    try {
      cfg.family = parse_family(t);
      cfg.n_grid = parse_n_grid(a.n_grid);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    cfg.d = a.d;
    cfg.beta = a.beta;
    cfg.gamma = a.gamma;
    cfg.reps = a.reps;
    cfg.master_seed = a.seed;
    cfg.threads = a.threads;
    cfg.boundary_amplitude = a.amplitude;
    cfg.radius = a.radius;
    cfg.c = a.c;
    cfg.tau = a.tau;
    cfg.prior_grid = a.grid;
    cfg.empirical_level = a.lmax;
    try {
      cfg.validate();
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    configs.push_back(cfg);
  }

  std::vector<RateReport> reports;
  Json slopes = Json::object();
  for (const RateConfig& cfg : configs) {
    RateReport r;
    try {
      r = rate_sweep(cfg);
    } catch (const SolverError&) {
      throw;
    } catch (const std::exception& e) {
      std::cerr << "error: " << family_name(cfg.family) << " sweep failed: " << e.what() << "\n";
      return kRuntime;
    }
    std::ostringstream csv;
    write_rate_csv(csv, r);
    emit(configs.size() == 1 ? a.out : with_suffix(a.out, family_name(cfg.family)), csv.str());
    slopes[family_name(cfg.family)] = slope_summary(r);
    reports.push_back(std::move(r));
  }
  const Json summary = configs.size() == 1 ? slopes.begin().value() : slopes;
  std::cerr << summary.dump() << "\n";
  if (!a.json_out.empty()) write_file(a.json_out, summary.dump(2) + "\n");
  if (!a.svg.empty()) write_file(a.svg, render_rate_svg(reports));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ipmlab: Besov IPM estimation rates and minimax lower-bound certificates"};
  app.require_subcommand(1);

  PriorsArgs pa;
  auto* priors = app.add_subcommand("priors", "construct the moment-matched prior pair");
  priors->add_option("--K", pa.K, "moments matched up to order 2K")->required();
  priors->add_option("--tau", pa.tau, "support radius")->capture_default_str();
  priors->add_option("--grid", pa.grid, "LP grid size on [-tau, tau]")->capture_default_str();
  priors->add_option("--out", pa.out, "PriorPair JSON path")->required();

  CertificateArgs ca;
  auto* cert = app.add_subcommand("certificate", "finite-n Le Cam lower-bound certificate");
  auto* n_opt = cert->add_option("--n", ca.n, "single sample size");
  auto* grid_opt = cert->add_option("--n-grid", ca.n_grid, "start:stop:xfactor");
  n_opt->excludes(grid_opt);
  cert->add_option("--beta", ca.beta, "measure smoothness")->required();
  cert->add_option("--gamma", ca.gamma, "metric smoothness")->required();
  cert->add_option("--d", ca.d, "dimension")->required();
  cert->add_option("--c", ca.c, "constant in K = (c/2) ln n / lnln n")->capture_default_str();
  cert->add_option("--tau", ca.tau, "prior support radius")->capture_default_str();
  cert->add_option("--grid", ca.grid, "prior LP grid size")->capture_default_str();
  cert->add_option("--out", ca.out, "output path (JSON for --n, CSV for --n-grid); stdout if absent");
  cert->add_option("--json", ca.json_out, "also write the sweep as a JSON array");
  cert->add_option("--threads", ca.threads, "worker threads (0: IPMLAB_THREADS or all cores)");

  RateArgs ra;
  auto* rate = app.add_subcommand("rate-sweep", "Monte Carlo error-versus-n sweep");
  rate->add_option("--target", ra.targets, "null, boundary, hard or dudley (repeatable)")
      ->capture_default_str();
  rate->add_option("--beta", ra.beta)->capture_default_str();
  rate->add_option("--gamma", ra.gamma)->capture_default_str();
  rate->add_option("--d", ra.d)->capture_default_str();
  rate->add_option("--n-grid", ra.n_grid, "start:stop:xfactor")->capture_default_str();
  rate->add_option("--reps", ra.reps)->capture_default_str();
  rate->add_option("--seed", ra.seed, "master seed")->capture_default_str();
  rate->add_option("--out", ra.out, "CSV path (suffixed per target when several)")->required();
  rate->add_option("--json", ra.json_out, "slope summary JSON path");
  rate->add_option("--svg", ra.svg, "log-log chart path");
  rate->add_option("--amplitude", ra.amplitude, "boundary family M")->capture_default_str();
  rate->add_option("--radius", ra.radius, "Besov radius for hard instances")->capture_default_str();
  rate->add_option("--c", ra.c)->capture_default_str();
  rate->add_option("--tau", ra.tau)->capture_default_str();
  rate->add_option("--grid", ra.grid, "prior LP grid size")->capture_default_str();
  rate->add_option("--lmax", ra.lmax, "Dudley resolution (0: ceil(log2 n / d) + 3)")
      ->capture_default_str();
  rate->add_option("--threads", ra.threads)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*priors) return run_priors(pa);
    if (*cert) {
      if (!ca.n && ca.n_grid.empty()) throw UsageError("one of --n or --n-grid is required");
      return run_certificate(ca);
    }
    if (*rate) return run_rate(ra);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
