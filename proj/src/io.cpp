#include "ipmlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ipmlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const DyadicFunction& f) {
  return Json{{"dim", f.dim()},
              {"level", f.level()},
              {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

DyadicFunction dyadic_function_from_json(const Json& j) {
  return DyadicFunction(j.at("dim").get<int>(), j.at("level").get<int>(),
                        j.at("values").get<std::vector<double>>());
}

Json to_json(const WaveletCoeffs& c) {
  return Json{{"dim", c.dim()},
              {"max_level", c.max_level()},
              {"scaling", c.scaling()},
              {"detail", std::vector<double>(c.detail().begin(), c.detail().end())}};
}

WaveletCoeffs wavelet_coeffs_from_json(const Json& j) {
  return WaveletCoeffs(j.at("dim").get<int>(), j.at("max_level").get<int>(),
                       j.at("scaling").get<double>(), j.at("detail").get<std::vector<double>>());
}

Json to_json(const DiscretePrior& p) {
  return Json{{"tau", p.tau()}, {"support", p.support()}, {"weights", p.weights()}};
}

DiscretePrior discrete_prior_from_json(const Json& j) {
  return DiscretePrior(j.at("tau").get<double>(), j.at("support").get<std::vector<double>>(),
                       j.at("weights").get<std::vector<double>>());
}

Json to_json(const PriorPair& p) {
  return Json{{"tau", p.tau()},   {"K", p.K},          {"gap", p.gap},
              {"kappa", p.kappa}, {"q0", to_json(p.q0)}, {"q1", to_json(p.q1)}};
}

PriorPair prior_pair_from_json(const Json& j) {
  PriorPair p{discrete_prior_from_json(j.at("q0")), discrete_prior_from_json(j.at("q1")),
              j.at("K").get<int>(), j.at("gap").get<double>(), j.at("kappa").get<double>()};
  if (p.q0.tau() != p.q1.tau()) throw std::invalid_argument("PriorPair JSON: q0 and q1 tau differ");
  return p;
}

Json to_json(const HardInstance& h) {
  return Json{{"dim", h.dim}, {"J", h.J},  {"beta", h.beta},  {"gamma", h.gamma},
              {"n", h.n},     {"M", h.M},  {"amplitude", h.amplitude()}, {"theta", h.theta}};
}

HardInstance hard_instance_from_json(const Json& j) {
  HardInstance h;
  h.dim = j.at("dim").get<int>();
  h.J = j.at("J").get<int>();
  h.beta = j.at("beta").get<double>();
  h.gamma = j.at("gamma").get<double>();
  h.n = j.at("n").get<double>();
  h.M = j.value("M", 1.0);
  h.theta = j.at("theta").get<std::vector<double>>();
  h.validate();
  return h;
}

Json to_json(const LowerBoundCertificate& c) {
  return Json{{"n", c.n},
              {"d", c.d},
              {"beta", c.beta},
              {"gamma", c.gamma},
              {"c", c.c},
              {"J", c.J},
              {"K", c.K},
              {"tau", c.tau},
              {"grid_size", c.grid_size},
              {"gap", c.gap},
              {"separation", c.separation},
              {"tv_bound", c.tv_bound},
              {"tv_envelope", c.tv_envelope},
              {"delta0", c.delta0},
              {"delta1", c.delta1},
              {"value", c.value},
              {"positive", c.positive()},
              {"normalized_ratio", normalized_ratio(c)}};
}

Json slope_summary(const RateReport& r) {
  return Json{{"slope", r.fit.slope},
              {"slope_stderr", r.fit.slope_stderr},
              {"theoretical_exponent", r.theoretical_exponent}};
}

void write_points_csv(std::ostream& os, const PointSet& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto p = pts.point(i);
    for (std::size_t a = 0; a < p.size(); ++a) os << (a ? "," : "") << format_double(p[a]);
    os << '\n';
  }
}

PointSet read_points_csv(std::istream& is, int d) {
  PointSet pts(d);
  std::string line;
  std::vector<double> x;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    x.clear();
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0)
        throw std::invalid_argument("points CSV row " + std::to_string(row) + ": bad number '" +
                                    cell + "'");
      x.push_back(v);
    }
    if (x.size() != static_cast<std::size_t>(d))
      throw std::invalid_argument("points CSV row " + std::to_string(row) + ": expected " +
                                  std::to_string(d) + " columns");
    pts.push_back(x);
  }
  return pts;
}

void write_rate_csv(std::ostream& os, const RateReport& r) {
  os << "n,mean_error,stderr,reps\n";
  for (const RateRow& row : r.rows)
    os << row.n << ',' << format_double(row.mean_error) << ',' << format_double(row.stderr_) << ','
       << row.reps << '\n';
}

void write_certificate_csv(std::ostream& os, std::span<const LowerBoundCertificate> certs) {
  os << "n,separation,tv_bound,delta,value,normalized_ratio\n";
  for (const auto& c : certs)
    os << format_double(c.n) << ',' << format_double(c.separation) << ','
       << format_double(c.tv_bound) << ',' << format_double(c.delta()) << ','
       << format_double(c.value) << ',' << format_double(normalized_ratio(c)) << '\n';
}

}  // namespace ipmlab
