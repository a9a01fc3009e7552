#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ipmlab/besov_ipm.hpp"

using namespace ipmlab;

namespace {

// Random f with besov_norm(f, gamma, inf, inf) <= 1: each coefficient at most
// the level weight in magnitude, scaling within [-1, 1].
WaveletCoeffs random_unit_ball(int d, int L, double gamma, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  WaveletCoeffs f(d, L);
  f.set_scaling(u(rng));
  for (int j = 0; j < L; ++j) {
    const double w = ipm_level_weight(d, j, gamma);
    for (double& v : f.level_span(j)) v = w * u(rng);
  }
  return f;
}

}  // namespace

TEST_SUITE("besov_ipm") {

TEST_CASE("conjugate indices") {
  CHECK(conjugate_index(1.0) == kInf);
  CHECK(conjugate_index(kInf) == 1.0);
  CHECK(conjugate_index(2.0) == 2.0);
  CHECK(conjugate_index(4.0) == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS_AS(conjugate_index(0.5), std::domain_error);
  SmoothnessParams sp{0.5, 0.5, 3.0, kInf, 1.0};
  CHECK(1.0 / sp.p + 1.0 / sp.p_star() == doctest::Approx(1.0));
  CHECK_NOTHROW(sp.validate());
  sp.M = 0.0;
  CHECK_THROWS(sp.validate());
}

TEST_CASE("besov norm") {
  CHECK(besov_norm(WaveletCoeffs(1, 3), 0.5, kInf, kInf) == 0.0);
  WaveletCoeffs one(1, 2);
  one.at(0, 1, 0) = -0.7;
  CHECK(besov_norm(one, 0.9, kInf, kInf) == doctest::Approx(0.7));

  // p = q = 2, beta = 0: plain l2 norm of the detail coefficients.
  std::mt19937_64 rng(21);
  auto c = testutil::random_coeffs(2, 4, rng, 0.0);
  double direct = 0.0;
  for (double v : c.detail()) direct += v * v;
  CHECK(besov_norm(c, 0.0, 2.0, 2.0) == doctest::Approx(std::sqrt(direct)).epsilon(1e-13));

  // p = q = inf: max_j 2^{j(beta + d/2)} max_k |c|
  double mx = std::abs(c.scaling());
  for (int j = 0; j < c.max_level(); ++j)
    for (double v : c.level_span(j)) mx = std::max(mx, std::pow(2.0, j * (0.3 + 1.0)) * std::abs(v));
  CHECK(besov_norm(c, 0.3, kInf, kInf) == doctest::Approx(mx).epsilon(1e-13));

  // p = 1, q = 1 summation oracle with weight 2^{j beta} (2^{jd})^{-1/2}
  double s1 = std::abs(c.scaling());
  for (int j = 0; j < c.max_level(); ++j)
    for (double v : c.level_span(j)) s1 += std::pow(2.0, 0.4 * j) * std::pow(4.0, -0.5 * j) * std::abs(v);
  CHECK(besov_norm(c, 0.4, 1.0, 1.0) == doctest::Approx(s1).epsilon(1e-13));
}

TEST_CASE("closed form examples") {
  std::mt19937_64 rng(22);
  const auto u = testutil::random_coeffs(1, 5, rng);
  CHECK(ipm_closed_form(u, u, 0.5) == 0.0);

  const auto a = analyze(DyadicFunction::constant(1, 1, 1.0));
  const auto b = analyze(DyadicFunction(1, 1, {1.5, 0.5}));
  CHECK(ipm_closed_form(a, b, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ipm_dual(a, b, 1.0, kInf, kInf) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(ipm_closed_form(WaveletCoeffs(1, 2), WaveletCoeffs(1, 3), 0.5), std::domain_error);
  CHECK_THROWS_AS(ipm_closed_form(WaveletCoeffs(1, 2), WaveletCoeffs(2, 2), 0.5), std::domain_error);
}

TEST_CASE("dual form specializations") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const auto u = testutil::random_coeffs(1 + t % 2, 4, rng, 0.0);
    const auto v = testutil::random_coeffs(1 + t % 2, 4, rng, 0.0);
    CHECK(std::abs(ipm_dual(u, v, 0.5, kInf, kInf) - ipm_closed_form(u, v, 0.5)) < 1e-12);
    CHECK(ipm_dual(u, u, 0.5, 2.0, 2.0) == 0.0);

    // p = q = 2: weighted l2 of differences with weight (2^{-dj})^{gamma/d + 1/2 - 1/2}.
    const int d = u.dim();
    double s = 0.0;
    for (int j = 0; j < u.max_level(); ++j) {
      const double w = std::pow(2.0, -d * j * (0.5 / d));
      const auto a = u.level_span(j), b = v.level_span(j);
      double lvl = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) lvl += (a[i] - b[i]) * (a[i] - b[i]);
      s += w * w * lvl;
    }
    CHECK(ipm_dual(u, v, 0.5, 2.0, 2.0) == doctest::Approx(std::sqrt(s)).epsilon(1e-12));
  }
}

TEST_CASE("witness attains the closed form and lies in the unit ball") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 50; ++t) {
    const auto u = analyze(testutil::random_density(1, 5, rng));
    const auto v = analyze(testutil::random_density(1, 5, rng));
    const auto f = dual_witness(u, v, 0.5);
    CHECK(besov_norm(f, 0.5, kInf, kInf) <= 1.0 + 1e-12);
    const double cf = ipm_closed_form(u, v, 0.5);
    CHECK(std::abs(pairing(f, u, v) - cf) <= 1e-12 * std::max(1.0, cf));
  }
  // Single difference: witness weight sits on that coefficient with its sign.
  WaveletCoeffs u(1, 3), v(1, 3);
  u.at(2, 1, 3) = -0.25;
  const auto f = dual_witness(u, v, 1.0);
  CHECK(f.at(2, 1, 3) == doctest::Approx(-ipm_level_weight(1, 2, 1.0)));
  CHECK(pairing(f, u, v) == doctest::Approx(ipm_closed_form(u, v, 1.0)));
  CHECK(pairing(dual_witness(u, u, 1.0), u, u) == 0.0);
}

TEST_CASE("pairing equals grid integration") {
  std::mt19937_64 rng(25);
  for (int d = 1; d <= 2; ++d) {
    const auto mu = testutil::random_density(d, 3, rng);
    const auto nu = testutil::random_density(d, 3, rng);
    const auto f = testutil::random_function(d, 3, rng);
    double direct = 0.0;
    for (std::size_t c = 0; c < f.cell_count(); ++c) direct += f.value(c) * (mu.value(c) - nu.value(c));
    direct *= std::ldexp(1.0, -3 * d);
    CHECK(pairing(analyze(f), analyze(mu), analyze(nu)) == doctest::Approx(direct).epsilon(1e-12));
  }
  // f = h_00 against 1 vs 1 + 0.5 h_00.
  WaveletCoeffs f(1, 1);
  f.at(0, 1, 0) = 1.0;
  const auto a = analyze(DyadicFunction::constant(1, 1, 1.0));
  const auto b = analyze(DyadicFunction(1, 1, {1.5, 0.5}));
  CHECK(pairing(f, a, b) == doctest::Approx(-0.5));
  WaveletCoeffs one(1, 1);
  one.set_scaling(1.0);
  CHECK(pairing(one, a, b) == doctest::Approx(0.0));
}

TEST_CASE("dual feasibility on random unit-ball functions") {
  std::mt19937_64 rng(26);
  const auto u = analyze(testutil::random_density(1, 6, rng));
  const auto v = analyze(testutil::random_density(1, 6, rng));
  const double cf = ipm_closed_form(u, v, 0.7);
  for (int t = 0; t < 1000; ++t) {
    const auto f = random_unit_ball(1, 6, 0.7, rng);
    REQUIRE(besov_norm(f, 0.7, kInf, kInf) <= 1.0 + 1e-12);
    CHECK(std::abs(pairing(f, u, v)) <= cf + 1e-12);
  }
}

TEST_CASE("metric axioms and monotonicity in gamma") {
  std::mt19937_64 rng(27);
  for (int t = 0; t < 100; ++t) {
    const auto a = testutil::random_coeffs(2, 3, rng);
    const auto b = testutil::random_coeffs(2, 3, rng);
    const auto c = testutil::random_coeffs(2, 3, rng);
    CHECK(ipm_closed_form(a, b, 0.4) == ipm_closed_form(b, a, 0.4));
    CHECK(ipm_closed_form(a, c, 0.4) <= ipm_closed_form(a, b, 0.4) + ipm_closed_form(b, c, 0.4) + 1e-12);
    CHECK(ipm_closed_form(a, b, 0.2) >= ipm_closed_form(a, b, 0.9));
    CHECK(ipm_closed_form(a, b, 0.4) > 0.0);
  }
}

TEST_CASE("exact 1-d Wasserstein") {
  const DyadicFunction one = DyadicFunction::constant(1, 1, 1.0);
  CHECK(exact_w1_1d(one, one) == 0.0);
  CHECK(exact_w1_1d(one, DyadicFunction(1, 1, {1.5, 0.5})) == doctest::Approx(0.125).epsilon(1e-15));
  // All mass in cell 0 versus all in cell 3 of a 4-cell grid: shift 3/4.
  CHECK(exact_w1_1d(DyadicFunction(1, 2, {4, 0, 0, 0}), DyadicFunction(1, 2, {0, 0, 0, 4})) ==
        doctest::Approx(0.75).epsilon(1e-15));
  // Half the mass moved by one cell of width 1/8.
  CHECK(exact_w1_1d(DyadicFunction(1, 3, {4, 4, 0, 0, 0, 0, 0, 0}),
                    DyadicFunction(1, 3, {4, 0, 4, 0, 0, 0, 0, 0})) ==
        doctest::Approx(0.5 * 0.125).epsilon(1e-15));
  CHECK_THROWS_AS(exact_w1_1d(DyadicFunction::constant(2, 1, 1.0), DyadicFunction::constant(2, 1, 1.0)),
                  std::domain_error);

  // Dense-grid quadrature of |F_u - F_v| as an independent route.
  std::mt19937_64 rng(28);
  const auto u = testutil::random_density(1, 4, rng);
  const auto v = testutil::random_density(1, 4, rng);
  const int fine = 1 << 16;
  double F = 0.0, acc = 0.0;
  for (int i = 0; i < fine; ++i) {
    const std::size_t cell = static_cast<std::size_t>(i) >> 12;
    const double step = (u.value(cell) - v.value(cell)) / fine;
    acc += std::abs(F + 0.5 * step) / fine;  // midpoint of a linear piece
    F += step;
  }
  CHECK(exact_w1_1d(u, v) == doctest::Approx(acc).epsilon(1e-6));

  // Lipschitz-domination diagnostic: the ratio stays bounded.
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto a = testutil::random_density(1, 6, rng);
    const auto b = testutil::random_density(1, 6, rng);
    worst = std::max(worst, exact_w1_1d(a, b) / ipm_closed_form(analyze(a), analyze(b), 1.0));
  }
  MESSAGE("max W1 / d_F(gamma=1) over 200 random pairs: " << worst);
  CHECK(worst < 10.0);
}

}  // TEST_SUITE
