#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracles/exact_lp.hpp"
#include "ipmlab/moment_priors.hpp"
#include "ipmlab/simplex.hpp"

using namespace ipmlab;

namespace {

// Exact optimal gaps at tau = 1, grid 2001, from the rational simplex in
// tests/oracles (freeze_prior_gaps); each run took 2 s to 5 min.
struct Frozen {
  int K;
  double gap;
};
constexpr Frozen kFrozenGaps[] = {{1, 0.25},
                                  {2, 0.1352415569936741},
                                  {3, 0.09185780568253693},
                                  {4, 0.069379238759695538},
                                  {8, 0.034935945184365436}};

double max_moment_residual(const PriorPair& p, int upto) {
  double worst = 0.0;
  for (int l = 0; l <= upto; ++l) worst = std::max(worst, std::abs(moment(p.q1, l) - moment(p.q0, l)));
  return worst;
}

}  // namespace

TEST_SUITE("simplex") {

TEST_CASE("small LP") {
  // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6 -> x = 1.6, y = 1.2
  LpProblem lp;
  lp.rows = 2;
  lp.cols = 4;
  lp.A = {1, 2, 1, 0, 3, 1, 0, 1};
  lp.b = {4, 6};
  lp.c = {1, 1, 0, 0};
  const auto s = simplex_maximize(lp);
  CHECK(s.objective == doctest::Approx(2.8));
  CHECK(s.x[0] == doctest::Approx(1.6));
  CHECK(s.x[1] == doctest::Approx(1.2));
}

TEST_CASE("infeasible and unbounded LPs throw") {
  LpProblem inf;
  inf.rows = 2;
  inf.cols = 1;
  inf.A = {1, 1};
  inf.b = {1, 2};
  inf.c = {1};
  CHECK_THROWS_AS(simplex_maximize(inf), SolverError);

  LpProblem unb;
  unb.rows = 1;
  unb.cols = 2;
  unb.A = {1, -1};
  unb.b = {1};
  unb.c = {0, 1};
  CHECK_THROWS_AS(simplex_maximize(unb), SolverError);
}

TEST_CASE("iteration limit reports the count") {
  LpProblem lp;
  lp.rows = 2;
  lp.cols = 4;
  lp.A = {1, 2, 1, 0, 3, 1, 0, 1};
  lp.b = {4, 6};
  lp.c = {1, 1, 0, 0};
  SimplexOptions o;
  o.max_iterations = 1;
  try {
    simplex_maximize(lp, o);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.iterations() >= 1);
  }
}

TEST_CASE("agrees with the exact rational simplex on random LPs") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coef(-5, 9);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = 3, n = 7;
    LpProblem lp;
    lp.rows = m;
    lp.cols = n;
    std::vector<std::vector<mpq_class>> A(m, std::vector<mpq_class>(n));
    std::vector<mpq_class> b(m), c(n);
    lp.A.resize(m * n);
    lp.b.resize(m);
    lp.c.resize(n);
    // Feasible by construction: b = A x0 with x0 >= 0; bounded by a mass row.
    std::vector<int> x0(n);
    for (auto& v : x0) v = std::abs(coef(rng)) % 3;
    for (std::size_t j = 0; j < n; ++j) {
      lp.a(0, j) = 1.0;
      A[0][j] = 1;
    }
    for (std::size_t i = 1; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const int v = coef(rng);
        lp.a(i, j) = v;
        A[i][j] = v;
      }
    for (std::size_t i = 0; i < m; ++i) {
      long s = 0;
      for (std::size_t j = 0; j < n; ++j) s += static_cast<long>(lp.a(i, j)) * x0[j];
      if (s < 0) {
        for (std::size_t j = 0; j < n; ++j) {
          lp.a(i, j) = -lp.a(i, j);
          A[i][j] = -A[i][j];
        }
        s = -s;
      }
      lp.b[i] = static_cast<double>(s);
      b[i] = s;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const int v = coef(rng);
      lp.c[j] = v;
      c[j] = v;
    }
    const auto exact = oracle::exact_simplex_max(A, b, c);
    const auto s = simplex_maximize(lp);
    CHECK(s.objective == doctest::Approx(exact.objective.get_d()).epsilon(1e-10));
  }
}

}  // TEST_SUITE

TEST_SUITE("moment_priors") {

TEST_CASE("prior validation") {
  CHECK_THROWS_AS(DiscretePrior(1.0, {-0.5, 0.5}, {0.3, 0.7}), std::domain_error);  // not symmetric
  CHECK_THROWS_AS(DiscretePrior(1.0, {-2.0, 2.0}, {0.5, 0.5}), std::domain_error);  // outside tau
  CHECK_THROWS_AS(DiscretePrior(1.0, {0.5, -0.5}, {0.5, 0.5}), std::domain_error);  // not increasing
  CHECK_THROWS_AS(DiscretePrior(1.0, {-0.5, 0.5}, {0.5, 0.6}), std::domain_error);  // mass
  CHECK_THROWS_AS(DiscretePrior(1.0, {-0.5, 0.5}, {1.5, -0.5}), std::domain_error);
  CHECK_THROWS_AS(DiscretePrior(0.0, {0.0}, {1.0}), std::domain_error);
  CHECK_NOTHROW(DiscretePrior(1.0, {-1.0, 0.0, 1.0}, {0.25, 0.5, 0.25}));
}

TEST_CASE("moment, mean_abs, sd_abs") {
  const auto p = DiscretePrior::symmetric_pair(1.0, 0.6);
  CHECK(moment(p, 0) == 1.0);
  CHECK(std::abs(moment(p, 3)) < 1e-12);
  CHECK(moment(p, 2) == doctest::Approx(0.36));
  CHECK(mean_abs(p) == doctest::Approx(0.6));
  CHECK(sd_abs(p) == 0.0);
  const auto z = DiscretePrior::dirac_zero(1.0);
  CHECK(mean_abs(z) == 0.0);
  CHECK(moment(z, 0) == 1.0);
  const DiscretePrior three(1.0, {-1.0, 0.0, 1.0}, {0.25, 0.5, 0.25});
  CHECK(sd_abs(three) == doctest::Approx(0.5));
}

TEST_CASE("choose_K") {
  CHECK(choose_K(16, 2.0) == 3);
  CHECK(choose_K(1e3, 2.0) == 4);
  CHECK(choose_K(1e4, 2.0) == 5);
  CHECK(choose_K(1e6, 1e-9) == 1);
  CHECK_THROWS_AS(choose_K(15, 2.0), std::domain_error);
  CHECK_THROWS_AS(choose_K(100, 0.0), std::domain_error);
  int prev = 0;
  for (double n = 16; n <= 1e6; n *= 1.07) {
    const int K = choose_K(n, 2.0);
    CHECK(K >= prev);
    prev = K;
  }
}

TEST_CASE("grid precondition") {
  CHECK_THROWS_AS(construct_prior_pair(2, 1.0, 11), std::invalid_argument);
  CHECK_NOTHROW(construct_prior_pair(2, 1.0, 12));
  CHECK_THROWS_AS(construct_prior_pair(0, 1.0, 101), std::invalid_argument);
  CHECK_THROWS_AS(construct_prior_pair(1, -1.0, 101), std::invalid_argument);
}

TEST_CASE("frozen exact gaps") {
  for (const auto& f : kFrozenGaps) {
    CAPTURE(f.K);
    const auto p = construct_prior_pair(f.K, 1.0, 2001);
    CHECK(std::abs(p.gap - f.gap) < 1e-10);
    CHECK(p.kappa == doctest::Approx(p.gap * f.K / 2.0));
    CHECK(max_moment_residual(p, 2 * f.K) < 1e-9);
    CHECK(mean_abs(p.q1) - mean_abs(p.q0) == doctest::Approx(p.gap).epsilon(1e-14));
  }
}

TEST_CASE("live exact oracle on a small grid") {
  for (int K = 1; K <= 3; ++K) {
    CAPTURE(K);
    const double exact = oracle::exact_prior_gap(K, 201).get_d();
    CHECK(std::abs(construct_prior_pair(K, 1.0, 201).gap - exact) < 1e-10);
  }
  CHECK(oracle::exact_prior_gap(2, 201).get_d() == doctest::Approx(0.13521208401527549).epsilon(1e-15));
}

TEST_CASE("smallest admissible grids") {
  // At grid = 4K + 4 the folded grid has 2K + 2 points, one more than the
  // K + 1 moment conditions, so a positive gap is still available.
  for (int K = 1; K <= 4; ++K) {
    CAPTURE(K);
    const auto p = construct_prior_pair(K, 1.0, 4 * K + 4);
    CHECK(p.gap > 0.0);
    CHECK(max_moment_residual(p, 2 * K) < 1e-9);
  }
}

TEST_CASE("K = 8 realisation") {
  const auto p = construct_prior_pair(8, 1.0, 2001);
  CHECK(max_moment_residual(p, 16) < 1e-8);
  CHECK(p.gap * 8 >= 0.1);
  CHECK(p.gap * 8 <= 1.0);
  for (int l = 1; l <= 15; l += 2) {
    CHECK(std::abs(moment(p.q0, l)) < 1e-12);
    CHECK(std::abs(moment(p.q1, l)) < 1e-12);
  }
}

TEST_CASE("path independence of the optimum") {
  for (int K : {2, 5}) {
    const double base = construct_prior_pair(K, 1.0, 501).gap;
    for (std::uint64_t seed : {3u, 17u, 99u}) {
      PriorOptions o;
      o.column_shuffle_seed = seed;
      CHECK(std::abs(construct_prior_pair(K, 1.0, 501, o).gap - base) < 1e-8);
    }
  }
}

TEST_CASE("grid refinement never loses gap") {
  for (int K : {1, 3, 6}) {
    // Odd grids nest under g -> 2g - 1, so the finer optimum dominates.
    double prev = 0.0;
    for (int g : {101, 201, 401, 801}) {
      const double gap = construct_prior_pair(K, 1.0, g).gap;
      CHECK(gap >= prev - 1e-6);
      prev = gap;
    }
  }
}

TEST_CASE("scale covariance") {
  for (double tau : {0.3, 2.5}) {
    const auto a = construct_prior_pair(4, tau, 801);
    const auto b = dilate(construct_prior_pair(4, 1.0, 801), tau);
    CHECK(std::abs(a.gap / tau - b.gap / tau) < 1e-8);
    CHECK(a.tau() == tau);
    CHECK(b.kappa == doctest::Approx(a.kappa).epsilon(1e-10));
    for (const auto& s : a.q1.support()) CHECK(std::abs(s) <= tau);
  }
}

TEST_CASE("pruned weights and symmetry") {
  const auto p = construct_prior_pair(5, 1.0, 2001);
  for (const auto* q : {&p.q0, &p.q1}) {
    for (double w : q->weights()) CHECK(w >= 1e-12);
    const auto& s = q->support();
    const auto& w = q->weights();
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i] == -s[s.size() - 1 - i]);
      CHECK(w[i] == w[s.size() - 1 - i]);
    }
  }
}

}  // TEST_SUITE
