#include "acara/gauge.hpp"

#include "acara/rng.hpp"
#include "acara/tensor.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace acara;

namespace {

DiagonalMatrix random_diag_psd(Index dim, std::mt19937_64& gen, double scale = 1.0) {
  RealVector d(dim);
  for (Index i = 0; i < dim; ++i) d(i) = scale * uniform01(gen);
  return DiagonalMatrix(std::move(d));
}

}  // namespace

TEST_CASE("mu_1 of a diagonal psd matrix is its trace") {
  CHECK(mu1_diagonal_exact(DiagonalMatrix(RealVector::Ones(1))) == 1.0);
  RealVector two(2);
  two << 0.25, 0.75;
  CHECK(mu1_diagonal_exact(DiagonalMatrix(two)) == doctest::Approx(1.0).epsilon(1e-15));
  RealVector neg(2);
  neg << 0.5, -0.1;
  CHECK_THROWS_AS(mu1_diagonal_exact(DiagonalMatrix(neg)), std::domain_error);

  std::mt19937_64 gen(61);
  for (int s = 0; s < 500; ++s) {
    const DiagonalMatrix sigma = random_diag_psd(2 + Index(gen() % 16), gen, 3.0);
    CHECK(std::abs(mu1_diagonal_exact(sigma) - sigma.diag.sum()) <= 1e-12 * std::max(1.0, sigma.diag.sum()));
  }
}

TEST_CASE("mu_1 equals the entrywise mass through the correspondence") {
  std::mt19937_64 gen(62);
  for (int s = 0; s < 50; ++s) {
    NnTensor m(1, 3);
    for (double& e : m.entries) e = uniform01(gen);
    const DiagonalMatrix sigma = diag_correspondence(m);
    CHECK(mu1_diagonal_exact(sigma) == doctest::Approx(lp_norm(m, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("mu_sqrt bounds for diagonal matrices") {
  const GaugeEstimate unit = mu_sqrt_bounds_diagonal(DiagonalMatrix(RealVector::Ones(1)), 2.0);
  CHECK(unit.lower == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(unit.upper == doctest::Approx(1.0).epsilon(1e-15));

  const GaugeEstimate two = mu_sqrt_bounds_diagonal(DiagonalMatrix(RealVector::Ones(2)), 2.0);
  CHECK(two.lower == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(two.upper == doctest::Approx(2.0).epsilon(1e-15));

  std::mt19937_64 gen(63);
  for (double p : {4.0 / 3.0, 2.0, 4.0})
    for (int s = 0; s < 500; ++s) {
      const DiagonalMatrix rho = random_diag_psd(2 + Index(gen() % 8), gen);
      const GaugeEstimate est = mu_sqrt_bounds_diagonal(rho, p);
      CHECK(est.lower <= est.upper + 1e-12);
    }
  RealVector neg(2);
  neg << 1.0, -0.2;
  CHECK_THROWS_AS(mu_sqrt_bounds_diagonal(DiagonalMatrix(neg), 2.0), std::domain_error);
}

TEST_CASE("the diagonal mu_sqrt upper bound is mu_1 of the root") {
  std::mt19937_64 gen(64);
  for (int s = 0; s < 100; ++s) {
    const DiagonalMatrix rho = random_diag_psd(5, gen, 2.0);
    RealVector root(5);
    for (Index i = 0; i < 5; ++i) root(i) = std::sqrt(rho.diag(i));
    const GaugeEstimate est = mu_sqrt_bounds_diagonal(rho, 2.0);
    CHECK(std::abs(est.upper - mu1_diagonal_exact(DiagonalMatrix(root))) <= 1e-12);
  }
}

TEST_CASE("combination certificates") {
  const AtomOracle oracle = product_psd_atoms({2, 2}, 2.0, 6, 77, false);
  ConvexCombination single;
  single.atom_ids = {0};
  single.atoms = {oracle.atoms[0].value};
  single.weights = {1.0};
  CHECK(mu_upper_via_combination(oracle.atoms[0].value, single) == doctest::Approx(1.0));

  ConvexCombination doubled;
  doubled.atom_ids = {0, 0};
  doubled.atoms = {oracle.atoms[0].value, oracle.atoms[0].value};
  doubled.weights = {1.0, 1.0};
  CHECK(mu_upper_via_combination(ComplexMatrix(2.0 * oracle.atoms[0].value), doubled) ==
        doctest::Approx(2.0));

  // separable state: convex mixture certifies mu <= 1, and the norm stays below it
  ConvexCombination mix;
  for (int i = 0; i < 3; ++i) {
    mix.atom_ids.push_back(i);
    mix.atoms.push_back(oracle.atoms[std::size_t(i)].value);
  }
  mix.weights = {0.5, 0.25, 0.25};
  const ComplexMatrix rho = mix.evaluate();
  const double upper = mu_upper_via_combination(rho, mix);
  CHECK(upper <= 1.0 + 1e-12);
  CHECK(schatten_norm(rho, 2.0) <= upper + 1e-12);

  ConvexCombination wrong = mix;
  wrong.weights = {0.5, 0.25, 0.1};
  CHECK_THROWS_AS(mu_upper_via_combination(rho, wrong), std::invalid_argument);

  const GaugeEstimate est = gauge_estimate(rho, 2.0, &mix);
  CHECK(est.lower <= est.upper + 1e-12);
}

TEST_CASE("budget spot values") {
  CHECK(budget_rank(1.0, 2.0, 1.0, 1).value == 437);
  CHECK(budget_sep(2.0, 2.0, 1).value == 110);
  CHECK(budget_puri(3.0, 2.0, 1.0, 1).value == 437);  // delta = sqrt(4) - 1 = 1
  CHECK(budget_nn(2.0, 2.0, 1.0, 1).value == 110);
  CHECK(budget_nn(0.1, 2.0, 1.0, 1).value == 43679);
  CHECK(budget_sep(2.0, 2.0, 1).value == budget_rank(2.0, 2.0, 1.0, 1).value);
}

TEST_CASE("budget monotonicity and group scaling") {
  for (double eps : {0.5, 1.0, 2.0}) {
    CHECK(budget_rank(eps, 2.0, 1.0, 1).value >= budget_rank(2.0 * eps, 2.0, 1.0, 1).value);
    CHECK(budget_rank(eps, 2.0, 2.0, 1).value >= budget_rank(eps, 2.0, 1.0, 1).value);
    CHECK(budget_nn(eps, 2.0, 2.0, 1).value >= budget_nn(eps, 2.0, 1.0, 1).value);
    CHECK(budget_puri(eps, 2.0, 1.0, 1).value <= budget_puri(0.5 * eps, 2.0, 1.0, 1).value);
    for (long long g : {2LL, 5LL}) {
      CHECK(budget_rank(eps, 2.0, 1.0, g).value == g * budget_rank(eps, 2.0, 1.0, 1).value);
      CHECK(budget_sep(eps, 2.0, g).value == g * budget_sep(eps, 2.0, 1).value);
      CHECK(budget_nn(eps, 2.0, 1.0, g).value == g * budget_nn(eps, 2.0, 1.0, 1).value);
    }
  }
}

TEST_CASE("doubling mu quadruples the pre-ceiling rank budget at p = 2") {
  const long double base = oracles::ld_budget_raw(1.0L, 2.0L, 2.0L, true);
  const long double doubled = oracles::ld_budget_raw(1.0L, 4.0L, 2.0L, true);
  CHECK(double(doubled / base) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("puri budgets dominate rank budgets on a grid, via delta <= eps/(2 mu^2)") {
  for (double eps : {0.25, 0.5, 1.0, 2.0, 3.0})
    for (double mu : {0.5, 1.0, 2.0, 4.0}) {
      const double delta = std::sqrt(1.0 + eps / (mu * mu)) - 1.0;
      CHECK(delta <= eps / (2.0 * mu * mu) + 1e-15);
      CHECK(budget_puri(eps, 2.0, mu, 1).value >= budget_rank(eps, 2.0, mu, 1).value);
    }
}

TEST_CASE("schatten-1 budget multiplies by the ambient dimension") {
  const RankBudget base = budget_rank(1.0, 2.0, 1.0, 1);
  const RankBudget lifted = budget_schatten1(1.0, base, 2, 1);
  CHECK(lifted.value == 4 * base.value);
  CHECK_THROWS_AS(budget_schatten1(1.0, budget_rank(1.0, 4.0, 1.0, 1), 2, 1),
                  std::invalid_argument);

  // circle with the cyclic group: extra factor n on top of d^n
  const int n = 4, d = 2;
  const RankBudget invariant = budget_rank(1.0, 2.0, 1.5, n);
  const RankBudget total = budget_schatten1(1.0, invariant, d, n - 1);
  const long long expected =
      (long long)(std::ceil(2.0 * std::exp(4.0) * std::pow(2.0 * 1.5 / 1.0, 2.0))) * n *
      (long long)std::pow(d, n);
  CHECK(total.value == expected);
}

TEST_CASE("sqrt pipeline on the unit projector stops immediately") {
  const SqrtPipelineResult out =
      approx_sqrt_pipeline(DiagonalMatrix(RealVector::Ones(1)), 0.5, 2.0, Method::greedy, 1);
  CHECK(out.k == 1);
  CHECK(out.achieved_error <= 1e-12);
  CHECK(out.distinct_atoms == 1);
}

TEST_CASE("sqrt pipeline on the maximally mixed two-site state") {
  RealVector quarter = RealVector::Constant(4, 0.25);
  const SqrtPipelineResult out =
      approx_sqrt_pipeline(DiagonalMatrix(quarter), 0.5, 2.0, Method::greedy, 1);
  CHECK(out.achieved_error <= 0.5);
  CHECK(out.k <= out.budget.value);
  CHECK(out.mu == doctest::Approx(2.0).epsilon(1e-12));  // trace of sqrt(rho) = 4 * 0.5
  // the witness squares back to rho'
  for (Index i = 0; i < 4; ++i)
    CHECK(out.rho_prime.diag(i) ==
          doctest::Approx(out.sqrt_iterate.diag(i) * out.sqrt_iterate.diag(i)).epsilon(1e-12));
}

TEST_CASE("square difference obeys the norm inequality chain") {
  std::mt19937_64 gen(65);
  for (int s = 0; s < 500; ++s) {
    const Index dim = 2 + Index(gen() % 6);
    const DiagonalMatrix a = random_diag_psd(dim, gen, 2.0);
    const DiagonalMatrix b = random_diag_psd(dim, gen, 2.0);
    for (double p : {2.0, 4.0}) {
      RealVector sq_diff(dim), diff(dim);
      for (Index i = 0; i < dim; ++i) {
        sq_diff(i) = a.diag(i) * a.diag(i) - b.diag(i) * b.diag(i);
        diff(i) = a.diag(i) - b.diag(i);
      }
      const double lhs = diag_schatten(sq_diff, p);
      const double d = diag_schatten(diff, p);
      CHECK(lhs <= d * (2.0 * diag_schatten(a.diag, p) + d) + 1e-9);
    }
  }
}

TEST_CASE("pipeline rejects bad inputs") {
  RealVector neg(2);
  neg << 0.5, -0.2;
  CHECK_THROWS_AS(approx_sqrt_pipeline(DiagonalMatrix(neg), 0.5, 2.0, Method::greedy, 1),
                  std::domain_error);
  CHECK_THROWS_AS(
      approx_sqrt_pipeline(DiagonalMatrix(RealVector::Zero(2)), 0.5, 2.0, Method::greedy, 1),
      std::invalid_argument);
}
