#include "acara/tensor.hpp"

#include "acara/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace acara;

namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("schatten norm on fixed spectra") {
  CHECK(schatten_norm(ComplexMatrix::Identity(3, 3), 2.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(schatten_norm(diag2(3.0, 4.0), 2.0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(schatten_norm(ComplexMatrix::Zero(3, 3), 2.0) == 0.0);
  CHECK_THROWS_AS(schatten_norm(diag2(1.0, 1.0), 0.9), std::domain_error);
}

TEST_CASE("schatten norm matches the eigenvalue route") {
  std::mt19937_64 gen(11);
  for (int s = 0; s < 20; ++s) {
    const ComplexMatrix m = random_complex_matrix(6, 6, gen);
    const double via_svd = schatten_norm(m, 3.0);
    const double via_eig = oracles::eig_schatten_norm(m, 3.0);
    CHECK(std::abs(via_svd - via_eig) <= 1e-9 * via_eig);
  }
}

TEST_CASE("schatten quasinorm") {
  CHECK(schatten_quasinorm(diag2(1.0, 1.0), 0.5) == doctest::Approx(4.0).epsilon(1e-12));
  ComplexMatrix one(1, 1);
  one(0, 0) = 4.0;
  CHECK(schatten_quasinorm(one, 0.5) == doctest::Approx(4.0).epsilon(1e-12));
  ComplexMatrix d3 = ComplexMatrix::Zero(3, 3);
  d3(0, 0) = 1.0;
  d3(1, 1) = 4.0;
  d3(2, 2) = 9.0;
  CHECK(schatten_quasinorm(d3, 0.5) == doctest::Approx(36.0).epsilon(1e-12));
  CHECK_THROWS_AS(schatten_quasinorm(d3, 1.0), std::domain_error);
  CHECK_THROWS_AS(schatten_quasinorm(d3, 0.0), std::domain_error);
}

TEST_CASE("entrywise norms") {
  NnTensor euclid3(1, 3);
  const double raw[9] = {0, 1, 4, 1, 0, 1, 4, 1, 0};
  for (int i = 0; i < 9; ++i) euclid3.entries[std::size_t(i)] = raw[i];
  CHECK(lp_norm(euclid3, 1.0) == doctest::Approx(12.0).epsilon(1e-12));

  NnTensor zero(2, 2);
  CHECK(lp_norm(zero, 0.7) == 0.0);

  NnTensor basis(1, 2);
  basis.entries[1] = 1.0;  // e_0 (x) e_1
  CHECK(lp_norm(basis, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(lp_norm(basis, 0.0), std::domain_error);
}

TEST_CASE("thin svd basics") {
  const SvdResult dec = svd(diag2(2.0, 0.0));
  CHECK(dec.rank == 1);
  CHECK(dec.singular_values(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(dec.u(0, 0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(dec.v(0, 0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(svd(ComplexMatrix::Zero(2, 2)), std::domain_error);
}

TEST_CASE("svd reconstruction and isometry residuals") {
  std::mt19937_64 gen(12);
  for (int s = 0; s < 200; ++s) {
    const Index rows = 2 + Index(gen() % 31);
    const Index cols = 2 + Index(gen() % 31);
    const ComplexMatrix m = random_complex_matrix(rows, cols, gen);
    const SvdResult dec = svd(m);
    const ComplexMatrix rec =
        dec.u * dec.singular_values.asDiagonal().toDenseMatrix().cast<Complex>() * dec.v.adjoint();
    CHECK((rec - m).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff()));
    CHECK((dec.u.adjoint() * dec.u - ComplexMatrix::Identity(dec.rank, dec.rank)).cwiseAbs().maxCoeff() <=
          1e-10);
    CHECK((dec.v.adjoint() * dec.v - ComplexMatrix::Identity(dec.rank, dec.rank)).cwiseAbs().maxCoeff() <=
          1e-10);
    for (Index i = 1; i < dec.rank; ++i) CHECK(dec.singular_values(i) <= dec.singular_values(i - 1));
  }
}

TEST_CASE("svd of a complex diagonal keeps phases in U") {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = Complex(0.0, 2.0);
  m(1, 1) = Complex(-1.0, 0.0);
  const SvdResult dec = svd(m);
  REQUIRE(dec.rank == 2);
  CHECK(dec.singular_values(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(dec.singular_values(1) == doctest::Approx(1.0).epsilon(1e-15));
  const ComplexMatrix rec =
      dec.u * dec.singular_values.asDiagonal().toDenseMatrix().cast<Complex>() * dec.v.adjoint();
  CHECK((rec - m).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("svd of hermitian input reconstructs") {
  std::mt19937_64 gen(13);
  const ComplexMatrix m = random_hermitian(5, gen);
  const SvdResult dec = svd(m);
  const ComplexMatrix rec =
      dec.u * dec.singular_values.asDiagonal().toDenseMatrix().cast<Complex>() * dec.v.adjoint();
  CHECK((rec - m).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(is_hermitian(m));
  CHECK_FALSE(is_hermitian(random_complex_matrix(5, 5, gen)));
}

TEST_CASE("schatten directional derivative fixed cases") {
  std::mt19937_64 gen(14);
  const ComplexMatrix x = random_hermitian(6, gen);
  CHECK(schatten_directional_derivative(x, x, 2.0) ==
        doctest::Approx(schatten_norm(x, 2.0)).epsilon(1e-10));

  CHECK(std::abs(schatten_directional_derivative(diag2(2.0, 0.0), diag2(0.0, 1.0), 2.0)) <= 1e-12);
  CHECK(std::abs(oracles::fd_schatten_derivative(diag2(2.0, 0.0), diag2(0.0, 1.0), 2.0)) <= 1e-5);

  CHECK(std::abs(schatten_directional_derivative(ComplexMatrix::Identity(2, 2), diag2(1.0, -1.0),
                                                 2.0)) <= 1e-12);
  CHECK_THROWS_AS(schatten_directional_derivative(ComplexMatrix::Zero(2, 2), x, 2.0),
                  std::domain_error);
}

TEST_CASE("lp directional derivative fixed cases") {
  std::mt19937_64 gen(15);
  const ComplexMatrix x = random_hermitian(4, gen);
  for (double p : {1.5, 2.0, 3.0})
    CHECK(lp_directional_derivative(x, x, p) == doctest::Approx(lp_norm(x, p)).epsilon(1e-10));

  ComplexMatrix e00 = ComplexMatrix::Zero(2, 2), e01 = ComplexMatrix::Zero(2, 2);
  e00(0, 0) = 1.0;
  e01(0, 1) = 1.0;
  CHECK(std::abs(lp_directional_derivative(e00, e01, 2.0)) <= 1e-12);
  CHECK(std::abs(oracles::fd_lp_derivative(e00, e01, 2.0)) <= 1e-5);

  const ComplexMatrix ones = ComplexMatrix::Ones(2, 2);
  CHECK(lp_directional_derivative(ones, e00, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(oracles::fd_lp_derivative(ones, e00, 2.0) == doctest::Approx(0.5).epsilon(1e-5));
  CHECK_THROWS_AS(lp_directional_derivative(ComplexMatrix::Zero(2, 2), e00, 2.0), std::domain_error);
}

TEST_CASE("both derivatives agree with central finite differences") {
  std::mt19937_64 gen(16);
  for (double p : {1.2, 4.0 / 3.0, 2.0, 4.0, 7.0}) {
    for (int s = 0; s < 200; ++s) {
      const ComplexMatrix x = random_hermitian(6, gen);
      const ComplexMatrix y = random_hermitian(6, gen);
      const double an = schatten_directional_derivative(x, y, p);
      const double fd = oracles::fd_schatten_derivative(x, y, p);
      CHECK(std::abs(an - fd) <= 1e-4 * std::max(1.0, std::abs(an)));
      const double an_lp = lp_directional_derivative(x, y, p);
      const double fd_lp = oracles::fd_lp_derivative(x, y, p);
      CHECK(std::abs(an_lp - fd_lp) <= 1e-4 * std::max(1.0, std::abs(an_lp)));
    }
  }
}

TEST_CASE("nn tensor lp derivative matches matrix route") {
  std::mt19937_64 gen(17);
  NnTensor x(1, 3), y(1, 3);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x.entries[i] = uniform01(gen);
    y.entries[i] = uniform01(gen) - 0.5;
  }
  ComplexMatrix xm(3, 3), ym(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      xm(i, j) = x.entries[std::size_t(3 * i + j)];
      ym(i, j) = y.entries[std::size_t(3 * i + j)];
    }
  CHECK(lp_directional_derivative(x, y, 2.5) ==
        doctest::Approx(lp_directional_derivative(xm, ym, 2.5)).epsilon(1e-12));
}

TEST_CASE("modulus of smoothness estimates stay under the closed-form bounds") {
  CHECK(estimate_modulus_of_smoothness(2.0, 0.1, 1000, 21) <= 0.5 * 0.01 + 1e-9);
  CHECK(estimate_modulus_of_smoothness(4.0 / 3.0, 0.1, 1000, 22) <=
        std::pow(0.1, 4.0 / 3.0) / (4.0 / 3.0) + 1e-9);
  CHECK(estimate_modulus_of_smoothness(2.0, 0.0, 10, 23) == 0.0);
}

TEST_CASE("hanner residual directions") {
  CHECK(std::abs(hanner_residual(ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2), 4.0)) <=
        1e-12);
  std::mt19937_64 gen(24);
  for (double p : {1.0, 1.25, 4.0 / 3.0, 2.0, 4.0, 6.0}) {
    for (int s = 0; s < 1000; ++s) {
      ComplexMatrix a = random_hermitian(6, gen);
      ComplexMatrix b = random_hermitian(6, gen);
      a /= schatten_norm(a, p);
      b /= schatten_norm(b, p);
      const double r = hanner_residual(a, b, p);
      if (p == 2.0)
        CHECK(std::abs(r) <= 1e-9);
      else if (p <= 4.0 / 3.0)
        CHECK(r <= 1e-9);
      else
        CHECK(r >= -1e-9);
    }
  }
  CHECK_THROWS_AS(hanner_residual(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3), 2.0),
                  std::invalid_argument);
}

TEST_CASE("norm axioms and p-q ordering, sampled") {
  std::mt19937_64 gen(25);
  for (int s = 0; s < 100; ++s) {
    const ComplexMatrix a = random_complex_matrix(5, 5, gen);
    const ComplexMatrix b = random_complex_matrix(5, 5, gen);
    for (double p : {1.0, 1.7, 2.0, 3.5}) {
      CHECK(schatten_norm(a + b, p) <= schatten_norm(a, p) + schatten_norm(b, p) + 1e-9);
      CHECK(schatten_norm(-2.0 * a, p) == doctest::Approx(2.0 * schatten_norm(a, p)).epsilon(1e-9));
      CHECK(lp_norm(a + b, p) <= lp_norm(a, p) + lp_norm(b, p) + 1e-9);
      CHECK(lp_norm(-2.0 * a, p) == doctest::Approx(2.0 * lp_norm(a, p)).epsilon(1e-9));
    }
    const double p = 1.0 + 2.0 * uniform01(gen);
    const double q = p + 3.0 * uniform01(gen);
    const double np = schatten_norm(a, p);
    const double nq = schatten_norm(a, q);
    const double rank = double(svd(a).rank);
    CHECK(nq <= np + 1e-9);
    CHECK(np <= std::pow(rank, 1.0 / p - 1.0 / q) * nq + 1e-9);
  }
}
