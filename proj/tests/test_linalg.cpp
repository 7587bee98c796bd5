#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "reslab/linalg.hpp"
#include "reslab/simplex.hpp"
#include "reslab/util.hpp"

using namespace reslab;

namespace {

Matrix random_spd(std::size_t n, SplitMix64& rng) {
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = rng.uniform(-1.0, 1.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += b(k, i) * b(k, j);
      a(i, j) = s + (i == j ? 0.5 : 0.0);
    }
  return a;
}

}  // namespace

TEST_CASE("cholesky solves SPD systems") {
  SplitMix64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = 2 + rng.next_below(10);
    Matrix a = random_spd(n, rng);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform(-2.0, 2.0);
    auto b = a.multiply(x);
    Cholesky chol(a);
    auto got = chol.solve(b);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(got[i] - x[i]) < 1e-9);
  }
}

TEST_CASE("symmetric eigensolver reproduces A v = lambda v and matches jacobi") {
  SplitMix64 rng(11);
  for (int rep = 0; rep < 15; ++rep) {
    std::size_t n = 2 + rng.next_below(12);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = rng.uniform(-2.0, 2.0);
    auto eig = symmetric_eigen(a);
    auto jac = jacobi_eigen(a);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(eig.values[k] - jac.values[k]) < 1e-9);
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, k);
      auto av = a.multiply(v);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(av[i] - eig.values[k] * v[i]) < 1e-9);
    }
    // orthonormal columns
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += eig.vectors(i, k) * eig.vectors(i, l);
        CHECK(std::abs(dot - (k == l ? 1.0 : 0.0)) < 1e-10);
      }
  }
}

TEST_CASE("tridiagonal partial eigensolver agrees with the dense one") {
  SplitMix64 rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    std::size_t n = 5 + rng.next_below(40);
    std::vector<double> d(n), e(n - 1);
    for (auto& v : d) v = rng.uniform(0.0, 4.0);
    for (auto& v : e) v = rng.uniform(-2.0, -0.1);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = d[i];
    for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = e[i];
    auto dense = symmetric_eigen(a);
    double cutoff = dense.values[n / 2] + 1e-7;
    auto part = tridiag_eigen_below(d, e, cutoff);
    REQUIRE(part.values.size() >= n / 2);
    for (std::size_t k = 0; k < part.values.size(); ++k) {
      CHECK(std::abs(part.values[k] - dense.values[k]) < 1e-8);
      // residual || (A - lambda) v ||
      const auto& v = part.vectors[k];
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = d[i] * v[i] - part.values[k] * v[i];
        if (i > 0) s += e[i - 1] * v[i - 1];
        if (i + 1 < n) s += e[i] * v[i + 1];
        res = std::max(res, std::abs(s));
      }
      CHECK(res < 1e-7);
    }
  }
}

TEST_CASE("simplex solves a small textbook LP") {
  // max 3x + 2y st x + y <= 4, x + 3y <= 6, x,y >= 0 -> optimum 12 at (4,0)
  Matrix a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  a(1, 0) = 1;
  a(1, 1) = 3;
  auto res = simplex_maximize(a, {4, 6}, {3, 2});
  CHECK(std::abs(res.value - 12.0) < 1e-9);
  CHECK(std::abs(res.x[0] - 4.0) < 1e-9);
}

TEST_CASE("line fit recovers slope and intercept") {
  std::vector<double> x{1, 2, 3, 4, 5}, y;
  for (double v : x) y.push_back(2.5 * v - 1.0);
  auto fit = fit_line(x, y);
  CHECK(std::abs(fit.slope - 2.5) < 1e-12);
  CHECK(std::abs(fit.intercept + 1.0) < 1e-12);
}
