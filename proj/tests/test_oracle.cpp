#include <cmath>
#include <random>

#include "doctest.h"
#include "qgspec/error.hpp"
#include "qgspec/oracle.hpp"
#include "qgspec/spectrum.hpp"

using namespace qgs;

namespace {

const double pi = std::acos(-1.0);

WeightProfile constant_profile(long n) {
  WeightProfile p;
  p.weights.assign(static_cast<std::size_t>(n), 1.0);
  return p;
}

}  // namespace

TEST_CASE("small matrices") {
  const auto op = make_tridiagonal({2, 2}, {-1});
  const auto e = tridiag_eigenvalues(op, -10, 10);
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(e[1] == doctest::Approx(3.0).epsilon(1e-9));
  const auto d = tridiag_eigenvalues(make_tridiagonal({5, -1, 3, 0.5}, {0, 0, 0}), -10, 10);
  REQUIRE(d.size() == 4);
  CHECK(d[0] == doctest::Approx(-1));
  CHECK(d[1] == doctest::Approx(0.5));
  CHECK(d[2] == doctest::Approx(3));
  CHECK(d[3] == doctest::Approx(5));
}

TEST_CASE("Sturm count against a dense characteristic check") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> U(-3, 3);
  std::vector<double> diag(60), off(59);
  for (double& x : diag) x = U(rng);
  for (double& x : off) x = U(rng);
  const auto op = make_tridiagonal(diag, off);
  const auto all = tridiag_eigenvalues(op, -20, 20);
  CHECK(all.size() == 60);
  // trace and Frobenius norm are eigenvalue invariants
  double tr = 0, fro = 0, s = 0, s2 = 0;
  for (double x : diag) tr += x, fro += x * x;
  for (double x : off) fro += 2 * x * x;
  for (double e : all) s += e, s2 += e * e;
  CHECK(s == doctest::Approx(tr).epsilon(1e-8));
  CHECK(s2 == doctest::Approx(fro).epsilon(1e-8));
  for (double E : {-2.0, 0.0, 1.3}) {
    long below = 0;
    for (double e : all) below += e < E;
    CHECK(sturm_count(op, E) == below);
  }
}

TEST_CASE("free Dirichlet interval") {
  const auto op = discretize(constant_profile(1), 0.0, 1.0, 500, Boundary::dirichlet, Boundary::dirichlet);
  const auto e = tridiag_eigenvalues(op, 0, 200);
  REQUIRE(!e.empty());
  CHECK(std::abs(e[0] - pi * pi) < 5e-5);
  CHECK(sturm_count(op, 100.0) == 3);
  // second-order convergence: halving h cuts the error by about 4
  const auto coarse = tridiag_eigenvalues(discretize(constant_profile(1), 0, 1, 100, Boundary::dirichlet, Boundary::dirichlet), 0, 20);
  const auto fine = tridiag_eigenvalues(discretize(constant_profile(1), 0, 1, 200, Boundary::dirichlet, Boundary::dirichlet), 0, 20);
  const double ratio = std::abs(coarse[0] - pi * pi) / std::abs(fine[0] - pi * pi);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("Neumann end gives a zero mode") {
  const auto op = discretize(constant_profile(3), 0.0, 3.0, 100, Boundary::neumann, Boundary::neumann);
  const auto e = tridiag_eigenvalues(op, -1, 5);
  REQUIRE(!e.empty());
  CHECK(std::abs(e[0]) < 1e-6);
}

TEST_CASE("weight jump triple on (0, 2)") {
  WeightProfile p;
  p.weights = {2, 2};
  CHECK(tridiag_eigenvalues(discretize(p, 0, 2, 500, Boundary::dirichlet, Boundary::dirichlet), 0, 25).size() == 3);
  WeightProfile q;
  q.weights = {1, 2};
  const auto e = tridiag_eigenvalues(discretize(q, 0, 2, 500, Boundary::dirichlet, Boundary::dirichlet), 0, 25);
  const auto h1 = h1_eigenvalues(1, 1, 2, 25);
  REQUIRE(e.size() == h1.size());
  for (std::size_t i = 0; i < e.size(); ++i) CHECK(std::abs(e[i] - h1[i]) < 1e-3);
}

TEST_CASE("chain clusters reproduce the free band") {
  const auto b = chain_bands({1}, Mode::simplified, 40, 100, 30.0);
  REQUIRE(b.intervals.size() == 1);
  CHECK(b.intervals[0].lo < 0.05);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(discretize(constant_profile(2), 0, 2, 4, Boundary::dirichlet, Boundary::dirichlet), Error);
  CHECK_THROWS_AS(discretize(constant_profile(2), 0, 5, 100, Boundary::dirichlet, Boundary::dirichlet), Error);
  CHECK_THROWS_AS(make_tridiagonal({1, 2}, {1, 2}), Error);
}
