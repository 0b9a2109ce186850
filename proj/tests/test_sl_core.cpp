#include <cmath>
#include <random>

#include "doctest.h"
#include "qgspec/error.hpp"
#include "qgspec/oracle.hpp"
#include "qgspec/sequences.hpp"
#include "qgspec/sl_core.hpp"

using namespace qgs;
using doctest::Approx;

namespace {

const double pi = std::acos(-1.0);

WeightProfile constant_profile(double w, long n, Mode mode = Mode::simplified) {
  WeightProfile p;
  p.origin = 0;
  p.weights.assign(static_cast<std::size_t>(n), w);
  p.mode = mode;
  return p;
}

WeightProfile fib_profile(long n, Mode mode = Mode::simplified, long origin = 0) {
  return weights_from_spheres(generate_word(fibonacci_rule(), origin, static_cast<std::size_t>(n + 1)), mode);
}

bool close(cdouble a, cdouble b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("weights from sphere numbers") {
  const SymbolWindow s(0, {1, 2, 1, 1});
  CHECK(weights_from_spheres(s, Mode::graph).weights == std::vector<double>{2, 2, 1});
  CHECK(weights_from_spheres(s, Mode::simplified).weights == std::vector<double>{1, 2, 1, 1});
  const SymbolWindow one(0, std::vector<int>(6, 1));
  CHECK(weights_from_spheres(one, Mode::graph).weights == std::vector<double>(5, 1.0));
  CHECK(periodic_weights({1, 2}, Mode::graph) == std::vector<double>{2, 2});
  CHECK(periodic_weights({1, 2, 2}, Mode::graph) == std::vector<double>{2, 4, 2});
}

TEST_CASE("cell matrix examples") {
  const Mat2 m0 = cell_matrix(1.0, SpectralParameter(cdouble(0, 0)));
  CHECK(close(m0.a, 1.0, 1e-15));
  CHECK(close(m0.b, 1.0, 1e-15));
  CHECK(close(m0.c, 0.0, 1e-15));
  CHECK(close(m0.d, 1.0, 1e-15));
  const Mat2 mp = cell_matrix(1.0, SpectralParameter::energy(pi * pi));
  CHECK(close(mp.a, -1.0, 1e-14));
  CHECK(close(mp.b, 0.0, 1e-14));
  CHECK(close(mp.c, 0.0, 1e-13));
  CHECK(close(mp.d, -1.0, 1e-14));
  const Mat2 m2 = cell_matrix(2.0, SpectralParameter(cdouble(-1, 0)));
  CHECK(close(m2.a, std::cosh(1.0), 1e-14));
  CHECK(close(m2.b, std::sinh(1.0) / 2, 1e-14));
  CHECK(close(m2.c, 2 * std::sinh(1.0), 1e-14));
  CHECK(close(m2.d, std::cosh(1.0), 1e-14));
}

TEST_CASE("cell matrices are unimodular and the real form agrees") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-50, 50), W(0.5, 4);
  for (int t = 0; t < 500; ++t) {
    const double w = W(rng), E = U(rng);
    const Mat2 m = cell_matrix(w, SpectralParameter::energy(E));
    const RealMat2 r = cell_matrix_real(w, E);
    CHECK(std::abs(m.det() - 1.0) < 1e-9 * std::max(1.0, m.max_abs() * m.max_abs()));
    CHECK(std::abs(m.a - r.a) < 1e-10 * std::max(1.0, r.max_abs()));
    CHECK(std::abs(m.c - r.c) < 1e-10 * std::max(1.0, r.max_abs()));
    const cdouble z(U(rng), U(rng));
    const Mat2 mz = cell_matrix(w, SpectralParameter(z));
    CHECK(std::abs(mz.det() - 1.0) < 1e-8 * std::max(1.0, mz.max_abs() * mz.max_abs()));
  }
}

TEST_CASE("sqrt(-z) branch has positive real part off the nonnegative axis") {
  for (cdouble z : {cdouble(1, 1), cdouble(-3, 0), cdouble(5, -2), cdouble(0, 1)}) CHECK(sqrt_minus_z(z).real() > 0);
  const cdouble r = sqrt_minus_z(cdouble(4, 0));
  CHECK(close(r, cdouble(0, 2), 1e-15));
}

TEST_CASE("propagation basics") {
  const auto p = constant_profile(1.0, 10);
  const StateVector s{cdouble(0.3, 0.1), cdouble(-2, 0)};
  const auto same = propagate(p, SpectralParameter(cdouble(2, 1)), 3.5, 3.5, s);
  CHECK(close(same.u, s.u, 0));
  CHECK(close(same.p, s.p, 0));
  const auto e = propagate(p, SpectralParameter(cdouble(-1, 0)), 0.0, 1.0, {1.0, 1.0});
  CHECK(close(e.u, std::exp(1.0), 1e-13));
  CHECK(close(e.p, std::exp(1.0), 1e-13));
}

TEST_CASE("propagation composes and reverses") {
  const auto p = fib_profile(40);
  const SpectralParameter sp(cdouble(3.7, 0.4));
  const StateVector s0{1.0, cdouble(0.2, -0.5)};
  const auto a = propagate(p, sp, 0.3, 17.8, s0);
  const auto b = propagate(p, sp, 0.3, 9.25, s0);
  const auto c = propagate(p, sp, 9.25, 17.8, b);
  CHECK(close(a.u, c.u, 1e-9 * std::abs(a.u)));
  CHECK(close(a.p, c.p, 1e-9 * std::abs(a.p)));
  const auto back = propagate(p, sp, 17.8, 0.3, a);
  CHECK(close(back.u, s0.u, 1e-8));
  CHECK(close(back.p, s0.p, 1e-8));
}

TEST_CASE("free solutions") {
  const auto p = constant_profile(1.0, 20);
  for (cdouble z : {cdouble(0, 1), cdouble(-2, 0.5), cdouble(9, 3)}) {
    const cdouble r = sqrt_minus_z(z);
    for (double x : {0.5, 2.0, 7.25}) {
      const auto dn = dirichlet_neumann(p, SpectralParameter(z), x);
      const double s = std::exp(dn.log_scale);
      CHECK(close(dn.phi * s, std::sinh(r * x) / r, 1e-10 * std::abs(std::sinh(r * x) / r)));
      CHECK(close(dn.theta * s, std::cosh(r * x), 1e-10 * std::abs(std::cosh(r * x))));
    }
  }
}

TEST_CASE("Wronskian is conserved along fibonacci profiles") {
  const auto p = fib_profile(20);
  const SpectralParameter sp(cdouble(2.5, 0.7));
  const auto d0 = dirichlet_neumann(p, sp, 0.0);
  const auto d10 = dirichlet_neumann(p, sp, 10.0);
  CHECK(close(d0.wronskian(), -1.0, 1e-14));
  CHECK(close(d10.wronskian() * std::exp(2 * d10.log_scale), d0.wronskian(), 1e-10));
}

TEST_CASE("propagator matches the finite-difference oracle for profile 1 2") {
  // Dirichlet eigenvalues of (0, 2) with weights 1, 2: phi(E, 2) = 0 exactly there
  WeightProfile p;
  p.weights = {1.0, 2.0};
  const auto op = discretize(p, 0.0, 2.0, 400, Boundary::dirichlet, Boundary::dirichlet);
  const auto eigs = tridiag_eigenvalues(op, 0.0, 60.0);
  REQUIRE(eigs.size() >= 4);
  for (double E : eigs) {
    // phi changes sign across each oracle eigenvalue, within the discretisation error
    const double tol = 5e-4 * std::max(1.0, E);
    const auto lo = dirichlet_neumann(p, SpectralParameter::energy(E - tol), 2.0);
    const auto hi = dirichlet_neumann(p, SpectralParameter::energy(E + tol), 2.0);
    CHECK(lo.phi.real() * hi.phi.real() < 0);
  }
}

TEST_CASE("growth coefficient examples") {
  const SymbolWindow one(0, std::vector<int>(8, 1));
  for (long n = 0; n < 8; ++n) CHECK(growth_coefficient(one, n) == Approx(1.0));
  const auto f = generate_word(fibonacci_rule(), 0, 10);
  CHECK(growth_coefficient(f, 1) == Approx(0.75));
  CHECK(growth_coefficient(f, 2) == Approx(1.125));
}

TEST_CASE("asymptotic ratios tend to one") {
  const SymbolWindow one(0, std::vector<int>(8, 1));
  CHECK(std::abs(asymptotic_residual(one, 2.5, cdouble(0, 1e4)) - 1.0) < 1e-2);
  const auto f = generate_word(fibonacci_rule(), 0, 10);
  const cdouble z(0, 1e6);
  CHECK(std::abs(asymptotic_residual(f, 3.5, z) - 1.0) < 1e-2);
  CHECK(std::abs(asymptotic_theta_residual(f, 3.5, z) - 1.0) < 1e-2);
  // the error roughly halves when |z| quadruples (it is O(|z|^-1/2))
  const double e1 = std::abs(asymptotic_residual(f, 3.5, cdouble(0, 1e4)) - 1.0);
  const double e2 = std::abs(asymptotic_residual(f, 3.5, cdouble(0, 4e4)) - 1.0);
  CHECK(e2 < 0.75 * e1);
}

TEST_CASE("step matrix of the normalised cocycle") {
  const RealMat2 m = paper_step_matrix(0.0, 1, 2);
  CHECK(m.a == Approx(2));
  CHECK(m.b == Approx(2));
  CHECK(m.c == Approx(0));
  CHECK(m.d == Approx(0.5));
  for (double c : {1.0, 2.0, 5.0}) {
    const RealMat2 s = paper_step_matrix(7.3, static_cast<int>(c), static_cast<int>(c));
    CHECK(s.trace() == Approx(2 * std::cos(std::sqrt(7.3))));
  }
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> U(-30, 30);
  // entries of size cosh(sqrt|E|) cost that squared in the determinant, whatever the formula
  for (int t = 0; t < 1000; ++t) {
    const RealMat2 s = paper_step_matrix(U(rng), 1 + t % 3, 1 + (t / 3) % 3);
    CHECK(std::abs(s.det() - 1) <= 1e-12 * std::max(1.0, s.max_abs() * s.max_abs()));
  }
}

TEST_CASE("normalised cocycle identities") {
  const SymbolWindow one(-10, std::vector<int>(30, 1));
  const RealMat2 id = paper_cocycle(one, 3.0, 0);
  CHECK(id.a == 1.0);
  CHECK(id.d == 1.0);
  CHECK(paper_cocycle(one, pi * pi / 4, 3).trace() == Approx(0).scale(1));
  const auto f = generate_word(fibonacci_rule(), -30, 80);
  for (long n : {1L, 4L, 9L}) {
    // A(n, s) then A(-n, T^n s) returns to the start
    const RealMat2 fwd = paper_cocycle(f, 2.2, n, 0);
    const RealMat2 back = paper_cocycle(f, 2.2, -n, n);
    const RealMat2 p = back * fwd;
    CHECK(p.a == Approx(1).epsilon(1e-10));
    CHECK(p.b == Approx(0).scale(1).epsilon(1e-10));
    CHECK(p.c == Approx(0).scale(1).epsilon(1e-10));
    CHECK(p.d == Approx(1).epsilon(1e-10));
  }
}

TEST_CASE("invalid arguments") {
  CHECK_THROWS_AS(weights_from_spheres(SymbolWindow(0, {1}), Mode::graph), Error);
  CHECK_THROWS_AS(parse_mode("sideways"), Error);
  const auto p = constant_profile(1.0, 3);
  CHECK_THROWS_AS(propagate(p, SpectralParameter(cdouble(1, 0)), 0.0, 5.0, {1.0, 0.0}), Error);
}
