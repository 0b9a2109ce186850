#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qgspec/error.hpp"
#include "qgspec/lyapunov.hpp"
#include "qgspec/sequences.hpp"
#include "qgspec/tracemap.hpp"

using namespace qgs;

namespace {
const SubshiftSpec one = parse_subshift("constant:1");
const SubshiftSpec fib = parse_subshift("fibonacci");
}  // namespace

TEST_CASE("free case") {
  for (double E : {1.0, 4.0, 10.0}) CHECK(lyapunov_estimate(one, E, 10000, 4).value < 1e-3);
  // one-step matrix [[cosh 1, sinh 1], [sinh 1, cosh 1]] has top eigenvalue e
  CHECK(std::abs(lyapunov_estimate(one, -1.0, 10000, 4).value - 1.0) < 1e-3);
  CHECK(std::abs(lyapunov_estimate(one, -4.0, 10000, 4).value - 2.0) < 1e-3);
}

TEST_CASE("free case is uniform across bases") {
  for (double E : {0.0, 2.0, 17.0}) CHECK(lyapunov_estimate(one, E, 10000, 6).spread < 1e-6);
}

TEST_CASE("periodic words are uniform") {
  const auto est = lyapunov_estimate(parse_subshift("periodic:1 2"), 0.7, 10000, 6);
  CHECK(est.spread < 1e-3);
}

TEST_CASE("fibonacci below the spectrum grows exponentially") {
  const auto est = lyapunov_estimate(fib, -5.0, 10000, 4);
  CHECK(est.value > 0.5);
  CHECK(est.monotone_growth);
  CHECK(escape_index(-5.0, 30).escaped);
  CHECK(classify(est) == EnergyClass::hyperbolic_candidate);
}

TEST_CASE("fibonacci at E = 1") {
  const auto est = lyapunov_estimate(fib, 1.0, 10000, 8);
  CHECK(est.spread < 0.05);
  CHECK(uniformity_spread(fib, 1.0, 10000, 8) < 0.05);
}

TEST_CASE("classification") {
  CHECK(classify_energy(one, 1.0) == EnergyClass::zero_candidate);
  CHECK(classify_energy(fib, -5.0) == EnergyClass::hyperbolic_candidate);
  LyapunovEstimate mid;
  mid.value = 0.05;
  CHECK(classify(mid) == EnergyClass::undecided);
  CHECK(std::string(to_string(EnergyClass::undecided)) == "undecided");
}

TEST_CASE("zero-exponent energies sit in the escape-free set") {
  // an energy with a bounded trace orbit (not escaped by N = 25) has a small exponent
  const auto bands = escape_band_set(0.5, 3.0, 14, 1e-3);
  REQUIRE(!bands.intervals.empty());
  const auto& widest = *std::max_element(bands.intervals.begin(), bands.intervals.end(),
                                         [](const Interval& a, const Interval& b) { return a.length() < b.length(); });
  const double E = 0.5 * (widest.lo + widest.hi);
  CHECK(lyapunov_estimate(fib, E, 20000, 4).value < 0.05);
}

TEST_CASE("sweep is deterministic across worker counts") {
  const std::vector<double> E = {-3.0, -1.0, 0.5, 2.0, 9.0};
  const auto a = lyapunov_csv(lyapunov_sweep(fib, E, 2000, 3, Mode::graph, {}, 1));
  const auto b = lyapunov_csv(lyapunov_sweep(fib, E, 2000, 3, Mode::graph, {}, 4));
  CHECK(a == b);
  CHECK(a.rfind("E,L_hat,spread,n_steps,classification\n", 0) == 0);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(lyapunov_estimate(one, 1.0, 10, 2), Error);
  CHECK_THROWS_AS(lyapunov_estimate(one, 1.0, 10000, 0), Error);
}
