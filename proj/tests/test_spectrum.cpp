#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "qgspec/error.hpp"
#include "qgspec/oracle.hpp"
#include "qgspec/sequences.hpp"
#include "qgspec/spectrum.hpp"

using namespace qgs;
using doctest::Approx;

namespace {

const double pi = std::acos(-1.0);

// Dirichlet eigenvalues on (0, 2) with the two cells' weights, from the finite-difference oracle
std::vector<double> oracle_h1(int s_prev, int /*s_mid*/, int s_next, double E_max) {
  WeightProfile p;
  p.weights = {static_cast<double>(s_prev), static_cast<double>(s_next)};
  const auto op = discretize(p, 0.0, 2.0, 500, Boundary::dirichlet, Boundary::dirichlet);
  return tridiag_eigenvalues(op, 0.0, E_max);
}

}  // namespace

TEST_CASE("free Floquet band") {
  const auto b = floquet_bands({1}, Mode::graph, 0.0, 40.0, 1e-10);
  REQUIRE(b.intervals.size() == 1);
  CHECK(b.intervals[0].lo == Approx(0.0).epsilon(1e-9));
  CHECK(b.intervals[0].hi == Approx(40.0).epsilon(1e-9));
  CHECK(floquet_discriminant({1}, Mode::graph, 7.0) == Approx(2 * std::cos(std::sqrt(7.0))));
}

TEST_CASE("period-2 Floquet edges match the chain oracle") {
  for (Mode mode : {Mode::simplified, Mode::graph}) {
    const auto fl = floquet_bands({1, 2}, mode, 0.0, 40.0, 1e-10);
    const auto ch = chain_bands({1, 2}, mode, 40, 200, 40.0);
    CHECK(fl.valid());
    // each oracle band edge is close to a Floquet band edge
    for (const auto& iv : ch.intervals) {
      for (double e : {iv.lo, iv.hi}) {
        double best = INFINITY;
        for (const auto& f : fl.intervals) best = std::min({best, std::abs(f.lo - e), std::abs(f.hi - e)});
        CHECK(best < 5e-3 * std::max(1.0, e / 10));
      }
    }
  }
}

TEST_CASE("band edges sit at |trace| = 2") {
  const std::vector<int> per = {1, 2, 1, 1, 2};
  const auto b = floquet_bands(per, Mode::graph, 0.0, 40.0, 1e-10);
  for (const auto& iv : b.intervals) {
    for (double e : {iv.lo, iv.hi}) {
      if (e == 0.0 || e == 40.0) continue;
      CHECK(std::abs(std::abs(floquet_discriminant(per, Mode::graph, e)) - 2.0) < 1e-6);
    }
    CHECK(std::abs(floquet_discriminant(per, Mode::graph, 0.5 * (iv.lo + iv.hi))) <= 2.0 + 1e-9);
  }
}

TEST_CASE("Floquet bands are periodic-shift invariant") {
  const auto a = floquet_bands({1, 2, 2}, Mode::simplified, 0.0, 30.0, 1e-10);
  const auto b = floquet_bands({2, 1, 2}, Mode::simplified, 0.0, 30.0, 1e-10);
  REQUIRE(a.intervals.size() == b.intervals.size());
  for (std::size_t i = 0; i < a.intervals.size(); ++i) {
    CHECK(a.intervals[i].lo == Approx(b.intervals[i].lo).epsilon(1e-8));
    CHECK(a.intervals[i].hi == Approx(b.intervals[i].hi).epsilon(1e-8));
  }
}

TEST_CASE("h1 eigenvalues") {
  const std::vector<double> expect = {pi * pi / 4, pi * pi, 9 * pi * pi / 4};
  for (auto t : {std::array<int, 3>{1, 2, 1}, std::array<int, 3>{1, 1, 1}, std::array<int, 3>{2, 1, 2},
                 std::array<int, 3>{2, 2, 1}}) {
    const auto e = h1_eigenvalues(t[0], t[1], t[2], 25.0);
    REQUIRE(e.size() == 3);
    const auto o = oracle_h1(t[0], t[1], t[2], 25.0);
    REQUIRE(o.size() == 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(e[i] == Approx(expect[i]).epsilon(1e-10));
      CHECK(std::abs(e[i] - o[i]) < 1e-3);
    }
  }
}

TEST_CASE("h2 eigenvalues") {
  CHECK(h2_eigenvalues(10.0) == std::vector<double>{pi * pi});
  const auto e = h2_eigenvalues(40.0);
  REQUIRE(e.size() == 2);
  CHECK(e[1] == 4 * pi * pi);
  CHECK(h2_eigenvalues(0.5).empty());
}

TEST_CASE("free assembly has no point parts") {
  const auto r = assemble_spectrum(parse_subshift("constant:1"), 40.0, 10, 1e-4);
  CHECK(r.sigma1.empty());
  CHECK(r.sigma2.empty());
  REQUIRE(r.continuum.intervals.size() == 1);
  CHECK(r.continuum.intervals[0].hi == Approx(40.0));
  CHECK(r.continuum_source == "floquet");
}

TEST_CASE("fibonacci assembly") {
  const auto r = assemble_spectrum(parse_subshift("fibonacci"), 40.0, 10, 1e-3);
  CHECK(r.continuum_source == "escape");
  REQUIRE(r.sigma2.size() == 2);
  CHECK(r.sigma2[0].E == pi * pi);
  CHECK(r.sigma2[1].E == 4 * pi * pi);
  CHECK(r.assembled.contains(pi * pi));
  CHECK(r.assembled.contains(4 * pi * pi));
  // only the triple with s_mid = 2 contributes; the Fibonacci triple around a 2 is (1, 2, 1)
  REQUIRE(!r.sigma1.empty());
  for (const auto& e : r.sigma1) {
    CHECK(e.triple == std::array<int, 3>{1, 2, 1});
    CHECK(e.multiplicity == 1);
    CHECK(r.assembled.contains(e.E));
  }
  CHECK(r.sigma1.size() == 4);
  CHECK(r.continuum.subset_of(r.assembled));

  const auto j = nlohmann::json::parse(spectrum_json(r));
  CHECK(j["sigma2"].size() == 2);
  CHECK(j["total_measure"].get<double>() == Approx(r.continuum.measure()));
  CHECK(j["params"]["continuum"] == "escape");
}

TEST_CASE("period-2 assembly") {
  const auto r = assemble_spectrum(parse_subshift("periodic:1 2"), 30.0, 10, 1e-6);
  CHECK(r.continuum_source == "floquet");
  const auto fl = floquet_bands({1, 2}, Mode::graph, 0.0, 30.0, 1e-6);
  CHECK(bands_csv(fl) == bands_csv(r.continuum));
  // two distinct triples (2,1,2) and (1,2,1); only the latter has s_mid - 1 > 0
  for (const auto& e : r.sigma1) CHECK(e.triple == std::array<int, 3>{1, 2, 1});
  CHECK(r.sigma2.size() == 1);
}

TEST_CASE("plot data and sigma csv") {
  const auto r = assemble_spectrum(parse_subshift("fibonacci"), 40.0, 6, 1e-2);
  const auto plot = spectrum_plot_data(r, 101);
  CHECK(plot.rfind("E,indicator\n", 0) == 0);
  CHECK(std::count(plot.begin(), plot.end(), '\n') == 102);
  const auto csv = sigma_csv(r);
  CHECK(csv.rfind("set,E,s_prev,s_mid,s_next,multiplicity\n", 0) == 0);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(floquet_bands({1, 2}, Mode::verbatim, 0, 10, 1e-6), Error);
  CHECK_THROWS_AS(floquet_bands({}, Mode::graph, 0, 10, 1e-6), Error);
  CHECK_THROWS_AS(assemble_spectrum(parse_subshift("fibonacci"), -1.0, 10, 1e-3), Error);
}
