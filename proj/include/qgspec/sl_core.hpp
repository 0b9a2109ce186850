#pragma once

#include <string>
#include <vector>

#include "qgspec/linalg.hpp"
#include "qgspec/sequences.hpp"

namespace qgs {

// graph:      w_n = s_n s_{n+1}
// simplified: w_n = s_n
// verbatim:   the normalised cocycle built from (s_n, s_{n+2}); no weight profile
enum class Mode { graph, simplified, verbatim };

const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

// z together with r = sqrt(-z). Off [0, inf) the principal root has Re r > 0.
// On [0, inf) we take r = i sqrt(z) (Im r >= 0), so real energies E > 0 give
// cos/sin in the usual orientation.
struct SpectralParameter {
  cdouble z;
  cdouble r;

  explicit SpectralParameter(cdouble z_);
  static SpectralParameter energy(double E) { return SpectralParameter(cdouble(E, 0.0)); }
};

cdouble sqrt_minus_z(cdouble z);

// w_n on [n, n+1) for n in [origin, origin + size).
struct WeightProfile {
  long origin = 0;
  std::vector<double> weights;
  Mode mode = Mode::simplified;

  std::size_t size() const { return weights.size(); }
  long end() const { return origin + static_cast<long>(weights.size()); }
  double at(long n) const;
  WeightProfile shifted(long cells) const;  // drops the first `cells` cells, origin unchanged
};

WeightProfile weights_from_spheres(const SymbolWindow& window, Mode mode);

// Periodic weights for one period of a word; graph mode wraps s_{p-1} s_0.
std::vector<double> periodic_weights(const std::vector<int>& word, Mode mode);

// sinh(x)/x, with the series near 0.
cdouble sinhc(cdouble x);

// Propagator of (u, w u') across a cell of constant weight w and length len.
Mat2 cell_matrix(double w, const SpectralParameter& sp, double len = 1.0);

// Real-energy specialisation (cos/sin above 0, cosh/sinh below).
RealMat2 cell_matrix_real(double w, double E, double len = 1.0);

// P(x_from -> x_to); reversed intervals give the inverse.
ScaledMat2 propagator(const WeightProfile& profile, const SpectralParameter& sp, double x_from, double x_to);

StateVector propagate(const WeightProfile& profile, const SpectralParameter& sp, double x_from, double x_to,
                      const StateVector& state);

// Product over a list of unit cells, first cell applied first.
ScaledRealMat2 monodromy_real(const std::vector<double>& weights, double E);
ScaledMat2 monodromy(const std::vector<double>& weights, const SpectralParameter& sp);

struct DirichletNeumann {
  cdouble phi{}, phi_q{};      // phi and mu phi'
  cdouble theta{}, theta_q{};  // theta and mu theta'
  double log_scale = 0.0;      // all four carry exp(log_scale)
  cdouble wronskian() const { return phi * theta_q - phi_q * theta; }  // scaled by exp(2 log_scale)
};

// phi(0) = 0, mu phi'(0) = 1; theta(0) = 1, mu theta'(0) = 0. Propagation starts at x = 0.
DirichletNeumann dirichlet_neumann(const WeightProfile& profile, const SpectralParameter& sp, double x);

// (1/s_0) prod_{k=1}^{n} (s_k + s_{k-1}) / (2 s_k)
double growth_coefficient(const SymbolWindow& window, long n);

// phi(z,x) 2 r e^{-r x} / c(floor x), simplified weights from the window.
cdouble asymptotic_residual(const SymbolWindow& window, double x, cdouble z);
// theta(z,x) 2 e^{-r x} / (s_0 c(floor x)), same limit.
cdouble asymptotic_theta_residual(const SymbolWindow& window, double x, cdouble z);

// One step of the normalised cocycle, f0 = f(w), f2 = f(T^2 w).
RealMat2 paper_step_matrix(double E, int f0, int f2);

// M_n(T^base w): I for n = 0, M(T^{base+n-1} w) ... M(T^base w) for n > 0,
// M_{-n}(T^{base+n} w)^{-1} for n < 0.
ScaledRealMat2 paper_cocycle_scaled(const SymbolWindow& window, double E, long n, long base = 0);
RealMat2 paper_cocycle(const SymbolWindow& window, double E, long n, long base = 0);

}  // namespace qgs
