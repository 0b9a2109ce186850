#pragma once

#include <array>
#include <string>
#include <vector>

#include "qgspec/band_set.hpp"
#include "qgspec/sequences.hpp"
#include "qgspec/sl_core.hpp"

namespace qgs {

struct FloquetOptions {
  int samples_per_oscillation = 64;
  double slack = 1e-12;  // |trace| <= 2 + slack counts as band
  long max_evaluations = 20'000'000;
};

// Discriminant tr M(E) of one period in canonical coordinates.
double floquet_discriminant(const std::vector<int>& period, Mode mode, double E);

// {E in [E_lo, E_hi] : |tr M(E)| <= 2}, edges bisected to tol (outer side kept).
BandSet floquet_bands(const std::vector<int>& period, Mode mode, double E_lo, double E_hi, double tol,
                      const FloquetOptions& opts = {});

// Dirichlet problem on two unit cells with weights s_prev, s_next around the
// vertex (the vertex condition only sees those two). Shooting from both ends.
std::vector<double> h1_eigenvalues(int s_prev, int s_mid, int s_next, double E_max);

// (k pi)^2 <= E_max, k >= 1
std::vector<double> h2_eigenvalues(double E_max);

struct Sigma1Entry {
  double E = 0.0;
  std::array<int, 3> triple{};
  int multiplicity = 0;  // s_mid - 1
};

struct Sigma2Entry {
  double E = 0.0;
  int multiplicity = 0;  // max over adjacent pairs of (s_n - 1)(s_{n+1} - 1)
};

struct SpectrumReport {
  BandSet continuum;
  std::vector<Sigma1Entry> sigma1;
  std::vector<Sigma2Entry> sigma2;
  BandSet assembled;
  std::string spec_text;
  double E_max = 0.0;
  int N = 0;
  double tol = 0.0;
  std::string continuum_source;  // escape / floquet / prefix-approximant
};

struct AssembleOptions {
  unsigned workers = 1;
  std::size_t sample_length = 20000;  // word length scanned for triples
  std::size_t approximant_length = 144;
};

SpectrumReport assemble_spectrum(const SubshiftSpec& spec, double E_max, int N, double tol,
                                 const AssembleOptions& opts = {});

std::string spectrum_json(const SpectrumReport& report);
std::string sigma_csv(const SpectrumReport& report);
// two columns E, indicator (1 if E lies in the assembled set)
std::string spectrum_plot_data(const SpectrumReport& report, std::size_t samples);

}  // namespace qgs
