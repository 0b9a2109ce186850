#pragma once

#include <string>
#include <vector>

#include "qgspec/sequences.hpp"
#include "qgspec/sl_core.hpp"

namespace qgs {

struct LyapunovEstimate {
  double E = 0.0;
  double value = 0.0;   // mean finite-scale rate over base points
  double spread = 0.0;  // max - min over base points
  long n_steps = 0;
  int n_bases = 0;
  Mode mode = Mode::graph;
  bool monotone_growth = false;  // log-norm increased at every checkpoint past burn-in, on every base
  std::vector<double> per_base;
};

constexpr long kLyapunovBurnIn = 100;

// Rate (log|P_n| - log|P_burn|) / (n - burn), clamped at 0, averaged over
// n_bases starting points spaced along the orbit.
LyapunovEstimate lyapunov_estimate(const SubshiftSpec& spec, double E, long n_steps, int n_bases,
                                   Mode mode = Mode::graph);

// max over bases of |rate - mean|
double uniformity_spread(const SubshiftSpec& spec, double E, long n_steps, int n_bases, Mode mode = Mode::graph);

enum class EnergyClass { zero_candidate, hyperbolic_candidate, undecided };
const char* to_string(EnergyClass c);

struct ClassifyThresholds {
  double eps_zero = 1e-2;
  double eps_hyp = 1e-1;
};

EnergyClass classify(const LyapunovEstimate& est, const ClassifyThresholds& th = {});
EnergyClass classify_energy(const SubshiftSpec& spec, double E, const ClassifyThresholds& th = {},
                            long n_steps = 10000, int n_bases = 8, Mode mode = Mode::graph);

struct LyapunovRow {
  LyapunovEstimate estimate;
  EnergyClass cls = EnergyClass::undecided;
};

std::vector<LyapunovRow> lyapunov_sweep(const SubshiftSpec& spec, const std::vector<double>& energies, long n_steps,
                                        int n_bases, Mode mode, const ClassifyThresholds& th, unsigned workers = 1);

// CSV with columns E,L_hat,spread,n_steps,classification
std::string lyapunov_csv(const std::vector<LyapunovRow>& rows);

}  // namespace qgs
