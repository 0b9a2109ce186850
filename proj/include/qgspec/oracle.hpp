#pragma once

#include <string>
#include <vector>

#include "qgspec/band_set.hpp"
#include "qgspec/sl_core.hpp"

namespace qgs {

enum class Boundary { dirichlet, neumann };

// Symmetric tridiagonal matrix: diag[i], off[i] couples i and i+1.
struct DiscreteOperator {
  double h = 0.0;
  double x_lo = 0.0;
  std::vector<double> diag;
  std::vector<double> off;
  Boundary bc_lo = Boundary::dirichlet;
  Boundary bc_hi = Boundary::dirichlet;

  std::size_t dimension() const { return diag.size(); }
};

DiscreteOperator make_tridiagonal(std::vector<double> diag, std::vector<double> off);

// Flux-form finite differences for -(1/mu)(mu u')' on [x_lo, x_hi], step h = 1/M,
// node masses (w_left + w_right)/2, symmetrised by the square roots of the masses.
DiscreteOperator discretize(const WeightProfile& profile, double x_lo, double x_hi, int M, Boundary bc_lo,
                            Boundary bc_hi);

// Number of eigenvalues strictly below E.
long sturm_count(const DiscreteOperator& op, double E);

// All eigenvalues in [E_lo, E_hi), bisected to relative 1e-10.
std::vector<double> tridiag_eigenvalues(const DiscreteOperator& op, double E_lo, double E_hi);

// Splits a sorted Dirichlet-chain spectrum into band clusters (spacing more
// than 5x the local median starts a new cluster; clusters under 4 levels are
// edge states). Each edge is extrapolated from its three outermost levels,
// which sit at Delta = 2 cos(j pi / n_periods), j = 1, 2, 3.
BandSet cluster_band_edges(const std::vector<double>& eigenvalues, int n_periods);

// Eigenvalues of n_periods copies of the period with Dirichlet ends, then the clusters.
BandSet chain_bands(const std::vector<int>& period, Mode mode, int n_periods, int M, double E_max);

std::string eigenvalues_csv(const std::vector<double>& eigenvalues);

}  // namespace qgs
