#include "qgspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qgspec/error.hpp"
#include "qgspec/io.hpp"

namespace qgs {

DiscreteOperator make_tridiagonal(std::vector<double> diag, std::vector<double> off) {
  require(!diag.empty(), "matrix must be nonempty");
  require(off.size() + 1 == diag.size(), "off-diagonal must have dimension - 1 entries");
  DiscreteOperator op;
  op.diag = std::move(diag);
  op.off = std::move(off);
  return op;
}

DiscreteOperator discretize(const WeightProfile& profile, double x_lo, double x_hi, int M, Boundary bc_lo,
                            Boundary bc_hi) {
  require(x_lo < x_hi, "need x_lo < x_hi");
  require(x_lo == std::floor(x_lo) && x_hi == std::floor(x_hi), "endpoints must be integers");
  require(M >= 16, "need at least 16 grid steps per cell");
  if (x_lo < static_cast<double>(profile.origin) || x_hi > static_cast<double>(profile.end())) {
    fail(ErrorCode::out_of_range, "interval outside profile support");
  }
  const long cells = static_cast<long>(x_hi - x_lo);
  const long segments = cells * M;
  const double h = 1.0 / M;
  const long first_cell = static_cast<long>(x_lo);
  auto seg_weight = [&](long s) { return profile.at(first_cell + s / M); };  // segment s = [x_s, x_{s+1}]

  const long i0 = bc_lo == Boundary::dirichlet ? 1 : 0;
  const long i1 = bc_hi == Boundary::dirichlet ? segments - 1 : segments;
  require(i1 >= i0, "no interior nodes");
  const std::size_t n = static_cast<std::size_t>(i1 - i0 + 1);
  std::vector<double> mass(n), stiff(n), diag(n), off(n - 1);
  for (long i = i0; i <= i1; ++i) {
    const double wl = i > 0 ? seg_weight(i - 1) : 0.0;
    const double wr = i < segments ? seg_weight(i) : 0.0;
    mass[i - i0] = 0.5 * (wl + wr);
    stiff[i - i0] = (wl + wr) / (h * h);
  }
  for (std::size_t k = 0; k < n; ++k) diag[k] = stiff[k] / mass[k];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double w = seg_weight(i0 + static_cast<long>(k));
    off[k] = -w / (h * h * std::sqrt(mass[k] * mass[k + 1]));
  }
  DiscreteOperator op = make_tridiagonal(std::move(diag), std::move(off));
  op.h = h;
  op.x_lo = x_lo;
  op.bc_lo = bc_lo;
  op.bc_hi = bc_hi;
  return op;
}

long sturm_count(const DiscreteOperator& op, double E) {
  long count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min() * 1e10;
  for (std::size_t i = 0; i < op.diag.size(); ++i) {
    const double e2 = i > 0 ? op.off[i - 1] * op.off[i - 1] : 0.0;
    q = op.diag[i] - E - (i > 0 ? e2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> tridiag_eigenvalues(const DiscreteOperator& op, double E_lo, double E_hi) {
  require(E_lo < E_hi, "need E_lo < E_hi");
  // Gershgorin bounds clip the search
  double g_lo = INFINITY, g_hi = -INFINITY;
  for (std::size_t i = 0; i < op.diag.size(); ++i) {
    const double r = (i > 0 ? std::abs(op.off[i - 1]) : 0.0) + (i + 1 < op.diag.size() ? std::abs(op.off[i]) : 0.0);
    g_lo = std::min(g_lo, op.diag[i] - r);
    g_hi = std::max(g_hi, op.diag[i] + r);
  }
  const double lo = std::max(E_lo, g_lo - 1.0), hi = std::min(E_hi, g_hi + 1.0);
  std::vector<double> out;
  if (lo >= hi) return out;
  const long c_lo = sturm_count(op, lo), c_hi = sturm_count(op, hi);
  for (long k = c_lo; k < c_hi; ++k) {
    // k-th eigenvalue (0-based): smallest x with count(x) > k
    double a = lo, b = hi;
    while (b - a > 1e-10 * std::max(1.0, std::abs(a) + std::abs(b)) * 0.5) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if (sturm_count(op, m) > k) b = m; else a = m;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

namespace {

double extrapolate_edge(const double* E, int n_periods) {
  // quadratic in t = theta^2 through three levels, evaluated at t = 0
  double t[3];
  for (int j = 0; j < 3; ++j) {
    const double th = (j + 1) * std::numbers::pi / n_periods;
    t[j] = th * th;
  }
  double e0 = 0.0;
  for (int j = 0; j < 3; ++j) {
    double l = 1.0;
    for (int k = 0; k < 3; ++k)
      if (k != j) l *= (0.0 - t[k]) / (t[j] - t[k]);
    e0 += E[j] * l;
  }
  return e0;
}

}  // namespace

BandSet cluster_band_edges(const std::vector<double>& eigenvalues, int n_periods) {
  require(n_periods >= 4, "need at least 4 periods");
  BandSet out;
  out.provenance = "dirichlet-chain clusters";
  const std::size_t n = eigenvalues.size();
  if (n < 4) return out;
  std::vector<double> gap(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) gap[i] = eigenvalues[i + 1] - eigenvalues[i];
  std::vector<std::size_t> breaks;  // cluster boundaries: index of first element of each cluster
  breaks.push_back(0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t a = i >= 5 ? i - 5 : 0, b = std::min(n - 1, i + 6);
    std::vector<double> local(gap.begin() + static_cast<long>(a), gap.begin() + static_cast<long>(b));
    std::nth_element(local.begin(), local.begin() + static_cast<long>(local.size() / 2), local.end());
    const double med = local[local.size() / 2];
    if (gap[i] > 5.0 * med) breaks.push_back(i + 1);
  }
  breaks.push_back(n);
  for (std::size_t c = 0; c + 1 < breaks.size(); ++c) {
    const std::size_t first = breaks[c], last = breaks[c + 1];
    if (last - first < 4) continue;  // edge states
    const double bottom[3] = {eigenvalues[first], eigenvalues[first + 1], eigenvalues[first + 2]};
    const double top[3] = {eigenvalues[last - 1], eigenvalues[last - 2], eigenvalues[last - 3]};
    out.intervals.push_back({extrapolate_edge(bottom, n_periods), extrapolate_edge(top, n_periods)});
  }
  return out;
}

BandSet chain_bands(const std::vector<int>& period, Mode mode, int n_periods, int M, double E_max) {
  require(n_periods >= 4, "need at least 4 periods");
  const std::vector<double> one = periodic_weights(period, mode);
  WeightProfile profile;
  profile.mode = mode;
  for (int k = 0; k < n_periods; ++k) profile.weights.insert(profile.weights.end(), one.begin(), one.end());
  const DiscreteOperator op = discretize(profile, 0.0, static_cast<double>(profile.size()), M, Boundary::dirichlet,
                                         Boundary::dirichlet);
  // look past E_max so the band straddling it is complete, then clip it
  const double cutoff = 1.5 * E_max + 20.0;
  const std::vector<double> eigs = tridiag_eigenvalues(op, -1.0, cutoff);
  BandSet all = cluster_band_edges(eigs, n_periods);
  BandSet out;
  out.provenance = "dirichlet-chain";
  for (const auto& iv : all.intervals)
    if (iv.lo < E_max) out.intervals.push_back({iv.lo, std::min(iv.hi, E_max)});
  out.resolution = 1.0 / (static_cast<double>(M) * M);
  return out;
}

std::string eigenvalues_csv(const std::vector<double>& eigenvalues) {
  std::string out = csv_row({"index", "E"});
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) out += csv_row({std::to_string(i), fmt(eigenvalues[i])});
  return out;
}

}  // namespace qgs
