#include "qgspec/sl_core.hpp"

#include <cmath>

#include "qgspec/error.hpp"

namespace qgs {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::graph: return "graph";
    case Mode::simplified: return "simplified";
    case Mode::verbatim: return "verbatim";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "graph") return Mode::graph;
  if (s == "simplified") return Mode::simplified;
  if (s == "verbatim") return Mode::verbatim;
  fail(ErrorCode::invalid_argument, "unknown mode '" + s + "' (expected graph, simplified or verbatim)");
}

cdouble sqrt_minus_z(cdouble z) {
  if (z.imag() == 0.0 && z.real() >= 0.0) return {0.0, std::sqrt(z.real())};
  return std::sqrt(-z);
}

SpectralParameter::SpectralParameter(cdouble z_) : z(z_), r(sqrt_minus_z(z_)) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()), "spectral parameter must be finite");
}

double WeightProfile::at(long n) const {
  if (n < origin || n >= end()) fail(ErrorCode::out_of_range, "cell " + std::to_string(n) + " outside weight profile");
  return weights[static_cast<std::size_t>(n - origin)];
}

WeightProfile WeightProfile::shifted(long cells) const {
  require(cells >= 0 && cells < static_cast<long>(weights.size()), "shift exceeds profile length");
  WeightProfile p;
  p.origin = origin;
  p.mode = mode;
  p.weights.assign(weights.begin() + cells, weights.end());
  return p;
}

WeightProfile weights_from_spheres(const SymbolWindow& window, Mode mode) {
  require(mode != Mode::verbatim, "verbatim mode has no weight profile");
  WeightProfile p;
  p.origin = window.origin;
  p.mode = mode;
  if (mode == Mode::graph) {
    require(window.size() >= 2, "graph mode needs a window of length >= 2");
    for (std::size_t i = 0; i + 1 < window.size(); ++i)
      p.weights.push_back(static_cast<double>(window.data[i]) * window.data[i + 1]);
  } else {
    for (int s : window.data) p.weights.push_back(s);
  }
  return p;
}

std::vector<double> periodic_weights(const std::vector<int>& word, Mode mode) {
  require(!word.empty(), "periodic word is empty");
  require(mode != Mode::verbatim, "verbatim mode has no weight profile");
  std::vector<double> w(word.size());
  for (std::size_t j = 0; j < word.size(); ++j) {
    w[j] = mode == Mode::graph ? static_cast<double>(word[j]) * word[(j + 1) % word.size()] : word[j];
  }
  return w;
}

cdouble sinhc(cdouble x) {
  if (std::abs(x) < 1e-4) {
    const cdouble x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

namespace {

double sinc_real(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  return std::sin(x) / x;
}

double sinhc_real(double x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0 + x * x * x * x / 120.0;
  return std::sinh(x) / x;
}

// cos and sinc-type pair for real energy over length len: (c, len * s(k len))
std::pair<double, double> trig_pair(double E, double len) {
  if (E >= 0.0) {
    const double k = std::sqrt(E);
    return {std::cos(k * len), len * sinc_real(k * len)};
  }
  const double k = std::sqrt(-E);
  return {std::cosh(k * len), len * sinhc_real(k * len)};
}

// keep |Re r| * len per sub-step below this so cosh never overflows
constexpr double kMaxExponent = 50.0;

int substeps(double growth_rate, double len) {
  const double g = growth_rate * len;
  return g > kMaxExponent ? static_cast<int>(std::ceil(g / kMaxExponent)) : 1;
}

ScaledMat2 scaled_cell(double w, const SpectralParameter& sp, double len) {
  ScaledMat2 out;
  const int n = substeps(std::abs(sp.r.real()), len);
  const Mat2 step = cell_matrix(w, sp, len / n);
  for (int i = 0; i < n; ++i) out.left_multiply(step);
  out.renormalize();
  return out;
}

ScaledRealMat2 scaled_cell_real(double w, double E, double len) {
  ScaledRealMat2 out;
  const int n = substeps(E < 0.0 ? std::sqrt(-E) : 0.0, len);
  const RealMat2 step = cell_matrix_real(w, E, len / n);
  for (int i = 0; i < n; ++i) out.left_multiply(step);
  out.renormalize();
  return out;
}

// small cache keyed by weight; profiles use only a handful of distinct weights
template <class Cell>
struct CellCache {
  std::vector<std::pair<double, Cell>> entries;
  template <class Make>
  const Cell& get(double w, Make make) {
    for (const auto& e : entries)
      if (e.first == w) return e.second;
    entries.emplace_back(w, make(w));
    return entries.back().second;
  }
};

}  // namespace

Mat2 cell_matrix(double w, const SpectralParameter& sp, double len) {
  require(len > 0.0, "cell length must be positive");
  require(w > 0.0, "weight must be positive");
  const cdouble x = sp.r * len;
  const cdouble ch = std::cosh(x);
  const cdouble sh = len * sinhc(x);  // sinh(r len) / r
  return {ch, sh / w, -w * sp.z * sh, ch};
}

RealMat2 cell_matrix_real(double w, double E, double len) {
  require(len > 0.0, "cell length must be positive");
  require(w > 0.0, "weight must be positive");
  const auto [c, s] = trig_pair(E, len);
  return {c, s / w, -w * E * s, c};
}

ScaledMat2 propagator(const WeightProfile& profile, const SpectralParameter& sp, double x_from, double x_to) {
  const double lo = static_cast<double>(profile.origin);
  const double hi = static_cast<double>(profile.end());
  if (!(x_from >= lo && x_from <= hi && x_to >= lo && x_to <= hi)) {
    fail(ErrorCode::out_of_range, "propagation interval outside profile support");
  }
  if (x_to < x_from) {
    ScaledMat2 fwd = propagator(profile, sp, x_to, x_from);
    fwd.m = fwd.m.unimodular_inverse();
    return fwd;
  }
  ScaledMat2 out;
  CellCache<ScaledMat2> cache;
  double x = x_from;
  while (x < x_to) {
    long n = static_cast<long>(std::floor(x));
    if (n >= profile.end()) n = profile.end() - 1;
    const double cell_end = std::min(static_cast<double>(n + 1), x_to);
    const double len = cell_end - x;
    if (len > 0.0) {
      const double w = profile.at(n);
      if (len == 1.0) {
        out.left_multiply(cache.get(w, [&](double ww) { return scaled_cell(ww, sp, 1.0); }));
      } else {
        out.left_multiply(scaled_cell(w, sp, len));
      }
    }
    x = cell_end;
  }
  out.renormalize();
  return out;
}

StateVector propagate(const WeightProfile& profile, const SpectralParameter& sp, double x_from, double x_to,
                      const StateVector& state) {
  const ScaledMat2 P = propagator(profile, sp, x_from, x_to);
  StateVector s = P.m * state;
  const double f = std::exp(P.log_scale);
  return {s.u * f, s.p * f};
}

ScaledRealMat2 monodromy_real(const std::vector<double>& weights, double E) {
  ScaledRealMat2 out;
  CellCache<ScaledRealMat2> cache;
  for (double w : weights) out.left_multiply(cache.get(w, [&](double ww) { return scaled_cell_real(ww, E, 1.0); }));
  out.renormalize();
  return out;
}

ScaledMat2 monodromy(const std::vector<double>& weights, const SpectralParameter& sp) {
  ScaledMat2 out;
  CellCache<ScaledMat2> cache;
  for (double w : weights) out.left_multiply(cache.get(w, [&](double ww) { return scaled_cell(ww, sp, 1.0); }));
  out.renormalize();
  return out;
}

DirichletNeumann dirichlet_neumann(const WeightProfile& profile, const SpectralParameter& sp, double x) {
  require(x >= 0.0, "x must be >= 0");
  const ScaledMat2 P = propagator(profile, sp, 0.0, x);
  DirichletNeumann dn;
  dn.theta = P.m.a;
  dn.theta_q = P.m.c;
  dn.phi = P.m.b;
  dn.phi_q = P.m.d;
  dn.log_scale = P.log_scale;
  return dn;
}

double growth_coefficient(const SymbolWindow& window, long n) {
  require(n >= 0, "n must be >= 0");
  if (!window.covers(0, n)) fail(ErrorCode::out_of_range, "window does not cover 0..n");
  double c = 1.0 / window.at(0);
  for (long k = 1; k <= n; ++k) c *= static_cast<double>(window.at(k) + window.at(k - 1)) / (2.0 * window.at(k));
  return c;
}

namespace {

DirichletNeumann residual_solutions(const SymbolWindow& window, double x, cdouble z) {
  require(x > 0.0, "x must be positive");
  require(std::abs(x - std::round(x)) > 1e-9, "x must not be an integer");
  require(z.imag() != 0.0, "z must lie off the real axis");
  const long n = static_cast<long>(std::floor(x));
  if (!window.covers(0, n)) fail(ErrorCode::out_of_range, "window does not cover 0..floor(x)");
  const WeightProfile profile = weights_from_spheres(window.slice(0, static_cast<std::size_t>(n + 1)), Mode::simplified);
  return dirichlet_neumann(profile, SpectralParameter(z), x);
}

}  // namespace

cdouble asymptotic_residual(const SymbolWindow& window, double x, cdouble z) {
  const auto dn = residual_solutions(window, x, z);
  const cdouble r = sqrt_minus_z(z);
  const double c = growth_coefficient(window, static_cast<long>(std::floor(x)));
  return dn.phi * 2.0 * r * std::exp(dn.log_scale - r * x) / c;
}

cdouble asymptotic_theta_residual(const SymbolWindow& window, double x, cdouble z) {
  const auto dn = residual_solutions(window, x, z);
  const cdouble r = sqrt_minus_z(z);
  const double c = growth_coefficient(window, static_cast<long>(std::floor(x))) * window.at(0);
  return dn.theta * 2.0 * std::exp(dn.log_scale - r * x) / c;
}

RealMat2 paper_step_matrix(double E, int f0, int f2) {
  require(f0 >= 1 && f2 >= 1, "symbols must be >= 1");
  const auto [c, s] = trig_pair(E, 1.0);
  const double a = f0, b = f2;
  return {b * c / a, b * s, -E * s / b, a * c / b};
}

ScaledRealMat2 paper_cocycle_scaled(const SymbolWindow& window, double E, long n, long base) {
  if (n == 0) return {};
  const long start = n > 0 ? base : base + n;
  const long count = std::abs(n);
  if (!window.covers(start, start + count + 1)) fail(ErrorCode::out_of_range, "window too short for cocycle");
  ScaledRealMat2 out;
  for (long j = start; j < start + count; ++j) out.left_multiply(paper_step_matrix(E, window.at(j), window.at(j + 2)));
  out.renormalize();
  if (n < 0) out.m = out.m.unimodular_inverse();
  return out;
}

RealMat2 paper_cocycle(const SymbolWindow& window, double E, long n, long base) {
  const ScaledRealMat2 s = paper_cocycle_scaled(window, E, n, base);
  RealMat2 m = s.m;
  m *= std::exp(s.log_scale);
  return m;
}

}  // namespace qgs
