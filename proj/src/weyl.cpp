#include "qgspec/weyl.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "qgspec/error.hpp"
#include "qgspec/io.hpp"

namespace qgs {

namespace {

void require_origin_zero(const WeightProfile& profile) {
  require(profile.origin == 0, "Weyl computations need a profile starting at 0");
}

}  // namespace

WeylDisk weyl_disk(const WeightProfile& profile, cdouble z, double b) {
  require(z.imag() != 0.0, "Weyl disk needs Im z != 0");
  require(b >= 1.0, "b must be >= 1");
  require_origin_zero(profile);
  const ScaledMat2 P = propagator(profile, SpectralParameter(z), 0.0, b);
  // theta = (a, c), phi = (b, d), each times exp(log_scale)
  const cdouble a = P.m.a, bb = P.m.b, c = P.m.c, d = P.m.d;
  const cdouble w_phi = bb * std::conj(d) - d * std::conj(bb);
  const cdouble w_theta_phi = a * std::conj(d) - c * std::conj(bb);
  const double log_w = 2.0 * P.log_scale + std::log(std::abs(w_phi));
  if (!(std::abs(w_phi) > 0.0) || log_w < std::log(1e-300)) {
    fail(ErrorCode::internal, "degenerate Wronskian in Weyl disk");
  }
  WeylDisk disk;
  disk.z = z;
  disk.b = b;
  disk.center = -w_theta_phi / w_phi;
  disk.log_radius = -log_w;
  disk.radius = std::exp(disk.log_radius);
  return disk;
}

MFunctionSample m_function(const WeightProfile& profile, cdouble z, double tol) {
  require(z.imag() > 0.0, "m-function needs Im z > 0");
  require(tol > 0.0, "tol must be positive");
  require_origin_zero(profile);
  const double re_r = sqrt_minus_z(z).real();
  const double support = static_cast<double>(profile.end());
  require(support >= 1.0, "profile too short");
  double b = std::min(support, std::max(4.0, 20.0 / re_r));
  const double log_tol = std::log(tol);
  for (;;) {
    const WeylDisk disk = weyl_disk(profile, z, std::max(1.0, b));
    if (disk.log_radius < log_tol || b >= support) {
      MFunctionSample s;
      s.z = z;
      s.m = disk.center;
      s.radius = disk.radius;
      s.b = disk.b;
      s.converged = disk.log_radius < log_tol;
      return s;
    }
    // the radius decays like exp(-2 b Re r); jump straight to the estimate
    const double need = b + (disk.log_radius - log_tol) / (2.0 * re_r) + 1.0;
    b = std::min(support, std::max(1.5 * b, need));
  }
}

std::string m_function_csv(const std::vector<MFunctionSample>& samples) {
  std::string out = csv_row({"re_z", "im_z", "re_m", "im_m", "radius_bound", "b", "converged"});
  for (const auto& s : samples) {
    out += csv_row({fmt(s.z.real()), fmt(s.z.imag()), fmt(s.m.real()), fmt(s.m.imag()), fmt(s.radius), fmt(s.b),
                    s.converged ? "1" : "0"});
  }
  return out;
}

cdouble shift_mobius(cdouble m, double w, cdouble z) {
  const cdouble r = sqrt_minus_z(z);
  // tanh(r) without overflow; Re r > 0 off the half line
  const cdouble e = std::exp(-2.0 * r);
  const cdouble t = (1.0 - e) / (1.0 + e);
  return (w * r * t + m) / (1.0 + m * t / (w * r));
}

double shift_identity_residual(const WeightProfile& profile, cdouble z, int shifts, double tol) {
  require(shifts >= 1, "shifts must be >= 1");
  require(static_cast<long>(profile.size()) > shifts, "profile too short for the shift");
  const MFunctionSample base = m_function(profile, z, tol);
  if (!base.converged) fail(ErrorCode::unconverged, "m(s) did not converge");
  cdouble m = base.m;
  for (int i = 0; i < shifts; ++i) m = shift_mobius(m, profile.weights[static_cast<std::size_t>(i)], z);
  const MFunctionSample moved = m_function(profile.shifted(shifts), z, tol);
  if (!moved.converged) fail(ErrorCode::unconverged, "m(Ts) did not converge");
  return std::abs(moved.m - m);
}

const char* to_string(Precision p) { return p == Precision::extended ? "extended" : "double"; }

Precision parse_precision(const std::string& s) {
  if (s == "double" || s == "standard") return Precision::standard;
  if (s == "extended") return Precision::extended;
  fail(ErrorCode::invalid_argument, "unknown precision '" + s + "' (expected double or extended)");
}

long agreement_length(const SymbolWindow& a, const SymbolWindow& b) {
  require(a.origin == 0 && b.origin == 0, "windows must start at index 0");
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a.data[i] == b.data[i]) ++i;
  return static_cast<long>(i);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  require(lo > 0.0 && hi > lo && n >= 2, "bad log grid");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

namespace {

long weight_agreement(const WeightProfile& a, const WeightProfile& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a.weights[i] == b.weights[i]) ++i;
  return static_cast<long>(i);
}

}  // namespace

DecayFit borg_marchenko_decay(const SymbolWindow& wa, const SymbolWindow& wb, double alpha,
                              const std::vector<double>& abs_z, Precision precision, Mode mode) {
  require(alpha > -M_PI && alpha < M_PI && alpha != 0.0, "ray angle must lie in (-pi, pi) without 0");
  require(abs_z.size() >= 3, "need at least three |z| values");
  for (double v : abs_z) require(v > 0.0, "|z| values must be positive");
  const long agree = agreement_length(wa, wb);
  if (agree == static_cast<long>(std::min(wa.size(), wb.size()))) {
    fail(ErrorCode::invalid_argument, "windows agree on their whole common length; nothing to fit");
  }
  const WeightProfile A = weights_from_spheres(wa, mode);
  const WeightProfile B = weights_from_spheres(wb, mode);
  const long L = weight_agreement(A, B);  // common prefix [0, L)

  DecayFit fit;
  fit.k = agree - 1;
  fit.alpha = alpha;
  fit.precision = precision;
  fit.mode = mode;
  const double support = static_cast<double>(std::min(A.end(), B.end()));
  for (double R : abs_z) {
    const cdouble z = std::polar(R, alpha);
    const cdouble r = sqrt_minus_z(z);
    const double tail = std::max(4.0, 40.0 / r.real());
    if (L + tail > support) fail(ErrorCode::unconverged, "windows too short for |z| = " + fmt(R));
    DecayPoint pt;
    pt.abs_z = R;
    pt.z = z;
    pt.x = 2.0 * r.real();
    if (precision == Precision::extended) {
      pt.log_diff = detail::log_abs_m_difference_extended(A, B, z, static_cast<double>(L) + tail);
    } else {
      const SpectralParameter sp(z);
      ScaledMat2 P;
      if (L > 0) P = propagator(A, sp, 0.0, static_cast<double>(L));
      const WeylDisk qa = weyl_disk(A.shifted(L), z, tail);
      const WeylDisk qb = weyl_disk(B.shifted(L), z, tail);
      const double gap = std::abs(qa.center - qb.center);
      if (!(gap > 1e3 * (qa.radius + qb.radius))) fail(ErrorCode::unconverged, "tail m-functions not resolved");
      pt.log_diff = std::log(gap) - 2.0 * P.log_scale - std::log(std::abs(P.m.d - P.m.b * qa.center)) -
                    std::log(std::abs(P.m.d - P.m.b * qb.center));
    }
    if (!std::isfinite(pt.log_diff)) fail(ErrorCode::unconverged, "m difference not finite at |z| = " + fmt(R));
    fit.points.push_back(pt);
  }
  // least squares y = intercept + slope x
  const double n = static_cast<double>(fit.points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : fit.points) {
    sx += p.x; sy += p.log_diff;
    sxx += p.x * p.x; sxy += p.x * p.log_diff; syy += p.log_diff * p.log_diff;
  }
  const double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
  require(vx > 0.0, "|z| grid must not be constant");
  fit.slope = cxy / vx;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r_squared = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
  return fit;
}

std::pair<SymbolWindow, SymbolWindow> bm_preset_windows(long k, std::size_t length) {
  require(k >= -1 && k <= 40, "k out of range");
  const std::size_t span = 5000;
  const SymbolWindow fib = generate_word(fibonacci_rule(), 0, span + length);
  const long need = k + 1;
  auto cut = [&](std::size_t s) {
    return SymbolWindow(0, std::vector<int>(fib.data.begin() + static_cast<long>(s),
                                            fib.data.begin() + static_cast<long>(s + length)));
  };
  for (std::size_t i = 0; i < 200; ++i) {
    for (std::size_t j = i + 1; j < span; ++j) {
      long a = 0;
      while (a <= need && fib.data[i + a] == fib.data[j + a]) ++a;
      if (a == need) return {cut(i), cut(j)};
    }
  }
  fail(ErrorCode::internal, "no window pair with the requested agreement length");
}

std::string decay_json(const DecayFit& fit) {
  nlohmann::ordered_json j;
  j["k"] = fit.k;
  j["alpha"] = fit.alpha;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r_squared"] = fit.r_squared;
  j["precision"] = to_string(fit.precision);
  j["mode"] = to_string(fit.mode);
  auto& pts = j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : fit.points) {
    pts.push_back({{"abs_z", p.abs_z}, {"x", p.x}, {"log_diff", p.log_diff}});
  }
  return j.dump(2) + "\n";
}

}  // namespace qgs
