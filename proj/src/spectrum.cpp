#include "qgspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qgspec/error.hpp"
#include "qgspec/io.hpp"
#include "qgspec/tracemap.hpp"

namespace qgs {

double floquet_discriminant(const std::vector<int>& period, Mode mode, double E) {
  require(mode != Mode::verbatim, "Floquet bands use graph or simplified weights");
  const ScaledRealMat2 M = monodromy_real(periodic_weights(period, mode), E);
  return M.m.trace() * std::exp(M.log_scale);
}

namespace {

struct Sample {
  double E;
  double h;  // 2 - |trace|
};

template <class F>
double golden_extremum(F f, double a, double b, double tol, bool maximize) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  if (maximize) fc = -fc, fd = -fd;
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a);
      fc = maximize ? -f(c) : f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a);
      fd = maximize ? -f(d) : f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

BandSet floquet_bands(const std::vector<int>& period, Mode mode, double E_lo, double E_hi, double tol,
                      const FloquetOptions& opts) {
  require(E_lo < E_hi, "need E_lo < E_hi");
  require(tol > 0.0, "tol must be positive");
  require(!period.empty(), "period word is empty");
  const std::vector<double> weights = periodic_weights(period, mode);
  auto h = [&](double E) {
    const ScaledRealMat2 M = monodromy_real(weights, E);
    return 2.0 - std::abs(M.m.trace() * std::exp(M.log_scale));
  };
  const double eps = opts.slack;
  auto in_band = [&](double hv) { return hv >= -eps; };

  // sample grid: uniform in E below 0, uniform in sqrt(E) above
  std::vector<double> grid;
  if (E_lo < 0.0) {
    const double top = std::min(0.0, E_hi);
    for (int i = 0; i < 256; ++i) grid.push_back(E_lo + (top - E_lo) * i / 256.0);
  }
  if (E_hi > 0.0) {
    const double k_lo = std::sqrt(std::max(E_lo, 0.0)), k_hi = std::sqrt(E_hi);
    const double p = static_cast<double>(period.size());
    const long n = std::max(64L, static_cast<long>(std::ceil((k_hi - k_lo) * p * opts.samples_per_oscillation / std::numbers::pi)));
    require(n <= opts.max_evaluations, "Floquet sampling exceeds the evaluation budget");
    for (long i = 0; i < n; ++i) {
      const double k = k_lo + (k_hi - k_lo) * static_cast<double>(i) / static_cast<double>(n);
      grid.push_back(std::max(E_lo, k * k));
    }
  }
  grid.push_back(E_hi);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<Sample> s;
  s.reserve(grid.size());
  for (double E : grid) s.push_back({E, h(E)});

  // local extrema of h near the threshold may hide a narrow gap or band between samples
  std::vector<Sample> extra;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const bool is_min = s[i].h <= s[i - 1].h && s[i].h <= s[i + 1].h;
    const bool is_max = s[i].h >= s[i - 1].h && s[i].h >= s[i + 1].h;
    if (is_min && in_band(s[i - 1].h) && in_band(s[i].h) && in_band(s[i + 1].h) && s[i].h < 0.5) {
      const double E = golden_extremum(h, s[i - 1].E, s[i + 1].E, tol * 0.1, false);
      extra.push_back({E, h(E)});
    } else if (is_max && !in_band(s[i - 1].h) && !in_band(s[i].h) && !in_band(s[i + 1].h) && s[i].h > -0.5) {
      const double E = golden_extremum(h, s[i - 1].E, s[i + 1].E, tol * 0.1, true);
      extra.push_back({E, h(E)});
    }
  }
  s.insert(s.end(), extra.begin(), extra.end());
  std::sort(s.begin(), s.end(), [](const Sample& a, const Sample& b) { return a.E < b.E; });

  auto edge = [&](Sample a, Sample b) {
    // returns the outside point of the final bracket
    const bool a_in = in_band(a.h);
    while (b.E - a.E > tol) {
      const double m = 0.5 * (a.E + b.E);
      const Sample sm{m, h(m)};
      if (in_band(sm.h) == a_in) a = sm; else b = sm;
    }
    return a_in ? b.E : a.E;
  };

  BandSet out;
  bool open = in_band(s.front().h);
  double start = s.front().E;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const bool a_in = in_band(s[i].h), b_in = in_band(s[i + 1].h);
    if (a_in == b_in) continue;
    const double e = edge(s[i], s[i + 1]);
    if (a_in) {
      out.intervals.push_back({start, std::min(e, E_hi)});
      open = false;
    } else {
      start = std::max(e, E_lo);
      open = true;
    }
  }
  if (open) out.intervals.push_back({start, E_hi});
  out.normalize(tol);
  out.resolution = tol;
  std::ostringstream prov;
  prov << "floquet period=" << period.size() << " mode=" << to_string(mode);
  out.provenance = prov.str();
  return out;
}

std::vector<double> h1_eigenvalues(int s_prev, int s_mid, int s_next, double E_max) {
  require(s_prev >= 1 && s_mid >= 1 && s_next >= 1, "symbols must be >= 1");
  require(E_max > 0.0, "E_max must be positive");
  const double w1 = s_prev, w2 = s_next;
  // left: Dirichlet at n-1 carried to n; right: Dirichlet at n+1 carried back to n
  auto match = [&](double E) {
    const RealMat2 L = cell_matrix_real(w1, E);
    const RealMat2 R = cell_matrix_real(w2, E).unimodular_inverse();
    const double lu = L.b, lp = L.d;  // L * (0, 1)
    const double ru = R.b, rp = R.d;  // R * (0, 1)
    return lu * rp - lp * ru;
  };
  std::vector<double> roots;
  const double k_max = std::sqrt(E_max);
  const long n = std::max(200L, static_cast<long>(std::ceil(k_max * 400.0 / std::numbers::pi)));
  double k_prev = 1e-9, f_prev = match(k_prev * k_prev);
  for (long i = 1; i <= n; ++i) {
    const double k = k_max * static_cast<double>(i) / static_cast<double>(n);
    const double f = match(k * k);
    if (f == 0.0) {
      roots.push_back(k * k);
    } else if ((f < 0.0) != (f_prev < 0.0) && f_prev != 0.0) {
      double a = k_prev, b = k, fa = f_prev;
      for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = match(m * m);
        if ((fm < 0.0) == (fa < 0.0)) a = m, fa = fm; else b = m;
      }
      roots.push_back(0.25 * (a + b) * (a + b));
    }
    k_prev = k;
    f_prev = f;
  }
  roots.erase(std::remove_if(roots.begin(), roots.end(), [&](double E) { return E > E_max || E <= 0.0; }), roots.end());
  return roots;
}

std::vector<double> h2_eigenvalues(double E_max) {
  require(E_max > 0.0, "E_max must be positive");
  std::vector<double> out;
  for (int k = 1;; ++k) {
    const double E = k * k * std::numbers::pi * std::numbers::pi;
    if (E > E_max) break;
    out.push_back(E);
  }
  return out;
}

SpectrumReport assemble_spectrum(const SubshiftSpec& spec, double E_max, int N, double tol, const AssembleOptions& opts) {
  require(E_max > 0.0, "E_max must be positive");
  require(tol > 0.0, "tol must be positive");
  validate(spec);
  SpectrumReport rep;
  rep.spec_text = describe(spec);
  rep.E_max = E_max;
  rep.N = N;
  rep.tol = tol;

  // symbols scanned for triples and adjacent pairs
  std::vector<int> scan;
  bool cyclic = false;
  if (const auto* p = std::get_if<PeriodicWord>(&spec)) {
    scan = p->word;
    cyclic = true;
  } else if (const auto* ex = std::get_if<ExplicitWindow>(&spec)) {
    scan = ex->window.data;
  } else {
    scan = generate_word(spec, 0, opts.sample_length).data;
  }

  const auto [fa, fb] = fibonacci_letters(spec);
  if (fa != 0) {
    FibonacciModel model{Mode::graph, fa, fb};
    EscapeCoverOptions eo;
    eo.workers = opts.workers;
    rep.continuum = escape_band_set(0.0, E_max, N, tol, model, eo);
    rep.continuum_source = "escape";
  } else if (cyclic) {
    rep.continuum = floquet_bands(scan, Mode::graph, 0.0, E_max, tol);
    rep.continuum_source = "floquet";
  } else {
    const std::size_t len = std::min(opts.approximant_length, scan.size());
    std::vector<int> prefix(scan.begin(), scan.begin() + static_cast<long>(len));
    rep.continuum = floquet_bands(prefix, Mode::graph, 0.0, E_max, tol);
    rep.continuum_source = "prefix-approximant";
  }

  const std::size_t L = scan.size();
  std::set<std::array<int, 3>> triples;
  int pair_coeff = 0;
  bool has_big = false;
  for (std::size_t i = 0; i < L; ++i) {
    has_big = has_big || scan[i] >= 2;
    const bool has_next = cyclic || i + 1 < L;
    const bool has_prev = cyclic || i >= 1;
    if (has_next) {
      const int nx = scan[(i + 1) % L];
      pair_coeff = std::max(pair_coeff, (scan[i] - 1) * (nx - 1));
      if (has_prev) triples.insert({scan[(i + L - 1) % L], scan[i], nx});
    }
  }
  for (const auto& t : triples) {
    if (t[1] < 2) continue;  // multiplicity s_n - 1 vanishes
    for (double E : h1_eigenvalues(t[0], t[1], t[2], E_max)) rep.sigma1.push_back({E, t, t[1] - 1});
  }
  std::sort(rep.sigma1.begin(), rep.sigma1.end(), [](const Sigma1Entry& a, const Sigma1Entry& b) {
    return a.E < b.E || (a.E == b.E && a.triple < b.triple);
  });
  if (has_big) {
    for (double E : h2_eigenvalues(E_max)) rep.sigma2.push_back({E, pair_coeff});
  }

  rep.assembled = rep.continuum;
  for (const auto& e : rep.sigma1) rep.assembled.intervals.push_back({e.E, e.E});
  for (const auto& e : rep.sigma2) rep.assembled.intervals.push_back({e.E, e.E});
  rep.assembled.normalize();
  rep.assembled.provenance = "assembled";
  return rep;
}

std::string spectrum_json(const SpectrumReport& rep) {
  nlohmann::ordered_json j;
  j["bands"] = nlohmann::ordered_json::array();
  for (const auto& iv : rep.continuum.intervals) j["bands"].push_back({iv.lo, iv.hi});
  std::vector<double> s1, s2;
  for (const auto& e : rep.sigma1)
    if (s1.empty() || std::abs(s1.back() - e.E) > 1e-12) s1.push_back(e.E);
  for (const auto& e : rep.sigma2) s2.push_back(e.E);
  j["sigma1"] = s1;
  j["sigma2"] = s2;
  j["total_measure"] = rep.continuum.measure();
  j["measure_diagnostic"] = measure_estimate(rep.continuum).diagnostic;
  auto& d1 = j["sigma1_detail"] = nlohmann::ordered_json::array();
  for (const auto& e : rep.sigma1) d1.push_back({{"E", e.E}, {"triple", e.triple}, {"multiplicity", e.multiplicity}});
  auto& d2 = j["sigma2_detail"] = nlohmann::ordered_json::array();
  for (const auto& e : rep.sigma2) d2.push_back({{"E", e.E}, {"multiplicity", e.multiplicity}});
  j["assembled"] = nlohmann::ordered_json::array();
  for (const auto& iv : rep.assembled.intervals) j["assembled"].push_back({iv.lo, iv.hi});
  j["params"] = {{"spec", rep.spec_text},         {"E_max", rep.E_max},
                 {"N", rep.N},                    {"tol", rep.tol},
                 {"continuum", rep.continuum_source}, {"provenance", rep.continuum.provenance},
                 {"conservative", rep.continuum.conservative}};
  return j.dump(2) + "\n";
}

std::string sigma_csv(const SpectrumReport& rep) {
  std::string out = csv_row({"set", "E", "s_prev", "s_mid", "s_next", "multiplicity"});
  for (const auto& e : rep.sigma1)
    out += csv_row({"sigma1", fmt(e.E), std::to_string(e.triple[0]), std::to_string(e.triple[1]),
                    std::to_string(e.triple[2]), std::to_string(e.multiplicity)});
  for (const auto& e : rep.sigma2) out += csv_row({"sigma2", fmt(e.E), "", "", "", std::to_string(e.multiplicity)});
  return out;
}

std::string spectrum_plot_data(const SpectrumReport& rep, std::size_t samples) {
  require(samples >= 2, "need at least two plot samples");
  std::string out = csv_row({"E", "indicator"});
  for (std::size_t i = 0; i < samples; ++i) {
    const double E = rep.E_max * static_cast<double>(i) / static_cast<double>(samples - 1);
    out += csv_row({fmt(E), rep.assembled.contains(E, 0.5 * rep.E_max / static_cast<double>(samples - 1)) ? "1" : "0"});
  }
  return out;
}

}  // namespace qgs
