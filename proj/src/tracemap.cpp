#include "qgspec/tracemap.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "qgspec/error.hpp"
#include "qgspec/parallel.hpp"

namespace qgs {

long fibonacci_number(int n) {
  require(n >= 0 && n <= 80, "Fibonacci index out of range");
  long a = 1, b = 2;  // F_0, F_1
  if (n == 0) return a;
  for (int i = 1; i < n; ++i) {
    const long c = a + b;
    a = b;
    b = c;
  }
  return b;
}

std::vector<int> fibonacci_block(const FibonacciModel& model, int n) {
  require(n >= 0 && n <= 40, "Fibonacci block index out of range");
  require(model.a >= 1 && model.b >= 1, "letters must be >= 1");
  std::vector<int> w = substitution_power(fibonacci_rule(), 1, n);
  for (int& s : w) s = s == 1 ? model.a : model.b;
  return w;
}

ScaledRealMat2 fibonacci_monodromy(double E, int n, const FibonacciModel& model) {
  const std::vector<int> w = fibonacci_block(model, n);
  if (model.mode == Mode::verbatim) {
    std::vector<int> ext = w;
    ext.push_back(model.a);
    ext.push_back(model.b);
    ScaledRealMat2 out;
    std::map<std::pair<int, int>, RealMat2> cache;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const auto key = std::make_pair(ext[j], ext[j + 2]);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, paper_step_matrix(E, key.first, key.second)).first;
      out.left_multiply(it->second);
    }
    out.renormalize();
    return out;
  }
  std::vector<double> weights(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const int next = j + 1 < w.size() ? w[j + 1] : model.a;
    weights[j] = model.mode == Mode::graph ? static_cast<double>(w[j]) * next : w[j];
  }
  return monodromy_real(weights, E);
}

long double ScaledValue::value() const { return mantissa * std::exp(static_cast<long double>(log_scale)); }

ScaledValue explicit_half_trace(double E, int n, const FibonacciModel& model) {
  const ScaledRealMat2 M = fibonacci_monodromy(E, n, model);
  return {0.5L * static_cast<long double>(M.m.trace()), M.log_scale};
}

TraceTriple fibonacci_initial_traces(double E, const FibonacciModel& model) {
  TraceTriple t;
  t.x_prev = static_cast<double>(explicit_half_trace(E, 2, model).value());
  t.x_curr = static_cast<double>(explicit_half_trace(E, 3, model).value());
  t.x_next = static_cast<double>(explicit_half_trace(E, 4, model).value());
  t.index = 4;
  return t;
}

TraceTriple trace_step(const TraceTriple& t) {
  return {t.x_curr, t.x_next, 2.0 * t.x_next * t.x_curr - t.x_prev, t.index + 1};
}

double fricke_invariant(const TraceTriple& t) {
  const long double x = t.x_next, y = t.x_curr, z = t.x_prev;
  return static_cast<double>(x * x + y * y + z * z - 2.0L * x * y * z - 1.0L);
}

std::vector<long double> trace_orbit(double E, int n_max, const FibonacciModel& model) {
  require(n_max >= 4, "n_max must be >= 4");
  std::vector<long double> x(static_cast<std::size_t>(n_max + 1), 0.0L);
  for (int n = 2; n <= 4; ++n) x[n] = explicit_half_trace(E, n, model).value();
  for (int n = 4; n < n_max; ++n) x[n + 1] = 2.0L * x[n] * x[n - 1] - x[n - 2];
  return x;
}

namespace {

bool criterion(const TraceTriple& t) {
  return std::abs(t.x_next) > 1.0 && std::abs(t.x_curr) > 1.0 && std::abs(t.x_next * t.x_curr) > std::abs(t.x_prev);
}

}  // namespace

EscapeReport escape_index(double E, int N_max, const FibonacciModel& model) {
  require(N_max >= 5, "N_max must be >= 5");
  EscapeReport rep;
  rep.E = E;
  TraceTriple t = fibonacci_initial_traces(E, model);
  rep.max_abs = std::max({std::abs(t.x_prev), std::abs(t.x_curr), std::abs(t.x_next)});
  for (;;) {
    if (!std::isfinite(t.x_next) || std::abs(t.x_next) > kTraceSaturation) {
      rep.escaped = true;
      rep.saturated = true;
      rep.escape_index = t.index;
      break;
    }
    if (criterion(t)) {
      rep.escaped = true;
      rep.escape_index = t.index;
      break;
    }
    if (t.index >= N_max) break;
    t = trace_step(t);
    ++rep.steps;
    rep.max_abs = std::max(rep.max_abs, std::abs(t.x_next));
  }
  if (rep.escaped && !rep.saturated) {
    TraceTriple u = t;
    for (int k = 0; k < 3; ++k) {
      u = trace_step(u);
      if (!std::isfinite(u.x_next) || std::abs(u.x_next) > kTraceSaturation) break;
      if (!(std::abs(u.x_next) > 1.0)) rep.permanence_ok = false;
    }
  }
  return rep;
}

namespace {

struct Cell {
  long lo = 0, hi = 0;
  bool keep = false;
};

}  // namespace

BandSet escape_band_set(double E_lo, double E_hi, int N, double tol, const FibonacciModel& model,
                        const EscapeCoverOptions& opts) {
  require(E_lo < E_hi, "need E_lo < E_hi");
  require(tol > 0.0, "tol must be positive");
  require(N >= 5, "N must be >= 5");
  constexpr long kFactor = 4;  // coarse spacing in fine cells
  const long K = std::max(1L, static_cast<long>(std::ceil((E_hi - E_lo) / (kFactor * tol))));
  require(K + 1 <= opts.max_evaluations, "tol too small for the evaluation budget");
  const long M = kFactor * K;
  const double delta = (E_hi - E_lo) / static_cast<double>(M);
  auto energy = [&](long i) { return i == M ? E_hi : E_lo + static_cast<double>(i) * delta; };
  auto capped = [&](long i) {
    const EscapeReport r = escape_index(energy(i), N, model);
    return r.escaped && r.escape_index <= N ? r.escape_index : N + 1;
  };

  const std::vector<int> coarse =
      parallel_map<int>(static_cast<std::size_t>(K + 1), opts.workers, [&](std::size_t j) { return capped(kFactor * static_cast<long>(j)); });

  // coarse cells whose endpoints disagree get refined, in index order, while the budget lasts
  std::vector<long> to_refine;
  for (long j = 0; j < K; ++j)
    if (coarse[j] != coarse[j + 1]) to_refine.push_back(j);
  const long per_cell = kFactor - 1;
  const long affordable = std::max(0L, (opts.max_evaluations - (K + 1)) / per_cell);
  const bool conservative = static_cast<long>(to_refine.size()) > affordable;
  const std::size_t n_refine = std::min<std::size_t>(to_refine.size(), static_cast<std::size_t>(affordable));

  auto refined = parallel_map<std::vector<Cell>>(n_refine, opts.workers, [&](std::size_t idx) {
    const long j = to_refine[idx];
    std::vector<Cell> cells;
    std::vector<std::tuple<long, long, int, int>> stack{{kFactor * j, kFactor * (j + 1), coarse[j], coarse[j + 1]}};
    while (!stack.empty()) {
      auto [lo, hi, clo, chi] = stack.back();
      stack.pop_back();
      if (clo == chi || hi - lo == 1) {
        cells.push_back({lo, hi, clo > N || chi > N});
        continue;
      }
      const long mid = (lo + hi) / 2;
      const int cmid = capped(mid);
      stack.emplace_back(mid, hi, cmid, chi);
      stack.emplace_back(lo, mid, clo, cmid);
    }
    return cells;
  });

  BandSet out;
  std::size_t r = 0;
  auto push = [&](long lo, long hi) {
    if (!out.intervals.empty() && out.intervals.back().hi == energy(lo)) {
      out.intervals.back().hi = energy(hi);
    } else {
      out.intervals.push_back({energy(lo), energy(hi)});
    }
  };
  for (long j = 0; j < K; ++j) {
    if (r < n_refine && to_refine[r] == j) {
      for (const Cell& c : refined[r])
        if (c.keep) push(c.lo, c.hi);
      ++r;
    } else if (coarse[j] > N || coarse[j + 1] > N || coarse[j] != coarse[j + 1]) {
      // the last case only happens past the budget: keep the whole cell
      push(kFactor * j, kFactor * (j + 1));
    }
  }
  // isolated retained endpoints are already covered by their neighbouring cells
  out.resolution = delta;
  out.conservative = conservative;
  std::ostringstream prov;
  prov << "escape N=" << N << " mode=" << to_string(model.mode);
  if (model.a != 1 || model.b != 2) prov << " letters=" << model.a << "," << model.b;
  out.provenance = prov.str();
  return out;
}

}  // namespace qgs
