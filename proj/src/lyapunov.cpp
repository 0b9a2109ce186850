#include "qgspec/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qgspec/error.hpp"
#include "qgspec/io.hpp"
#include "qgspec/parallel.hpp"

namespace qgs {

const char* to_string(EnergyClass c) {
  switch (c) {
    case EnergyClass::zero_candidate: return "zero_candidate";
    case EnergyClass::hyperbolic_candidate: return "hyperbolic_candidate";
    case EnergyClass::undecided: return "undecided";
  }
  return "?";
}

namespace {

constexpr long kCheckpoint = 100;
constexpr long kDefaultStride = 1009;

struct BaseRun {
  double rate = 0.0;
  bool monotone = true;
};

// Step matrices along the orbit, keyed so each distinct one is built once.
class StepSource {
 public:
  StepSource(const SymbolWindow& w, double E, Mode mode) : window_(w), E_(E), mode_(mode) {}

  const RealMat2& step(long j) {
    int key = 0;
    RealMat2 m;
    if (mode_ == Mode::verbatim) {
      const int f0 = window_.at(j), f2 = window_.at(j + 2);
      key = f0 * 4096 + f2;
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
      m = paper_step_matrix(E_, f0, f2);
    } else {
      const int s0 = window_.at(j);
      const int s1 = mode_ == Mode::graph ? window_.at(j + 1) : 1;
      key = s0 * 4096 + s1;
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
      m = cell_matrix_real(static_cast<double>(s0) * s1, E_);
    }
    return cache_.emplace(key, m).first->second;
  }

 private:
  const SymbolWindow& window_;
  double E_;
  Mode mode_;
  std::map<int, RealMat2> cache_;
};

BaseRun run_base(StepSource& src, long base, long n) {
  ScaledRealMat2 P;
  double log_burn = 0.0;
  double last = -1e300;
  BaseRun out;
  for (long j = 0; j < n; ++j) {
    P.left_multiply(src.step(base + j));
    const long done = j + 1;
    if (done == kLyapunovBurnIn) {
      log_burn = P.log_norm();
      last = log_burn;
    } else if (done > kLyapunovBurnIn && done % kCheckpoint == 0) {
      const double cur = P.log_norm();
      if (!(cur > last)) out.monotone = false;
      last = cur;
    }
  }
  const double total = P.log_norm();
  out.rate = std::max(0.0, (total - log_burn) / static_cast<double>(n - kLyapunovBurnIn));
  return out;
}

}  // namespace

LyapunovEstimate lyapunov_estimate(const SubshiftSpec& spec, double E, long n_steps, int n_bases, Mode mode) {
  require(n_steps >= 1000, "n_steps must be >= 1000");
  require(n_bases >= 1, "n_bases must be >= 1");
  require(std::isfinite(E), "energy must be finite");

  long stride = kDefaultStride;
  SymbolWindow window;
  const long extra = 3;  // cocycle looks two symbols ahead
  if (const auto* ex = std::get_if<ExplicitWindow>(&spec)) {
    window = ex->window;
    const long room = static_cast<long>(window.size()) - n_steps - extra;
    if (room < 0) fail(ErrorCode::invalid_argument, "explicit window shorter than n_steps");
    stride = n_bases > 1 ? std::min(stride, room / (n_bases - 1)) : 0;
    if (n_bases > 1 && stride == 0) fail(ErrorCode::invalid_argument, "explicit window too short for the base points");
  } else {
    window = generate_word(spec, 0, static_cast<std::size_t>(stride * (n_bases - 1) + n_steps + extra));
  }

  LyapunovEstimate est;
  est.E = E;
  est.n_steps = n_steps;
  est.n_bases = n_bases;
  est.mode = mode;
  est.monotone_growth = true;
  StepSource src(window, E, mode);
  for (int b = 0; b < n_bases; ++b) {
    const BaseRun r = run_base(src, window.origin + stride * b, n_steps);
    est.per_base.push_back(r.rate);
    est.monotone_growth = est.monotone_growth && r.monotone;
  }
  const auto [lo, hi] = std::minmax_element(est.per_base.begin(), est.per_base.end());
  est.spread = *hi - *lo;
  est.value = std::accumulate(est.per_base.begin(), est.per_base.end(), 0.0) / n_bases;
  return est;
}

double uniformity_spread(const SubshiftSpec& spec, double E, long n_steps, int n_bases, Mode mode) {
  const LyapunovEstimate est = lyapunov_estimate(spec, E, n_steps, n_bases, mode);
  double worst = 0.0;
  for (double v : est.per_base) worst = std::max(worst, std::abs(v - est.value));
  return worst;
}

EnergyClass classify(const LyapunovEstimate& est, const ClassifyThresholds& th) {
  require(th.eps_zero > 0.0 && th.eps_zero < th.eps_hyp, "thresholds need 0 < eps_zero < eps_hyp");
  if (est.value < th.eps_zero) return EnergyClass::zero_candidate;
  if (est.value > th.eps_hyp && est.monotone_growth) return EnergyClass::hyperbolic_candidate;
  return EnergyClass::undecided;
}

EnergyClass classify_energy(const SubshiftSpec& spec, double E, const ClassifyThresholds& th, long n_steps, int n_bases,
                            Mode mode) {
  return classify(lyapunov_estimate(spec, E, n_steps, n_bases, mode), th);
}

std::vector<LyapunovRow> lyapunov_sweep(const SubshiftSpec& spec, const std::vector<double>& energies, long n_steps,
                                        int n_bases, Mode mode, const ClassifyThresholds& th, unsigned workers) {
  return parallel_map<LyapunovRow>(energies.size(), workers, [&](std::size_t i) {
    LyapunovRow row;
    row.estimate = lyapunov_estimate(spec, energies[i], n_steps, n_bases, mode);
    row.cls = classify(row.estimate, th);
    return row;
  });
}

std::string lyapunov_csv(const std::vector<LyapunovRow>& rows) {
  std::string out = csv_row({"E", "L_hat", "spread", "n_steps", "classification"});
  for (const auto& r : rows) {
    out += csv_row({fmt(r.estimate.E), fmt(r.estimate.value), fmt(r.estimate.spread),
                    std::to_string(r.estimate.n_steps), to_string(r.cls)});
  }
  return out;
}

}  // namespace qgs
