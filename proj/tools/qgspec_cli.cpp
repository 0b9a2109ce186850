// qgspec: command-line front end. Talks to the library only through the C API.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgspec/qgspec.h"
#include "run_config.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using qgs::cli::ConfigError;
using qgs::cli::RunConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitUnconverged = 3;
constexpr int kExitInternal = 1;

// failure of a C API call, carrying its status
struct ApiError : std::runtime_error {
  qgs_status status;
  ApiError(qgs_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(qgs_status s, const char* call) {
  if (s != QGS_OK) throw ApiError(s, std::string(call) + ": " + qgs_last_error());
}

// owns a char* handed out by the library
std::string take(char* p) {
  std::string out = p ? p : "";
  qgs_string_free(p);
  return out;
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Subshift = std::unique_ptr<qgs_subshift, Deleter<qgs_subshift, qgs_subshift_free>>;
using Word = std::unique_ptr<qgs_word, Deleter<qgs_word, qgs_word_free>>;
using Bands = std::unique_ptr<qgs_bandset, Deleter<qgs_bandset, qgs_bandset_free>>;
using Spectrum = std::unique_ptr<qgs_spectrum, Deleter<qgs_spectrum, qgs_spectrum_free>>;

qgs_mode mode_of(const std::string& m) {
  if (m == "simplified") return QGS_MODE_SIMPLIFIED;
  if (m == "verbatim") return QGS_MODE_VERBATIM;
  return QGS_MODE_GRAPH;
}

qgs_boundary bc_of(const std::string& b) { return b == "neumann" ? QGS_BC_NEUMANN : QGS_BC_DIRICHLET; }

void log_line(const std::string& msg) { std::cerr << "qgspec: " << msg << "\n"; }

class Run {
 public:
  Run(std::string command, RunConfig cfg) : command_(std::move(command)), cfg_(std::move(cfg)) {}

  int execute();
  const std::vector<std::string>& outputs() const { return outputs_; }

 private:
  std::string command_;
  RunConfig cfg_;
  std::vector<std::string> outputs_;
  bool unconverged_ = false;
  std::vector<std::string> warnings_;

  void write(const std::string& name, const std::string& content) {
    const fs::path p = fs::path(cfg_.out) / name;
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f || !(f << content) || !f.flush()) throw IoError("cannot write " + p.string());
    outputs_.push_back(name);
  }
  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }
  void warn(const std::string& w) {
    unconverged_ = true;
    warnings_.push_back(w);
    log_line("warning: " + w);
  }

  Subshift subshift() const {
    qgs_subshift* s = nullptr;
    check(qgs_subshift_parse(cfg_.spec.c_str(), &s), "subshift");
    return Subshift(s);
  }
  Word word(long origin, long length) const {
    auto s = subshift();
    qgs_word* w = nullptr;
    check(qgs_word_generate(s.get(), origin, static_cast<size_t>(length), &w), "word");
    return Word(w);
  }
  std::vector<int> period() const;
  std::vector<double> energy_grid() const;

  void cmd_word();
  void cmd_lyapunov();
  void cmd_trace();
  void cmd_bands();
  void cmd_weyl();
  void cmd_bm();
  void cmd_spectrum();
  void cmd_oracle();

  friend int run_command(const std::string&, const RunConfig&, const std::vector<std::string>&);
};

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(what + ": bad symbol '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError(what + ": empty");
  return out;
}

std::vector<int> Run::period() const {
  if (!cfg_.period.empty()) return parse_ints(cfg_.period, "bands.period");
  const std::string& s = cfg_.spec;
  if (s.rfind("constant:", 0) == 0) return parse_ints(s.substr(9), "run.spec");
  if (s.rfind("periodic:", 0) == 0) return parse_ints(s.substr(9), "run.spec");
  throw ConfigError("a period is required: set bands.period or use a constant:/periodic: spec");
}

std::vector<double> Run::energy_grid() const {
  std::vector<double> E;
  const int n = cfg_.e_count;
  if (n == 1) return {cfg_.e_lo};
  for (int i = 0; i < n; ++i) E.push_back(i + 1 == n ? cfg_.e_hi : cfg_.e_lo + (cfg_.e_hi - cfg_.e_lo) * i / (n - 1));
  return E;
}

void Run::cmd_word() {
  Word w = word(cfg_.origin, cfg_.length);
  write("word.txt", take([&] {
          char* p = nullptr;
          check(qgs_word_format(w.get(), &p), "word_format");
          return p;
        }()));
  char* p = nullptr;
  check(qgs_word_weights_format(w.get(), mode_of(cfg_.mode == "verbatim" ? "graph" : cfg_.mode), &p), "weights");
  write("weights.txt", take(p));
  size_t complexity = 0;
  check(qgs_word_factor_csv(w.get(), static_cast<size_t>(cfg_.factor_n), &p, &complexity), "factors");
  write("factors.csv", take(p));
  double min_scaled = 0;
  check(qgs_word_boshernitzan_csv(w.get(), static_cast<size_t>(cfg_.n_max), &p, &min_scaled), "boshernitzan");
  write("boshernitzan.csv", take(p));
  json j;
  j["origin"] = cfg_.origin;
  j["length"] = cfg_.length;
  j["factor_length"] = cfg_.factor_n;
  j["complexity"] = complexity;
  j["boshernitzan_n_max"] = cfg_.n_max;
  j["min_n_eta"] = min_scaled;
  write_json("word_summary.json", j);
}

void Run::cmd_lyapunov() {
  auto s = subshift();
  const auto E = energy_grid();
  char* p = nullptr;
  check(qgs_lyapunov_sweep_csv(s.get(), E.data(), E.size(), cfg_.n_steps, cfg_.n_bases, mode_of(cfg_.mode),
                               cfg_.eps_zero, cfg_.eps_hyp, cfg_.workers, &p),
        "lyapunov");
  write("lyapunov.csv", take(p));
}

void Run::cmd_trace() {
  const qgs_mode mode = mode_of(cfg_.mode);
  std::string curve = "N,total_measure,diagnostic,intervals\n";
  json j;
  for (int N = cfg_.N_curve_min; N <= cfg_.N; ++N) {
    qgs_bandset* raw = nullptr;
    check(qgs_escape_bands(cfg_.e_lo, cfg_.e_hi, N, cfg_.tol, mode, cfg_.letter_a, cfg_.letter_b, cfg_.workers, &raw),
          "escape_bands");
    Bands b(raw);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%zu\n", N, qgs_bandset_measure(raw), qgs_bandset_diagnostic(raw),
                  qgs_bandset_count(raw));
    curve += buf;
    if (qgs_bandset_conservative(raw)) warn("escape cover for N=" + std::to_string(N) + " exceeded its budget (conservative)");
    if (N == cfg_.N) {
      char* p = nullptr;
      check(qgs_bandset_csv(raw, &p), "bands_csv");
      write("bands.csv", take(p));
      j["N"] = N;
      j["E_lo"] = cfg_.e_lo;
      j["E_hi"] = cfg_.e_hi;
      j["tol"] = cfg_.tol;
      j["mode"] = cfg_.mode;
      j["letters"] = {cfg_.letter_a, cfg_.letter_b};
      j["intervals"] = qgs_bandset_count(raw);
      j["total_measure"] = qgs_bandset_measure(raw);
      j["measure_diagnostic"] = qgs_bandset_diagnostic(raw);
      j["conservative"] = qgs_bandset_conservative(raw) != 0;
    }
  }
  write("measure_curve.csv", curve);
  write_json("trace_summary.json", j);
}

void Run::cmd_bands() {
  if (cfg_.mode == "verbatim") throw ConfigError("bands supports graph and simplified modes");
  const auto per = period();
  qgs_bandset* raw = nullptr;
  check(qgs_floquet_bands(per.data(), per.size(), mode_of(cfg_.mode), cfg_.e_lo, cfg_.e_hi, cfg_.tol, &raw), "floquet");
  Bands b(raw);
  char* p = nullptr;
  check(qgs_bandset_csv(raw, &p), "bands_csv");
  write("bands.csv", take(p));
  json j;
  j["period"] = per;
  j["mode"] = cfg_.mode;
  j["E_lo"] = cfg_.e_lo;
  j["E_hi"] = cfg_.e_hi;
  j["tol"] = cfg_.tol;
  j["intervals"] = qgs_bandset_count(raw);
  j["total_measure"] = qgs_bandset_measure(raw);
  write_json("bands_summary.json", j);
}

void Run::cmd_weyl() {
  Word w = word(0, cfg_.profile_length);
  std::vector<double> re, im;
  const int g = cfg_.grid;
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) {
      re.push_back(g == 1 ? cfg_.re_min : cfg_.re_min + (cfg_.re_max - cfg_.re_min) * a / (g - 1));
      im.push_back(g == 1 ? cfg_.im_min : cfg_.im_min + (cfg_.im_max - cfg_.im_min) * b / (g - 1));
    }
  char* p = nullptr;
  check(qgs_weyl_grid_csv(w.get(), mode_of(cfg_.mode), re.data(), im.data(), re.size(), cfg_.weyl_tol, cfg_.workers, &p),
        "weyl_grid");
  const std::string csv = take(p);
  write("weyl.csv", csv);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  int bad = 0;
  while (std::getline(in, line))
    if (!line.empty() && line.back() == '0') ++bad;
  if (bad) warn(std::to_string(bad) + " m-function samples did not reach weyl.tol");
}

void Run::cmd_bm() {
  Word a, b;
  if (cfg_.word_a.empty()) {
    qgs_word *wa = nullptr, *wb = nullptr;
    check(qgs_bm_preset(cfg_.k, 400, &wa, &wb), "bm_preset");
    a.reset(wa);
    b.reset(wb);
  } else {
    qgs_word* w = nullptr;
    check(qgs_word_read(cfg_.word_a.c_str(), &w), "word_a");
    a.reset(w);
    check(qgs_word_read(cfg_.word_b.c_str(), &w), "word_b");
    b.reset(w);
  }
  std::vector<double> z;
  const int n = cfg_.z_points;
  for (int i = 0; i < n; ++i) z.push_back(cfg_.z_min * std::pow(cfg_.z_max / cfg_.z_min, static_cast<double>(i) / (n - 1)));
  const qgs_precision prec = cfg_.precision == "extended" ? QGS_PRECISION_EXTENDED : QGS_PRECISION_DOUBLE;
  const qgs_mode mode = cfg_.bm_mode == "graph" ? QGS_MODE_GRAPH : QGS_MODE_SIMPLIFIED;
  char* p = nullptr;
  double slope = 0;
  long k = 0;
  check(qgs_bm_decay_json(a.get(), b.get(), cfg_.alpha, z.data(), z.size(), prec, mode, &p, &slope, &k), "bm_decay");
  write("bm.json", take(p));
  log_line("bm: k=" + std::to_string(k) + " slope=" + std::to_string(slope));
}

void Run::cmd_spectrum() {
  auto s = subshift();
  qgs_spectrum* raw = nullptr;
  check(qgs_spectrum_assemble(s.get(), cfg_.e_max, cfg_.N, cfg_.tol, cfg_.workers, &raw), "spectrum");
  Spectrum rep(raw);
  char* p = nullptr;
  check(qgs_spectrum_json(raw, &p), "spectrum_json");
  write("spectrum.json", take(p));
  check(qgs_spectrum_sigma_csv(raw, &p), "sigma_csv");
  write("sigma.csv", take(p));
  check(qgs_spectrum_plot_csv(raw, static_cast<size_t>(cfg_.plot_samples), &p), "plot_csv");
  write("plot.csv", take(p));
  qgs_bandset* c = nullptr;
  check(qgs_spectrum_continuum(raw, &c), "continuum");
  Bands cont(c);
  check(qgs_bandset_csv(c, &p), "bands_csv");
  write("continuum.csv", take(p));
  if (qgs_bandset_conservative(c)) warn("continuum cover exceeded its budget (conservative)");
}

void Run::cmd_oracle() {
  const long lo = static_cast<long>(std::floor(cfg_.x_lo));
  const long hi = static_cast<long>(std::ceil(cfg_.x_hi)) + 1;
  Word w = word(lo, hi - lo);
  char* p = nullptr;
  check(qgs_oracle_eigenvalues_csv(w.get(), mode_of(cfg_.mode), cfg_.x_lo, cfg_.x_hi, cfg_.M, bc_of(cfg_.bc_lo),
                                   bc_of(cfg_.bc_hi), cfg_.e_lo, cfg_.e_hi, &p),
        "oracle");
  write("eigenvalues.csv", take(p));
  if (cfg_.periods > 0) {
    const auto per = period();
    qgs_bandset* raw = nullptr;
    check(qgs_oracle_chain_bands(per.data(), per.size(), mode_of(cfg_.mode), cfg_.periods, cfg_.M, cfg_.e_hi, &raw),
          "chain_bands");
    Bands b(raw);
    check(qgs_bandset_csv(raw, &p), "bands_csv");
    write("oracle_bands.csv", take(p));
  }
}

int Run::execute() {
  if (command_ == "word") cmd_word();
  else if (command_ == "lyapunov") cmd_lyapunov();
  else if (command_ == "trace") cmd_trace();
  else if (command_ == "bands") cmd_bands();
  else if (command_ == "weyl") cmd_weyl();
  else if (command_ == "bm") cmd_bm();
  else if (command_ == "spectrum") cmd_spectrum();
  else if (command_ == "oracle") cmd_oracle();
  else throw ConfigError("unknown command '" + command_ + "'");
  return unconverged_ ? kExitUnconverged : kExitOk;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int exit_for(qgs_status s) {
  switch (s) {
    case QGS_ERR_UNCONVERGED: return kExitUnconverged;
    case QGS_ERR_INTERNAL: return kExitInternal;
    default: return kExitValidation;
  }
}

int run_command(const std::string& command, const RunConfig& cfg, const std::vector<std::string>& argv) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string started = utc_now();
  Run run(command, cfg);
  int code = kExitOk;
  std::string message = "ok";

  try {
    qgs::cli::validate(cfg);
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec || !fs::is_directory(cfg.out)) throw IoError("cannot create output directory " + cfg.out);
    code = run.execute();
    if (code == kExitUnconverged) message = "completed with unconverged-result warnings";
  } catch (const ConfigError& e) {
    code = kExitValidation;
    message = e.what();
  } catch (const IoError& e) {
    code = kExitValidation;
    message = e.what();
  } catch (const ApiError& e) {
    code = exit_for(e.status);
    message = e.what();
  } catch (const std::exception& e) {
    code = kExitInternal;
    message = e.what();
  }
  if (code != kExitOk) log_line(message);

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json m;
  m["command"] = command;
  m["version"] = qgs_version();
  m["argv"] = argv;
  m["config_path"] = cfg.config_path;
  m["config_text"] = cfg.config_text;
  json eff = json::object();
  for (const auto& [k, v] : qgs::cli::effective_values(cfg)) eff[k] = v;
  m["effective_config"] = eff;
  m["outputs"] = run.outputs();
  m["warnings"] = run.warnings_;
  m["exit_code"] = code;
  m["message"] = message;
  m["started_at"] = started;
  m["wall_time_s"] = wall;
  if (fs::is_directory(cfg.out)) {
    std::ofstream f(fs::path(cfg.out) / "run_manifest.json", std::ios::binary | std::ios::trunc);
    if (!f || !(f << m.dump(2) << "\n")) {
      log_line("cannot write run_manifest.json in " + cfg.out);
      if (code == kExitOk) code = kExitValidation;
    }
  }
  if (code == kExitOk) log_line(command + ": done in " + std::to_string(wall) + " s, outputs in " + cfg.out);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral computations for quantum graphs over aperiodic sequences"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qgs_version()));

  std::string config_path, out, precision, spec, mode;
  unsigned workers = 0;
  std::vector<std::string> sets;
  std::optional<double> lo, hi, tol;
  std::optional<int> N, count, k;
  std::optional<long> length;
  std::string period;

  app.add_option("--config", config_path, "config file ([section] key = value)");
  app.add_option("--out", out, "output directory");
  auto* wopt = app.add_option("--workers", workers, "worker threads (default: available parallelism)");
  app.add_option("--precision", precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));
  app.add_option("--spec", spec, "subshift: fibonacci | constant:s | periodic:s ... | substitution:... | sturmian:... | explicit:path");
  app.add_option("--mode", mode, "graph, simplified or verbatim");
  app.add_option("--lo", lo, "energy range start");
  app.add_option("--hi", hi, "energy range end");
  app.add_option("--tol", tol, "energy tolerance");
  app.add_option("--count", count, "energy grid points");
  app.add_option("-N", N, "trace-map depth");
  app.add_option("--k", k, "Borg-Marchenko agreement length preset");
  app.add_option("--length", length, "word length");
  app.add_option("--period", period, "period word, e.g. \"1 2\"");
  app.add_option("--set", sets, "override any config key: section.key=value")->take_all();

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"word", "generate a word, weights, factor and Boshernitzan statistics"},
      {"lyapunov", "Lyapunov exponent sweep over the energy grid"},
      {"trace", "trace-map escape covers and the measure curve"},
      {"bands", "Floquet bands of a periodic word"},
      {"weyl", "Weyl m-function on a grid of z"},
      {"bm", "Borg-Marchenko decay fit"},
      {"spectrum", "assembled spectrum report"},
      {"oracle", "finite-difference eigenvalues"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = qgs::cli::load_config(config_path);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects section.key=value, got '" + s + "'");
      qgs::cli::set_value(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (!out.empty()) cfg.out = out;
    if (*wopt) cfg.workers = workers;
    if (!precision.empty()) cfg.precision = precision;
    if (!spec.empty()) cfg.spec = spec;
    if (!mode.empty()) cfg.mode = mode;
    if (!period.empty()) cfg.period = period;
    if (lo) cfg.e_lo = *lo;
    if (hi) cfg.e_hi = *hi;
    if (tol) cfg.tol = *tol;
    if (count) cfg.e_count = *count;
    if (N) cfg.N = *N;
    if (k) cfg.k = *k;
    if (length) cfg.length = *length;
    if (command == "trace" && N && cfg.N_curve_min > cfg.N) cfg.N_curve_min = cfg.N;
  } catch (const ConfigError& e) {
    log_line(e.what());
    return kExitValidation;
  }
  return run_command(command, cfg, std::vector<std::string>(argv, argv + argc));
}
