#include "run_config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <variant>

namespace qgs::cli {

namespace {

using Field = std::variant<std::string RunConfig::*, double RunConfig::*, int RunConfig::*, long RunConfig::*,
                           unsigned RunConfig::*>;

struct Binding {
  const char* key;
  Field field;
};

const std::vector<Binding>& bindings() {
  static const std::vector<Binding> table = {
      {"run.spec", &RunConfig::spec},
      {"run.mode", &RunConfig::mode},
      {"run.out", &RunConfig::out},
      {"run.workers", &RunConfig::workers},
      {"run.precision", &RunConfig::precision},
      {"energy.lo", &RunConfig::e_lo},
      {"energy.hi", &RunConfig::e_hi},
      {"energy.count", &RunConfig::e_count},
      {"energy.tol", &RunConfig::tol},
      {"word.origin", &RunConfig::origin},
      {"word.length", &RunConfig::length},
      {"word.factor_n", &RunConfig::factor_n},
      {"word.n_max", &RunConfig::n_max},
      {"lyapunov.n_steps", &RunConfig::n_steps},
      {"lyapunov.n_bases", &RunConfig::n_bases},
      {"lyapunov.eps_zero", &RunConfig::eps_zero},
      {"lyapunov.eps_hyp", &RunConfig::eps_hyp},
      {"trace.N", &RunConfig::N},
      {"trace.N_curve_min", &RunConfig::N_curve_min},
      {"trace.letter_a", &RunConfig::letter_a},
      {"trace.letter_b", &RunConfig::letter_b},
      {"bands.period", &RunConfig::period},
      {"weyl.re_min", &RunConfig::re_min},
      {"weyl.re_max", &RunConfig::re_max},
      {"weyl.im_min", &RunConfig::im_min},
      {"weyl.im_max", &RunConfig::im_max},
      {"weyl.grid", &RunConfig::grid},
      {"weyl.tol", &RunConfig::weyl_tol},
      {"weyl.profile_length", &RunConfig::profile_length},
      {"bm.k", &RunConfig::k},
      {"bm.alpha", &RunConfig::alpha},
      {"bm.z_min", &RunConfig::z_min},
      {"bm.z_max", &RunConfig::z_max},
      {"bm.z_points", &RunConfig::z_points},
      {"bm.word_a", &RunConfig::word_a},
      {"bm.word_b", &RunConfig::word_b},
      {"bm.mode", &RunConfig::bm_mode},
      {"spectrum.e_max", &RunConfig::e_max},
      {"spectrum.plot_samples", &RunConfig::plot_samples},
      {"oracle.x_lo", &RunConfig::x_lo},
      {"oracle.x_hi", &RunConfig::x_hi},
      {"oracle.M", &RunConfig::M},
      {"oracle.bc_lo", &RunConfig::bc_lo},
      {"oracle.bc_hi", &RunConfig::bc_hi},
      {"oracle.periods", &RunConfig::periods},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_integer(const std::string& key, const std::string& v) {
  T out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  if (v.empty()) throw ConfigError(key + ": empty value");
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(x))
    throw ConfigError(key + ": expected a finite number, got '" + v + "'");
  return x;
}

std::string show(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& b : bindings()) k.emplace_back(b.key);
    return k;
  }();
  return keys;
}

void set_value(RunConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  const auto& table = bindings();
  const auto it = std::find_if(table.begin(), table.end(), [&](const Binding& b) { return key == b.key; });
  if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
  std::visit(
      [&](auto member) {
        using T = std::remove_cvref_t<decltype(cfg.*member)>;
        if constexpr (std::is_same_v<T, std::string>) {
          cfg.*member = v;
        } else if constexpr (std::is_same_v<T, double>) {
          cfg.*member = parse_real(key, v);
        } else {
          cfg.*member = parse_integer<T>(key, v);
        }
      },
      it->field);
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.config_text = text;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      const bool known = std::any_of(known_keys().begin(), known_keys().end(),
                                     [&](const std::string& k) { return k.rfind(section + ".", 0) == 0; });
      if (!known) throw ConfigError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    if (section.empty()) throw ConfigError(where + "key outside any section");
    try {
      set_value(cfg, section + "." + trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig cfg = parse_config_text(ss.str());
  cfg.config_path = path;
  return cfg;
}

void validate(const RunConfig& c) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  need(c.mode == "graph" || c.mode == "simplified" || c.mode == "verbatim", "run.mode must be graph, simplified or verbatim");
  need(c.precision == "double" || c.precision == "extended", "run.precision must be double or extended");
  need(!c.out.empty(), "run.out must be set");
  need(c.e_lo < c.e_hi, "energy range must be nonempty (lo < hi)");
  need(c.e_count >= 1, "energy.count must be >= 1");
  need(c.tol > 0, "energy.tol must be > 0");
  need(c.length >= 1, "word.length must be >= 1");
  need(c.factor_n >= 1 && c.n_max >= 1, "word.factor_n and word.n_max must be >= 1");
  need(c.n_steps >= 1000, "lyapunov.n_steps must be >= 1000");
  need(c.n_bases >= 1, "lyapunov.n_bases must be >= 1");
  need(c.eps_zero > 0 && c.eps_hyp > c.eps_zero, "need 0 < lyapunov.eps_zero < lyapunov.eps_hyp");
  need(c.N >= 5 && c.N <= 40, "trace.N must lie in 5..40");
  need(c.N_curve_min >= 5 && c.N_curve_min <= c.N, "trace.N_curve_min must lie in 5..trace.N");
  need(c.letter_a >= 1 && c.letter_b >= 1, "trace letters must be >= 1");
  need(c.re_min <= c.re_max && c.im_min > 0 && c.im_min <= c.im_max, "weyl grid needs re_min <= re_max, 0 < im_min <= im_max");
  need(c.grid >= 1, "weyl.grid must be >= 1");
  need(c.weyl_tol > 0, "weyl.tol must be > 0");
  need(c.profile_length >= 10, "weyl.profile_length must be >= 10");
  need(c.k >= -1 && c.k <= 6, "bm.k must lie in -1..6");
  need(c.alpha > 0 && c.alpha < 3.141592653589793, "bm.alpha must lie in (0, pi)");
  need(c.z_min > 0 && c.z_min < c.z_max, "need 0 < bm.z_min < bm.z_max");
  need(c.z_points >= 3, "bm.z_points must be >= 3");
  need(c.bm_mode == "graph" || c.bm_mode == "simplified", "bm.mode must be graph or simplified");
  need(c.word_a.empty() == c.word_b.empty(), "bm.word_a and bm.word_b go together");
  need(c.e_max > 0, "spectrum.e_max must be > 0");
  need(c.plot_samples >= 2, "spectrum.plot_samples must be >= 2");
  need(c.x_lo < c.x_hi, "oracle needs x_lo < x_hi");
  need(c.M >= 16, "oracle.M must be >= 16");
  for (const auto* bc : {&c.bc_lo, &c.bc_hi}) need(*bc == "dirichlet" || *bc == "neumann", "oracle boundary must be dirichlet or neumann");
  need(c.periods >= 0, "oracle.periods must be >= 0");
  for (const auto* f : {&c.word_a, &c.word_b})
    if (!f->empty()) need(std::filesystem::is_regular_file(*f), "file not found: " + *f);
  if (c.spec.rfind("explicit:", 0) == 0) {
    const std::string f = c.spec.substr(9);
    need(std::filesystem::is_regular_file(f), "file not found: " + f);
  }
}

std::vector<std::pair<std::string, std::string>> effective_values(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& b : bindings()) {
    std::visit(
        [&](auto member) {
          using T = std::remove_cvref_t<decltype(cfg.*member)>;
          if constexpr (std::is_same_v<T, std::string>) {
            out.emplace_back(b.key, cfg.*member);
          } else if constexpr (std::is_same_v<T, double>) {
            out.emplace_back(b.key, show(cfg.*member));
          } else {
            out.emplace_back(b.key, std::to_string(cfg.*member));
          }
        },
        b.field);
  }
  return out;
}

}  // namespace qgs::cli
