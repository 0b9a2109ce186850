// Run configuration for the command-line front end.
//
// The config file is flat "key = value" text grouped by [section] headers.
// Parsing is strict: an unknown section or key is an error, so a misspelled
// tolerance never falls back to its default silently.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgs::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // [run]
  std::string spec = "fibonacci";
  std::string mode = "graph";
  std::string out = "results";
  unsigned workers = 0;  // 0 = available parallelism
  std::string precision = "double";

  // [energy]
  double e_lo = 0.0;
  double e_hi = 40.0;
  int e_count = 41;
  double tol = 1e-4;

  // [word]
  long origin = 0;
  long length = 1000;
  int factor_n = 4;
  int n_max = 50;

  // [lyapunov]
  long n_steps = 10000;
  int n_bases = 8;
  double eps_zero = 1e-2;
  double eps_hyp = 1e-1;

  // [trace]
  int N = 10;
  int N_curve_min = 5;  // measure curve over N_curve_min..N
  int letter_a = 1;
  int letter_b = 2;

  // [bands]
  std::string period;  // empty: taken from a periodic/constant spec

  // [weyl]
  double re_min = -5.0, re_max = 5.0;
  double im_min = 0.5, im_max = 5.0;
  int grid = 11;
  double weyl_tol = 1e-8;
  long profile_length = 4000;

  // [bm]
  int k = 3;
  double alpha = 1.5707963267948966;
  double z_min = 10.0, z_max = 1e4;
  int z_points = 16;
  std::string word_a, word_b;  // word files; empty: Fibonacci preset for k
  std::string bm_mode = "simplified";  // the decay statement is for the simplified weight

  // [spectrum]
  double e_max = 40.0;
  int plot_samples = 2000;

  // [oracle]
  double x_lo = 0.0, x_hi = 20.0;
  int M = 200;
  std::string bc_lo = "dirichlet", bc_hi = "dirichlet";
  int periods = 0;  // >0: chain band clusters of the period

  std::string config_text;  // verbatim file text, for the manifest
  std::string config_path;
};

// every accepted "section.key"
const std::vector<std::string>& known_keys();

void set_value(RunConfig& cfg, const std::string& dotted_key, const std::string& value);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
// range and file checks; throws ConfigError
void validate(const RunConfig& cfg);
// effective values as ordered (section.key, value) pairs
std::vector<std::pair<std::string, std::string>> effective_values(const RunConfig& cfg);

}  // namespace qgs::cli
