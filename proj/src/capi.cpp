#include "qgspec/qgspec.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "qgspec/band_set.hpp"
#include "qgspec/error.hpp"
#include "qgspec/io.hpp"
#include "qgspec/lyapunov.hpp"
#include "qgspec/oracle.hpp"
#include "qgspec/parallel.hpp"
#include "qgspec/sequences.hpp"
#include "qgspec/spectrum.hpp"
#include "qgspec/tracemap.hpp"
#include "qgspec/weyl.hpp"

struct qgs_subshift {
  qgs::SubshiftSpec spec;
};
struct qgs_word {
  qgs::SymbolWindow window;
};
struct qgs_bandset {
  qgs::BandSet bands;
};
struct qgs_spectrum {
  qgs::SpectrumReport report;
};

namespace {

thread_local std::string g_last_error;

qgs_status to_status(qgs::ErrorCode c) {
  switch (c) {
    case qgs::ErrorCode::invalid_argument: return QGS_ERR_INVALID_ARGUMENT;
    case qgs::ErrorCode::out_of_range: return QGS_ERR_OUT_OF_RANGE;
    case qgs::ErrorCode::unconverged: return QGS_ERR_UNCONVERGED;
    case qgs::ErrorCode::io: return QGS_ERR_IO;
    case qgs::ErrorCode::internal: return QGS_ERR_INTERNAL;
  }
  return QGS_ERR_INTERNAL;
}

template <class F>
qgs_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return QGS_OK;
  } catch (const qgs::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QGS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QGS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return QGS_ERR_INTERNAL;
  }
}

#define QGS_NONNULL(p)                                   \
  do {                                                   \
    if (!(p)) {                                          \
      g_last_error = "null pointer argument: " #p;       \
      return QGS_ERR_NULL_POINTER;                       \
    }                                                    \
  } while (0)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qgs::Mode to_mode(qgs_mode m) {
  switch (m) {
    case QGS_MODE_GRAPH: return qgs::Mode::graph;
    case QGS_MODE_SIMPLIFIED: return qgs::Mode::simplified;
    case QGS_MODE_VERBATIM: return qgs::Mode::verbatim;
  }
  qgs::fail(qgs::ErrorCode::invalid_argument, "unknown mode value");
}

qgs::WeightProfile profile_of(const qgs_word* w, qgs_mode mode) { return qgs::weights_from_spheres(w->window, to_mode(mode)); }

}  // namespace

extern "C" {

const char* qgs_version(void) { return QGS_VERSION; }

const char* qgs_last_error(void) { return g_last_error.c_str(); }

void qgs_string_free(char* s) { std::free(s); }

const char* qgs_status_name(qgs_status status) {
  switch (status) {
    case QGS_OK: return "ok";
    case QGS_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case QGS_ERR_OUT_OF_RANGE: return "out_of_range";
    case QGS_ERR_UNCONVERGED: return "unconverged";
    case QGS_ERR_IO: return "io";
    case QGS_ERR_INTERNAL: return "internal";
    case QGS_ERR_NULL_POINTER: return "null_pointer";
  }
  return "unknown";
}

qgs_status qgs_subshift_parse(const char* text, qgs_subshift** out) {
  QGS_NONNULL(text);
  QGS_NONNULL(out);
  *out = nullptr;
  return guard([&] { *out = new qgs_subshift{qgs::parse_subshift(text)}; });
}

void qgs_subshift_free(qgs_subshift* spec) { delete spec; }

qgs_status qgs_subshift_describe(const qgs_subshift* spec, char** out) {
  QGS_NONNULL(spec);
  QGS_NONNULL(out);
  return guard([&] { *out = dup_string(qgs::describe(spec->spec)); });
}

qgs_status qgs_word_generate(const qgs_subshift* spec, long origin, size_t length, qgs_word** out) {
  QGS_NONNULL(spec);
  QGS_NONNULL(out);
  *out = nullptr;
  return guard([&] { *out = new qgs_word{qgs::generate_word(spec->spec, origin, length)}; });
}

qgs_status qgs_word_from_symbols(long origin, const int* symbols, size_t length, qgs_word** out) {
  QGS_NONNULL(symbols);
  QGS_NONNULL(out);
  *out = nullptr;
  return guard([&] { *out = new qgs_word{qgs::SymbolWindow(origin, std::vector<int>(symbols, symbols + length))}; });
}

qgs_status qgs_word_read(const char* path, qgs_word** out) {
  QGS_NONNULL(path);
  QGS_NONNULL(out);
  *out = nullptr;
  return guard([&] { *out = new qgs_word{qgs::read_word_file(path)}; });
}

void qgs_word_free(qgs_word* word) { delete word; }

size_t qgs_word_length(const qgs_word* word) { return word ? word->window.size() : 0; }

long qgs_word_origin(const qgs_word* word) { return word ? word->window.origin : 0; }

qgs_status qgs_word_symbols(const qgs_word* word, int* buffer, size_t cap) {
  QGS_NONNULL(word);
  QGS_NONNULL(buffer);
  const size_t n = std::min(cap, word->window.size());
  std::copy(word->window.data.begin(), word->window.data.begin() + static_cast<long>(n), buffer);
  return QGS_OK;
}

qgs_status qgs_word_format(const qgs_word* word, char** out) {
  QGS_NONNULL(word);
  QGS_NONNULL(out);
  return guard([&] { *out = dup_string(qgs::format_word(word->window)); });
}

qgs_status qgs_word_weights_format(const qgs_word* word, qgs_mode mode, char** out) {
  QGS_NONNULL(word);
  QGS_NONNULL(out);
  return guard([&] { *out = dup_string(qgs::format_weights(profile_of(word, mode))); });
}

qgs_status qgs_word_factor_csv(const qgs_word* word, size_t n, char** csv, size_t* complexity) {
  QGS_NONNULL(word);
  QGS_NONNULL(csv);
  return guard([&] {
    const auto st = qgs::factor_statistics(word->window, n);
    std::string out = qgs::csv_row({"factor", "frequency"});
    for (const auto& [w, f] : st.frequency) {
      std::string key;
      for (std::size_t i = 0; i < w.size(); ++i) key += (i ? " " : "") + std::to_string(w[i]);
      out += qgs::csv_row({key, qgs::fmt(f)});
    }
    *csv = dup_string(out);
    if (complexity) *complexity = st.complexity;
  });
}

qgs_status qgs_word_boshernitzan_csv(const qgs_word* word, size_t n_max, char** csv, double* min_scaled) {
  QGS_NONNULL(word);
  QGS_NONNULL(csv);
  return guard([&] {
    const auto prof = qgs::boshernitzan_profile(word->window, n_max);
    std::string out = qgs::csv_row({"n", "min_frequency", "n_eta"});
    double lo = INFINITY;
    for (const auto& p : prof) {
      out += qgs::csv_row({std::to_string(p.n), qgs::fmt(p.min_frequency), qgs::fmt(p.scaled)});
      lo = std::min(lo, p.scaled);
    }
    *csv = dup_string(out);
    if (min_scaled) *min_scaled = lo;
  });
}

qgs_status qgs_shift_distance(const qgs_word* a, const qgs_word* b, double* value, double* tail_bound) {
  QGS_NONNULL(a);
  QGS_NONNULL(b);
  QGS_NONNULL(value);
  return guard([&] {
    const auto d = qgs::shift_distance(a->window, b->window);
    *value = d.value;
    if (tail_bound) *tail_bound = d.tail_bound;
  });
}

qgs_status qgs_lyapunov_sweep_csv(const qgs_subshift* spec, const double* energies, size_t n_energies, long n_steps,
                                  int n_bases, qgs_mode mode, double eps_zero, double eps_hyp, unsigned workers,
                                  char** out) {
  QGS_NONNULL(spec);
  QGS_NONNULL(energies);
  QGS_NONNULL(out);
  return guard([&] {
    const std::vector<double> E(energies, energies + n_energies);
    const auto rows = qgs::lyapunov_sweep(spec->spec, E, n_steps, n_bases, to_mode(mode), {eps_zero, eps_hyp}, workers);
    *out = dup_string(qgs::lyapunov_csv(rows));
  });
}

qgs_status qgs_lyapunov(const qgs_subshift* spec, double E, long n_steps, int n_bases, qgs_mode mode, double* value,
                        double* spread) {
  QGS_NONNULL(spec);
  QGS_NONNULL(value);
  return guard([&] {
    const auto est = qgs::lyapunov_estimate(spec->spec, E, n_steps, n_bases, to_mode(mode));
    *value = est.value;
    if (spread) *spread = est.spread;
  });
}

void qgs_bandset_free(qgs_bandset* bands) { delete bands; }

size_t qgs_bandset_count(const qgs_bandset* bands) { return bands ? bands->bands.intervals.size() : 0; }

qgs_status qgs_bandset_interval(const qgs_bandset* bands, size_t index, double* lo, double* hi) {
  QGS_NONNULL(bands);
  QGS_NONNULL(lo);
  QGS_NONNULL(hi);
  if (index >= bands->bands.intervals.size()) {
    g_last_error = "band index out of range";
    return QGS_ERR_OUT_OF_RANGE;
  }
  *lo = bands->bands.intervals[index].lo;
  *hi = bands->bands.intervals[index].hi;
  return QGS_OK;
}

double qgs_bandset_measure(const qgs_bandset* bands) { return bands ? bands->bands.measure() : 0.0; }

double qgs_bandset_diagnostic(const qgs_bandset* bands) {
  return bands ? qgs::measure_estimate(bands->bands).diagnostic : 0.0;
}

int qgs_bandset_conservative(const qgs_bandset* bands) { return bands && bands->bands.conservative ? 1 : 0; }

qgs_status qgs_bandset_csv(const qgs_bandset* bands, char** out) {
  QGS_NONNULL(bands);
  QGS_NONNULL(out);
  return guard([&] { *out = dup_string(qgs::bands_csv(bands->bands)); });
}

int qgs_bandset_subset(const qgs_bandset* inner, const qgs_bandset* outer, double slack) {
  if (!inner || !outer) return 0;
  return inner->bands.subset_of(outer->bands, slack) ? 1 : 0;
}

qgs_status qgs_escape_bands(double E_lo, double E_hi, int N, double tol, qgs_mode mode, int letter_a, int letter_b,
                            unsigned workers, qgs_bandset** out) {
  QGS_NONNULL(out);
  *out = nullptr;
  return guard([&] {
    qgs::EscapeCoverOptions opts;
    opts.workers = workers;
    *out = new qgs_bandset{qgs::escape_band_set(E_lo, E_hi, N, tol, {to_mode(mode), letter_a, letter_b}, opts)};
  });
}

qgs_status qgs_escape_index(double E, int N_max, qgs_mode mode, int letter_a, int letter_b, int* escaped, int* index,
                            double* max_abs) {
  QGS_NONNULL(escaped);
  return guard([&] {
    const auto rep = qgs::escape_index(E, N_max, {to_mode(mode), letter_a, letter_b});
    *escaped = rep.escaped ? 1 : 0;
    if (index) *index = rep.escape_index;
    if (max_abs) *max_abs = rep.max_abs;
  });
}

qgs_status qgs_floquet_bands(const int* period, size_t length, qgs_mode mode, double E_lo, double E_hi, double tol,
                             qgs_bandset** out) {
  QGS_NONNULL(period);
  QGS_NONNULL(out);
  *out = nullptr;
  return guard([&] {
    *out = new qgs_bandset{
        qgs::floquet_bands(std::vector<int>(period, period + length), to_mode(mode), E_lo, E_hi, tol)};
  });
}

qgs_status qgs_m_function(const qgs_word* word, qgs_mode mode, double re_z, double im_z, double tol, double* re_m,
                          double* im_m, double* radius, int* converged) {
  QGS_NONNULL(word);
  QGS_NONNULL(re_m);
  QGS_NONNULL(im_m);
  return guard([&] {
    const auto s = qgs::m_function(profile_of(word, mode), {re_z, im_z}, tol);
    *re_m = s.m.real();
    *im_m = s.m.imag();
    if (radius) *radius = s.radius;
    if (converged) *converged = s.converged ? 1 : 0;
  });
}

qgs_status qgs_weyl_grid_csv(const qgs_word* word, qgs_mode mode, const double* re_z, const double* im_z, size_t n,
                             double tol, unsigned workers, char** out) {
  QGS_NONNULL(word);
  QGS_NONNULL(re_z);
  QGS_NONNULL(im_z);
  QGS_NONNULL(out);
  return guard([&] {
    const auto profile = profile_of(word, mode);
    const auto samples = qgs::parallel_map<qgs::MFunctionSample>(
        n, workers, [&](std::size_t i) { return qgs::m_function(profile, {re_z[i], im_z[i]}, tol); });
    *out = dup_string(qgs::m_function_csv(samples));
  });
}

qgs_status qgs_shift_residual(const qgs_word* word, qgs_mode mode, double re_z, double im_z, int shifts,
                              double* residual) {
  QGS_NONNULL(word);
  QGS_NONNULL(residual);
  return guard([&] { *residual = qgs::shift_identity_residual(profile_of(word, mode), {re_z, im_z}, shifts); });
}

qgs_status qgs_bm_decay_json(const qgs_word* a, const qgs_word* b, double alpha, const double* abs_z, size_t n,
                             qgs_precision precision, qgs_mode mode, char** json, double* slope, long* k) {
  QGS_NONNULL(a);
  QGS_NONNULL(b);
  QGS_NONNULL(abs_z);
  return guard([&] {
    const auto fit = qgs::borg_marchenko_decay(
        a->window, b->window, alpha, std::vector<double>(abs_z, abs_z + n),
        precision == QGS_PRECISION_EXTENDED ? qgs::Precision::extended : qgs::Precision::standard, to_mode(mode));
    if (json) *json = dup_string(qgs::decay_json(fit));
    if (slope) *slope = fit.slope;
    if (k) *k = fit.k;
  });
}

qgs_status qgs_bm_preset(long k, size_t length, qgs_word** a, qgs_word** b) {
  QGS_NONNULL(a);
  QGS_NONNULL(b);
  *a = nullptr;
  *b = nullptr;
  return guard([&] {
    auto [wa, wb] = qgs::bm_preset_windows(k, length);
    *a = new qgs_word{std::move(wa)};
    *b = new qgs_word{std::move(wb)};
  });
}

qgs_status qgs_spectrum_assemble(const qgs_subshift* spec, double E_max, int N, double tol, unsigned workers,
                                 qgs_spectrum** out) {
  QGS_NONNULL(spec);
  QGS_NONNULL(out);
  *out = nullptr;
  return guard([&] {
    qgs::AssembleOptions opts;
    opts.workers = workers;
    *out = new qgs_spectrum{qgs::assemble_spectrum(spec->spec, E_max, N, tol, opts)};
  });
}

void qgs_spectrum_free(qgs_spectrum* report) { delete report; }

qgs_status qgs_spectrum_json(const qgs_spectrum* report, char** out) {
  QGS_NONNULL(report);
  QGS_NONNULL(out);
  return guard([&] { *out = dup_string(qgs::spectrum_json(report->report)); });
}

qgs_status qgs_spectrum_sigma_csv(const qgs_spectrum* report, char** out) {
  QGS_NONNULL(report);
  QGS_NONNULL(out);
  return guard([&] { *out = dup_string(qgs::sigma_csv(report->report)); });
}

qgs_status qgs_spectrum_plot_csv(const qgs_spectrum* report, size_t samples, char** out) {
  QGS_NONNULL(report);
  QGS_NONNULL(out);
  return guard([&] { *out = dup_string(qgs::spectrum_plot_data(report->report, samples)); });
}

qgs_status qgs_spectrum_continuum(const qgs_spectrum* report, qgs_bandset** out) {
  QGS_NONNULL(report);
  QGS_NONNULL(out);
  *out = nullptr;
  return guard([&] { *out = new qgs_bandset{report->report.continuum}; });
}

qgs_status qgs_oracle_eigenvalues_csv(const qgs_word* word, qgs_mode mode, double x_lo, double x_hi, int M,
                                      qgs_boundary bc_lo, qgs_boundary bc_hi, double E_lo, double E_hi, char** out) {
  QGS_NONNULL(word);
  QGS_NONNULL(out);
  return guard([&] {
    auto bc = [](qgs_boundary b) { return b == QGS_BC_NEUMANN ? qgs::Boundary::neumann : qgs::Boundary::dirichlet; };
    const auto op = qgs::discretize(profile_of(word, mode), x_lo, x_hi, M, bc(bc_lo), bc(bc_hi));
    *out = dup_string(qgs::eigenvalues_csv(qgs::tridiag_eigenvalues(op, E_lo, E_hi)));
  });
}

qgs_status qgs_oracle_chain_bands(const int* period, size_t length, qgs_mode mode, int n_periods, int M, double E_max,
                                  qgs_bandset** out) {
  QGS_NONNULL(period);
  QGS_NONNULL(out);
  *out = nullptr;
  return guard([&] {
    *out = new qgs_bandset{
        qgs::chain_bands(std::vector<int>(period, period + length), to_mode(mode), n_periods, M, E_max)};
  });
}

}  // extern "C"
