#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qgspec/linalg.hpp"
#include "qgspec/sequences.hpp"
#include "qgspec/sl_core.hpp"

namespace qgs {

// W(f, g)(x) = f(x) (mu g')(x) - (mu f')(x) g(x). Solutions start at x = 0,
// so profiles must have origin 0.
struct WeylDisk {
  cdouble z;
  double b = 0.0;
  cdouble center;
  double radius = 0.0;
  double log_radius = 0.0;  // radius may underflow; this does not
};

// Circle of m with a real boundary condition at b:
//   center = -W(theta, conj phi)(b) / W(phi, conj phi)(b),  radius = 1 / |W(phi, conj phi)(b)|
WeylDisk weyl_disk(const WeightProfile& profile, cdouble z, double b);

struct MFunctionSample {
  cdouble z;
  cdouble m;
  double radius = 0.0;  // |m - true m| <= radius (the true m lies in the disk)
  double b = 0.0;
  bool converged = false;
};

// b starts at max(4, 20 / Re sqrt(-z)) and grows until radius < tol or the
// profile runs out (then converged = false).
MFunctionSample m_function(const WeightProfile& profile, cdouble z, double tol);

std::string m_function_csv(const std::vector<MFunctionSample>& samples);

// m(Ts) from m(s) across the first cell (weight w, unit length).
cdouble shift_mobius(cdouble m, double w, cdouble z);

// |m(T^shifts s) - (Mobius^shifts)(m(s))|; throws unconverged if either m fails.
double shift_identity_residual(const WeightProfile& profile, cdouble z, int shifts = 1, double tol = 1e-10);

enum class Precision { standard, extended };
const char* to_string(Precision p);
Precision parse_precision(const std::string& s);

// Number of leading entries on which the windows agree (both start at 0).
long agreement_length(const SymbolWindow& a, const SymbolWindow& b);

struct DecayPoint {
  double abs_z = 0.0;
  cdouble z;
  double x = 0.0;         // 2 Re sqrt(-z)
  double log_diff = 0.0;  // log |m - m~|
};

struct DecayFit {
  long k = 0;  // agreement on 0..k; -1 if the windows differ at 0
  double alpha = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  Precision precision = Precision::standard;
  Mode mode = Mode::simplified;
  std::vector<DecayPoint> points;
};

std::vector<double> log_grid(double lo, double hi, int n);

// Regresses log|m - m~| on 2 Re sqrt(-z) along z = |z| e^{i alpha}.
// standard: m - m~ = (q - q~) / ((d - b q)(d - b q~)) through the common prefix
// propagator [a b; c d], with q, q~ the m-functions of the tails; no cancellation.
// extended: both m computed directly in 300-digit arithmetic and subtracted.
DecayFit borg_marchenko_decay(const SymbolWindow& a, const SymbolWindow& b, double alpha,
                              const std::vector<double>& abs_z, Precision precision = Precision::standard,
                              Mode mode = Mode::simplified);

// Two windows of the Fibonacci subshift (shifts of the fixed point) that agree
// on 0..k and differ at k + 1; k = -1 gives windows differing at 0.
std::pair<SymbolWindow, SymbolWindow> bm_preset_windows(long k, std::size_t length = 400);

std::string decay_json(const DecayFit& fit);

namespace detail {
// log |m_A(z) - m_B(z)| with both m as disk centres at b, in 300-digit arithmetic.
double log_abs_m_difference_extended(const WeightProfile& A, const WeightProfile& B, cdouble z, double b);
}  // namespace detail

}  // namespace qgs
