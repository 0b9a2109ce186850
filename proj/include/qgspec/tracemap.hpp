#pragma once

#include <vector>

#include "qgspec/band_set.hpp"
#include "qgspec/sl_core.hpp"

namespace qgs {

// Fibonacci words W_n = S^n(1) with S(1) = 12, S(2) = 1, |W_n| = F_n
// (F_0 = 1, F_1 = 2). The letters are then mapped 1 -> a, 2 -> b; a = b = 1
// gives the free surrogate.
struct FibonacciModel {
  Mode mode = Mode::graph;
  int a = 1;
  int b = 2;
};

long fibonacci_number(int n);  // F_n in the convention above
std::vector<int> fibonacci_block(const FibonacciModel& model, int n);

// Monodromy over W_n. graph: weights s_j s_{j+1} with s_{F_n} = a (the next
// letter of the infinite word); simplified: s_j; verbatim: normalised steps
// with the two extension symbols (a, b).
ScaledRealMat2 fibonacci_monodromy(double E, int n, const FibonacciModel& model = {});

// Half trace of the explicit product as mantissa * exp(log_scale).
struct ScaledValue {
  long double mantissa = 0.0L;
  double log_scale = 0.0;
  long double value() const;
};
ScaledValue explicit_half_trace(double E, int n, const FibonacciModel& model = {});

struct TraceTriple {
  double x_prev = 0.0;
  double x_curr = 0.0;
  double x_next = 0.0;
  int index = 4;  // index of x_next
};

// (x_2, x_3, x_4) from explicit products.
TraceTriple fibonacci_initial_traces(double E, const FibonacciModel& model = {});

// x_{n+1} = 2 x_n x_{n-1} - x_{n-2}
TraceTriple trace_step(const TraceTriple& t);

// x^2 + y^2 + z^2 - 2xyz - 1 on (x_next, x_curr, x_prev)
double fricke_invariant(const TraceTriple& t);

// Orbit x_2 .. x_{n_max} by the recursion in extended precision (no saturation).
std::vector<long double> trace_orbit(double E, int n_max, const FibonacciModel& model = {});

constexpr double kTraceSaturation = 1e150;

struct EscapeReport {
  double E = 0.0;
  bool escaped = false;
  int escape_index = -1;      // index n+1 at which the criterion first held
  double max_abs = 0.0;       // largest |x| seen
  int steps = 0;              // recursion steps taken
  bool saturated = false;     // |x| passed kTraceSaturation
  bool permanence_ok = true;  // |x_k| > 1 for the 3 steps after escape
};

EscapeReport escape_index(double E, int N_max, const FibonacciModel& model = {});

struct EscapeCoverOptions {
  unsigned workers = 1;
  long max_evaluations = 50'000'000;
};

// Closed cover of B_N cap [E_lo, E_hi]: energies where the criterion does not
// fire at any index <= N. Lattice cells of width <= tol are kept whenever one
// endpoint is retained, so the result over-covers.
BandSet escape_band_set(double E_lo, double E_hi, int N, double tol, const FibonacciModel& model = {},
                        const EscapeCoverOptions& opts = {});

}  // namespace qgs
