#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace qgs {

using cdouble = std::complex<double>;

// State of a solution in canonical coordinates: the value u and the
// quasi-derivative p = w u'. Both are continuous across vertices.
template <class T>
struct StateVectorT {
  T u{};
  T p{};
};

using StateVector = StateVectorT<cdouble>;

template <class T>
struct Mat2T {
  T a{1}, b{0}, c{0}, d{1};

  static Mat2T identity() { return {T(1), T(0), T(0), T(1)}; }

  T det() const { return a * d - b * c; }
  T trace() const { return a + d; }

  // Inverse of a unimodular matrix (adjugate).
  Mat2T unimodular_inverse() const { return {d, -b, -c, a}; }

  Mat2T inverse() const {
    const T D = det();
    return {d / D, -b / D, -c / D, a / D};
  }

  double max_abs() const {
    using std::abs;
    return std::max({double(abs(a)), double(abs(b)), double(abs(c)), double(abs(d))});
  }

  Mat2T& operator*=(const T& s) {
    a *= s; b *= s; c *= s; d *= s;
    return *this;
  }

  friend Mat2T operator*(const Mat2T& x, const Mat2T& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }

  friend StateVectorT<T> operator*(const Mat2T& m, const StateVectorT<T>& s) {
    return {m.a * s.u + m.b * s.p, m.c * s.u + m.d * s.p};
  }
};

using Mat2 = Mat2T<cdouble>;
using RealMat2 = Mat2T<double>;

// Spectral (operator 2-) norm of a 2x2 matrix.
template <class T>
double spectral_norm(const Mat2T<T>& m) {
  using std::abs;
  using std::norm;
  const double f2 = double(norm(m.a) + norm(m.b) + norm(m.c) + norm(m.d));
  const double dd = double(abs(m.det()));
  const double disc = std::max(0.0, f2 * f2 - 4.0 * dd * dd);
  return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
}

// A matrix stored as exp(log_scale) * m. Long products are renormalised so the
// largest entry of m stays below kRenormThreshold.
template <class T>
struct ScaledMat2T {
  static constexpr double kRenormThreshold = 1e10;

  Mat2T<T> m = Mat2T<T>::identity();
  double log_scale = 0.0;

  void renormalize() {
    const double s = m.max_abs();
    if (s > kRenormThreshold || (s < 1.0 / kRenormThreshold && s > 0.0)) {
      m *= T(1.0 / s);
      log_scale += std::log(s);
    }
  }

  // this <- step * this
  void left_multiply(const Mat2T<T>& step) {
    m = step * m;
    if (m.max_abs() > kRenormThreshold) renormalize();
  }

  void left_multiply(const ScaledMat2T& step) {
    m = step.m * m;
    log_scale += step.log_scale;
    renormalize();
  }

  double log_norm() const { return std::log(spectral_norm(m)) + log_scale; }
};

using ScaledMat2 = ScaledMat2T<cdouble>;
using ScaledRealMat2 = ScaledMat2T<double>;

}  // namespace qgs
