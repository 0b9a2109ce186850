// Direct-subtraction route for the Borg-Marchenko fit. The two m-functions
// agree to hundreds of digits at large |z|, so doubles cannot resolve their
// difference; 300 decimal digits cover the |z| <= 1e4 grids with room to spare.
#include <cmath>

#include <boost/multiprecision/cpp_complex.hpp>

#include "qgspec/error.hpp"
#include "qgspec/weyl.hpp"

namespace qgs::detail {

namespace mp = boost::multiprecision;
using Cplx = mp::cpp_complex<300>;
using Real = Cplx::value_type;

namespace {

struct BigMat {
  Cplx a{1}, b{0}, c{0}, d{1};
};

BigMat mul(const BigMat& x, const BigMat& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

BigMat big_cell(const Real& w, const Cplx& z, const Cplx& r, const Real& len) {
  const Cplx x = r * len;
  const Cplx ch = cosh(x);
  const Cplx sh = sinh(x) / r;  // r != 0 off the real axis
  return {ch, sh / w, -w * z * sh, ch};
}

Cplx centre(const WeightProfile& p, const Cplx& z, const Cplx& r, double b) {
  BigMat P;
  double x = 0.0;
  while (x < b) {
    const long n = static_cast<long>(std::floor(x));
    const double end = std::min(static_cast<double>(n + 1), b);
    P = mul(big_cell(Real(p.at(n)), z, r, Real(end - x)), P);
    x = end;
  }
  const Cplx w_phi = P.b * conj(P.d) - P.d * conj(P.b);
  const Cplx w_theta_phi = P.a * conj(P.d) - P.c * conj(P.b);
  return -w_theta_phi / w_phi;
}

}  // namespace

double log_abs_m_difference_extended(const WeightProfile& A, const WeightProfile& B, cdouble z, double b) {
  require(A.origin == 0 && B.origin == 0, "profiles must start at 0");
  require(z.imag() != 0.0, "z must lie off the real axis");
  if (b > static_cast<double>(std::min(A.end(), B.end()))) fail(ErrorCode::out_of_range, "b beyond the profiles");
  const Cplx zz(Real(z.real()), Real(z.imag()));
  const Cplx r = sqrt(-zz);
  const Cplx diff = centre(A, zz, r, b) - centre(B, zz, r, b);
  const Real mag = abs(diff);
  if (mag == 0) fail(ErrorCode::unconverged, "m difference below 300-digit resolution");
  return static_cast<double>(log(mag));
}

}  // namespace qgs::detail
