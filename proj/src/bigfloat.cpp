#include "torosc/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace torosc {

std::string BigFloat::str(size_t digits) const {
  char fmt[32];
  std::snprintf(fmt, sizeof(fmt), "%%.%zuRNg", digits);
  std::vector<char> buf(digits + 64);
  mpfr_snprintf(buf.data(), buf.size(), fmt, v_);
  return std::string(buf.data());
}

std::complex<double> cis_phase(const BigFloat& phase01) {
  mpfr_prec_t p = std::max<mpfr_prec_t>(phase01.prec(), 96);
  mpfr_t ang, s, c;
  mpfr_inits2(p, ang, s, c, (mpfr_ptr) nullptr);
  mpfr_const_pi(ang, MPFR_RNDN);
  mpfr_mul_2ui(ang, ang, 1, MPFR_RNDN);
  mpfr_mul(ang, ang, phase01.ptr(), MPFR_RNDN);
  mpfr_sin_cos(s, c, ang, MPFR_RNDN);
  std::complex<double> r(mpfr_get_d(c, MPFR_RNDN), mpfr_get_d(s, MPFR_RNDN));
  mpfr_clears(ang, s, c, (mpfr_ptr) nullptr);
  return r;
}

std::complex<double> cis_phase(double phase01) {
  double ang = 2.0 * 3.14159265358979323846 * phase01;
  return {std::cos(ang), std::sin(ang)};
}

double unit_circle_distance(const BigFloat& a, const BigFloat& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec()) + 8;
  mpfr_t d, pi;
  mpfr_inits2(p, d, pi, (mpfr_ptr) nullptr);
  mpfr_sub(d, a.ptr(), b.ptr(), MPFR_RNDN);
  // wrap to [-1/2, 1/2]
  mpfr_t fl;
  mpfr_init2(fl, p);
  mpfr_round(fl, d);
  mpfr_sub(d, d, fl, MPFR_RNDN);
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_mul(d, d, pi, MPFR_RNDN);
  mpfr_sin(d, d, MPFR_RNDN);
  mpfr_abs(d, d, MPFR_RNDN);
  mpfr_mul_2ui(d, d, 1, MPFR_RNDN);
  double r = mpfr_get_d(d, MPFR_RNDN);
  mpfr_clears(d, pi, fl, (mpfr_ptr) nullptr);
  return r;
}

}  // namespace torosc
