#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <string>

namespace torosc {

// Value-semantic RAII wrapper around mpfr_t. Precision is fixed at
// construction; assignment swaps representations.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 128) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr ptr() { return v_; }
  mpfr_srcptr ptr() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  static BigFloat from_rational(const mpq_class& q, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static BigFloat from_double(double d, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  std::string str(size_t digits = 30) const;

  // In-place x <- x - floor(x), result in [0, 1).
  void reduce_mod1() {
    mpfr_t fl;
    mpfr_init2(fl, mpfr_get_prec(v_));
    mpfr_floor(fl, v_);
    mpfr_sub(v_, v_, fl, MPFR_RNDN);
    mpfr_clear(fl);
    if (mpfr_sgn(v_) < 0) mpfr_add_ui(v_, v_, 1, MPFR_RNDN);
    if (mpfr_cmp_ui(v_, 1) >= 0) mpfr_sub_ui(v_, v_, 1, MPFR_RNDN);
  }

 private:
  mpfr_t v_;
};

// e^{2 pi i phase} with the trig evaluated in extended precision so that
// the only loss is the final rounding to double.
std::complex<double> cis_phase(const BigFloat& phase01);
std::complex<double> cis_phase(double phase01);

// |e^{2 pi i a} - e^{2 pi i b}| = 2|sin(pi (a-b))|, computed from the phases
// so that near-equal unit complexes are compared without cancellation.
double unit_circle_distance(const BigFloat& a, const BigFloat& b);

}  // namespace torosc
