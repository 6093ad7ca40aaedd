#pragma once

#include <gmpxx.h>

#include <complex>
#include <utility>
#include <vector>

#include "torosc/scalar.hpp"

namespace torosc {

struct UnitComplex {
  double re = 1.0;
  double im = 0.0;
  std::complex<double> value() const { return {re, im}; }
};

// Real polynomial in the power basis; coefficients are exact Scalars
// (rationals or surd combinations), degree-0 coefficient first.
class RealPoly {
 public:
  RealPoly() : c_(1) {}
  explicit RealPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.resize(1);
  }
  static RealPoly zero() { return RealPoly(); }
  static RealPoly monomial(const Scalar& c, int degree);

  // Mathematical degree (index of the last nonzero coefficient); the
  // coefficient list length is the declared bound and is preserved.
  int degree() const;
  size_t coeff_count() const { return c_.size(); }
  const Scalar& coeff(size_t i) const { return c_[i]; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;

  RealPoly& operator+=(const RealPoly& o);
  RealPoly& operator-=(const RealPoly& o);
  friend RealPoly operator+(RealPoly a, const RealPoly& b) { return a += b; }
  friend RealPoly operator-(RealPoly a, const RealPoly& b) { return a -= b; }
  RealPoly operator*(const RealPoly& o) const;
  RealPoly& scale(const mpq_class& q);
  bool operator==(const RealPoly& o) const;

  // Exact evaluation at an integer argument (Horner).
  Scalar eval_at_integer(const mpz_class& n) const;
  // P(a t + b), exact.
  RealPoly compose_affine(const mpz_class& a, const mpz_class& b) const;
  // t * P(t).
  RealPoly shift_up() const;

  std::string str() const;

 private:
  std::vector<Scalar> c_;
};

// Polynomial with exact rational coefficients.
class RatPoly {
 public:
  RatPoly() : c_(1) {}
  explicit RatPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.resize(1);
    for (auto& q : c_) q.canonicalize();
  }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  int degree() const;
  bool is_integer() const;
  RealPoly as_real() const;
  // Exact value of Q(n) mod 1 as a rational in [0, 1).
  mpq_class eval_mod1(const mpz_class& n) const;

 private:
  std::vector<mpq_class> c_;
};

// Coordinates in the binomial basis C_t^0, C_t^1, ..., C_t^d.
class BinomialPoly {
 public:
  BinomialPoly() : y_(1) {}
  explicit BinomialPoly(std::vector<Scalar> coords) : y_(std::move(coords)) {
    if (y_.empty()) y_.resize(1);
  }
  const std::vector<Scalar>& coords() const { return y_; }
  size_t size() const { return y_.size(); }
  const Scalar& coord(size_t i) const { return y_[i]; }

 private:
  std::vector<Scalar> y_;
};

// Binomial-basis coordinates via forward differences at 0:
// x_k = Delta^k P(0). Exact.
BinomialPoly to_binomial(const RealPoly& p);

// Inverse basis change, exact.
RealPoly from_binomial(const BinomialPoly& b);

// P(t) = c0 + t Q(t); returns (c0, Q).
std::pair<Scalar, RealPoly> strip_constant(const RealPoly& p);

// e^{2 pi i P(n)}. P(n) is evaluated exactly and reduced mod 1 at a working
// precision covering its magnitude plus `prec` fractional bits.
UnitComplex eval_phase(const RealPoly& p, const mpz_class& n, mpfr_prec_t prec = 96);
// The reduced phase itself, in [0,1) at `prec` bits.
BigFloat eval_phase_frac(const RealPoly& p, const mpz_class& n, mpfr_prec_t prec = 96);

// Minimal period of n -> Q(n) mod 1. Divides the lcm of the coefficient
// denominators; found by an ascending divisor scan with exact checks.
unsigned long rational_phase_period(const RatPoly& q);

}  // namespace torosc
