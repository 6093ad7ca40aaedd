#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

#include "torosc/bigfloat.hpp"

namespace torosc {

// Exact element of the ring generated over Q by square roots of nonnegative
// integers: a finite sum  sum_k c_k * sqrt(k)  with rational c_k and
// squarefree radicands k (k = 1 carries the rational part). Closed under
// + - * and rational scaling, which covers the coefficient grammar
// ("p/q", decimal strings, "sqrt(k)" combined with + - * and rational
// scaling). Division is permitted by rational-valued scalars only.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : Scalar(mpq_class(v)) {}  // NOLINT(runtime/explicit)
  Scalar(const mpq_class& v);               // NOLINT(runtime/explicit)
  Scalar(const mpz_class& v) : Scalar(mpq_class(v)) {}  // NOLINT

  static Scalar sqrt_of(unsigned long k);
  // Grammar: expr := term (('+'|'-') term)*
  //          term := factor (('*'|'/') factor)*
  //          factor := ['-'] atom | atom
  //          atom := integer | decimal | 'sqrt' '(' integer ')' | '(' expr ')'
  static Scalar parse(const std::string& expr);

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  Scalar operator-() const;

  Scalar& scale(const mpq_class& q);
  // Throws std::domain_error unless o is rational and nonzero.
  Scalar divided_by(const Scalar& o) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  bool is_integer() const;
  // Rational part (coefficient of sqrt(1)); zero if absent.
  mpq_class rational_part() const;
  // Whole value as a rational; throws std::domain_error when irrational.
  mpq_class as_rational() const;

  bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Exact evaluation rounded to `prec` bits.
  BigFloat eval(mpfr_prec_t prec) const;
  // Fractional part in [0,1) at `prec` bits of absolute accuracy, computed
  // at a working precision covering the integer magnitude of the value.
  BigFloat frac(mpfr_prec_t prec) const;
  double to_double() const { return eval(64).to_double(); }
  // Upper bound on log2 |value|, for working-precision selection.
  long magnitude_bits() const;

  // Round-trippable textual form, e.g. "-3/2*sqrt(2)+1/3".
  std::string str() const;

  const std::map<unsigned long, mpq_class>& terms() const { return terms_; }

 private:
  void set_term(unsigned long radicand, const mpq_class& c);
  // radicand -> coefficient; radicands squarefree, coefficients nonzero
  std::map<unsigned long, mpq_class> terms_;
};

}  // namespace torosc
