#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "torosc/poly.hpp"

namespace torosc {

// Test-input sequence (c_n). Four kinds: a polynomial exponential phase,
// the Moebius function, an explicit value list, and a rational modulation
// of another spec. Per-index evaluation is pure; specs are cheap to copy
// (shared immutable payload).
class SequenceSpec {
 public:
  enum class Kind { polynomial_phase, moebius, explicit_list, modulated_product };

  static SequenceSpec polynomial_phase(RealPoly p);
  static SequenceSpec explicit_list(std::vector<std::complex<double>> values);
  // c_n = mu(n+1) for n = 0..length-1, by linear sieve.
  static SequenceSpec moebius(int64_t length);

  Kind kind() const { return impl_->kind; }
  // Largest count of producible terms (INT64_MAX when unbounded).
  int64_t length() const;
  // c_n, pure per-index evaluation.
  std::complex<double> term(int64_t n, mpfr_prec_t prec = 96) const;
  bool exactly_summable() const;

  const RealPoly& phase_poly() const { return impl_->phase; }
  const std::vector<int8_t>& mu_values() const { return impl_->mu; }
  const std::vector<std::complex<double>>& list_values() const { return impl_->values; }
  const SequenceSpec& base() const { return *impl_->base; }
  const RatPoly& modulation() const { return impl_->modulation; }
  unsigned long modulation_period() const { return impl_->period; }

 private:
  struct Impl {
    Kind kind;
    RealPoly phase;                           // polynomial_phase
    std::vector<int8_t> mu;                   // moebius
    std::vector<std::complex<double>> values; // explicit_list
    std::shared_ptr<const SequenceSpec> base; // modulated_product
    RatPoly modulation;
    unsigned long period = 1;
  };
  explicit SequenceSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend SequenceSpec modulate_rational(const SequenceSpec&, const RatPoly&);
  friend SequenceSpec arithmetic_subsequence(const SequenceSpec&, int64_t, int64_t);
};

// n -> c_{an+b}; polynomial phases substitute exactly, value lists restride.
SequenceSpec arithmetic_subsequence(const SequenceSpec& c, int64_t a, int64_t b);

// n -> c_n e^{2 pi i Q(n)}; carries the minimal period of Q mod 1.
SequenceSpec modulate_rational(const SequenceSpec& c, const RatPoly& q);

// c_n = e^{2 pi i (n^d alpha + n^{d-1} beta)}; requires d >= 2 and
// irrational alpha, beta.
SequenceSpec counterexample_weak_not_full(int d, const Scalar& alpha, const Scalar& beta);

// mu(1..n) by a second, independent method (divisor-sum sieve); test oracle.
std::vector<int8_t> moebius_by_divisor_sums(int64_t n);

// Flattened view used by the summation kernels: an optional value stream
// times one combined polynomial phase.
struct FlatSequence {
  RealPoly phase;
  const std::vector<int8_t>* mu = nullptr;
  const std::vector<std::complex<double>>* values = nullptr;
  int64_t length = INT64_MAX;
};
FlatSequence flatten(const SequenceSpec& c);

}  // namespace torosc
