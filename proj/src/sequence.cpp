#include "torosc/sequence.hpp"

#include <cmath>

namespace torosc {

SequenceSpec SequenceSpec::polynomial_phase(RealPoly p) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::polynomial_phase;
  impl->phase = std::move(p);
  return SequenceSpec(std::move(impl));
}

SequenceSpec SequenceSpec::explicit_list(std::vector<std::complex<double>> values) {
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("explicit-list: values must be finite");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::explicit_list;
  impl->values = std::move(values);
  return SequenceSpec(std::move(impl));
}

SequenceSpec SequenceSpec::moebius(int64_t length) {
  if (length < 1) throw std::invalid_argument("moebius: length must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::moebius;
  std::vector<int8_t>& mu = impl->mu;
  mu.assign(static_cast<size_t>(length) + 1, 0);
  std::vector<int64_t> lpf(static_cast<size_t>(length) + 1, 0);
  std::vector<int64_t> primes;
  mu[1] = 1;
  for (int64_t i = 2; i <= length; ++i) {
    if (lpf[i] == 0) {
      lpf[i] = i;
      mu[i] = -1;
      primes.push_back(i);
    }
    for (int64_t p : primes) {
      if (p > lpf[i] || i * p > length) break;
      lpf[i * p] = p;
      mu[i * p] = (p == lpf[i]) ? 0 : -mu[i];
    }
  }
  mu.erase(mu.begin());  // shift so mu[n] = moebius(n+1)
  return SequenceSpec(std::move(impl));
}

int64_t SequenceSpec::length() const {
  switch (impl_->kind) {
    case Kind::polynomial_phase:
      return INT64_MAX;
    case Kind::moebius:
      return static_cast<int64_t>(impl_->mu.size());
    case Kind::explicit_list:
      return static_cast<int64_t>(impl_->values.size());
    case Kind::modulated_product:
      return impl_->base->length();
  }
  return 0;
}

std::complex<double> SequenceSpec::term(int64_t n, mpfr_prec_t prec) const {
  if (n < 0) throw std::invalid_argument("sequence: negative index");
  switch (impl_->kind) {
    case Kind::polynomial_phase:
      return eval_phase(impl_->phase, mpz_class(static_cast<long>(n)), prec).value();
    case Kind::moebius:
      if (n >= static_cast<int64_t>(impl_->mu.size()))
        throw std::out_of_range("sequence: index beyond sieve length");
      return {static_cast<double>(impl_->mu[static_cast<size_t>(n)]), 0.0};
    case Kind::explicit_list:
      if (n >= static_cast<int64_t>(impl_->values.size()))
        throw std::out_of_range("sequence: index beyond list length");
      return impl_->values[static_cast<size_t>(n)];
    case Kind::modulated_product: {
      mpq_class ph = impl_->modulation.eval_mod1(mpz_class(static_cast<long>(n)));
      return impl_->base->term(n, prec) * cis_phase(BigFloat::from_rational(ph, prec));
    }
  }
  return {};
}

bool SequenceSpec::exactly_summable() const {
  switch (impl_->kind) {
    case Kind::polynomial_phase:
      return impl_->phase.is_rational();
    case Kind::moebius:
    case Kind::explicit_list:
      return true;
    case Kind::modulated_product:
      return impl_->base->exactly_summable();
  }
  return false;
}

SequenceSpec arithmetic_subsequence(const SequenceSpec& c, int64_t a, int64_t b) {
  if (a < 1) throw std::invalid_argument("arithmetic_subsequence: a must be >= 1");
  if (b < 0) throw std::invalid_argument("arithmetic_subsequence: b must be >= 0");
  switch (c.kind()) {
    case SequenceSpec::Kind::polynomial_phase:
      return SequenceSpec::polynomial_phase(c.phase_poly().compose_affine(
          mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b))));
    case SequenceSpec::Kind::moebius:
    case SequenceSpec::Kind::explicit_list: {
      int64_t len = c.length();
      std::vector<std::complex<double>> out;
      for (int64_t n = 0; a * n + b < len; ++n) out.push_back(c.term(a * n + b));
      return SequenceSpec::explicit_list(std::move(out));
    }
    case SequenceSpec::Kind::modulated_product: {
      // Q(a t + b) stays rational: compose via the exact RealPoly route.
      RealPoly composed = c.modulation().as_real().compose_affine(
          mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b)));
      std::vector<mpq_class> cc;
      cc.reserve(composed.coeff_count());
      for (const auto& s : composed.coeffs()) cc.push_back(s.as_rational());
      return modulate_rational(arithmetic_subsequence(c.base(), a, b), RatPoly(std::move(cc)));
    }
  }
  throw std::logic_error("arithmetic_subsequence: unknown kind");
}

SequenceSpec modulate_rational(const SequenceSpec& c, const RatPoly& q) {
  auto impl = std::make_shared<SequenceSpec::Impl>();
  impl->kind = SequenceSpec::Kind::modulated_product;
  impl->base = std::make_shared<const SequenceSpec>(c);
  impl->modulation = q;
  impl->period = rational_phase_period(q);
  return SequenceSpec(std::move(impl));
}

SequenceSpec counterexample_weak_not_full(int d, const Scalar& alpha, const Scalar& beta) {
  if (d < 2) throw std::invalid_argument("counterexample: d must be >= 2");
  if (alpha.is_rational())
    throw std::invalid_argument("counterexample: alpha must be irrational");
  if (beta.is_rational()) throw std::invalid_argument("counterexample: beta must be irrational");
  std::vector<Scalar> coeffs(static_cast<size_t>(d) + 1);
  coeffs[static_cast<size_t>(d)] = alpha;
  coeffs[static_cast<size_t>(d) - 1] = beta;
  return SequenceSpec::polynomial_phase(RealPoly(std::move(coeffs)));
}

std::vector<int8_t> moebius_by_divisor_sums(int64_t n) {
  // sum_{d | m} mu(d) = [m = 1]; peel off multiples, smallest divisor first.
  std::vector<int8_t> mu(static_cast<size_t>(n) + 1, 0);
  std::vector<int32_t> acc(static_cast<size_t>(n) + 1, 0);
  for (int64_t m = 1; m <= n; ++m) {
    int32_t val = static_cast<int32_t>(m == 1 ? 1 : 0) - acc[m];
    mu[m] = static_cast<int8_t>(val);
    for (int64_t k = 2 * m; k <= n; k += m) acc[k] += val;
  }
  mu.erase(mu.begin());
  return mu;
}

FlatSequence flatten(const SequenceSpec& c) {
  FlatSequence f;
  const SequenceSpec* cur = &c;
  for (;;) {
    switch (cur->kind()) {
      case SequenceSpec::Kind::modulated_product:
        f.phase += cur->modulation().as_real();
        cur = &cur->base();
        continue;
      case SequenceSpec::Kind::polynomial_phase:
        f.phase += cur->phase_poly();
        return f;
      case SequenceSpec::Kind::moebius:
        f.mu = &cur->mu_values();
        f.length = cur->length();
        return f;
      case SequenceSpec::Kind::explicit_list:
        f.values = &cur->list_values();
        f.length = cur->length();
        return f;
    }
  }
}

}  // namespace torosc
