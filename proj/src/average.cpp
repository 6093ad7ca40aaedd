#include "torosc/average.hpp"

#include <map>
#include <thread>

#include "torosc/phase_stream.hpp"

namespace torosc {

namespace {

constexpr unsigned long kMaxExactPeriod = 1u << 20;

struct KahanSum {
  double hi = 0, lo = 0;
  void add(double v) {
    double y = v - lo;
    double t = hi + y;
    lo = (t - hi) - y;
    hi = t;
  }
};

struct ComplexKahan {
  KahanSum re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.hi, im.hi}; }
};

// lcm of coefficient denominators, or 0 when it exceeds the exact-path cap.
unsigned long bounded_denominator_lcm(const RealPoly& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational_part().get_den().get_mpz_t());
    if (l > kMaxExactPeriod) return 0;
  }
  return l.get_ui();
}

RatPoly as_rat_poly(const RealPoly& p) {
  std::vector<mpq_class> c;
  c.reserve(p.coeff_count());
  for (const auto& s : p.coeffs()) c.push_back(s.as_rational());
  return RatPoly(std::move(c));
}

mpq_class exact_double(double v) {
  mpq_class q(v);
  q.canonicalize();
  return q;
}

// Exact bucketed sum: rational phases keyed by reduced value, coefficients
// accumulated as exact rationals. Independent of any index partition.
std::complex<double> exact_bucketed_sum(const FlatSequence& flat, int64_t n, mpfr_prec_t prec) {
  RatPoly q = as_rat_poly(flat.phase);
  unsigned long period = rational_phase_period(q);
  std::vector<mpq_class> phase_of_residue(period);
  for (unsigned long j = 0; j < period; ++j)
    phase_of_residue[j] = q.eval_mod1(mpz_class(static_cast<unsigned long>(j)));

  struct QLess {
    bool operator()(const mpq_class& a, const mpq_class& b) const { return cmp(a, b) < 0; }
  };
  std::map<mpq_class, std::pair<mpq_class, mpq_class>, QLess> buckets;

  if (flat.mu == nullptr && flat.values == nullptr) {
    // pure phase: count residues in closed form
    for (unsigned long j = 0; j < period && static_cast<int64_t>(j) < n; ++j) {
      mpz_class count((n - 1 - static_cast<int64_t>(j)) / static_cast<int64_t>(period) + 1);
      auto& acc = buckets[phase_of_residue[j]];
      acc.first += mpq_class(count);
    }
  } else if (flat.mu != nullptr) {
    const auto& mu = *flat.mu;
    for (int64_t i = 0; i < n; ++i) {
      auto& acc = buckets[phase_of_residue[static_cast<unsigned long>(i % period)]];
      acc.first += static_cast<long>(mu[static_cast<size_t>(i)]);
    }
  } else {
    const auto& vals = *flat.values;
    for (int64_t i = 0; i < n; ++i) {
      auto& acc = buckets[phase_of_residue[static_cast<unsigned long>(i % period)]];
      acc.first += exact_double(vals[static_cast<size_t>(i)].real());
      acc.second += exact_double(vals[static_cast<size_t>(i)].imag());
    }
  }

  ComplexKahan sum;
  for (const auto& [phase, coeff] : buckets) {
    std::complex<double> z = cis_phase(BigFloat::from_rational(phase, prec));
    std::complex<double> w(coeff.first.get_d(), coeff.second.get_d());
    sum.add(w * z);
  }
  return sum.value();
}

std::complex<double> float_chunk_sum(const FlatSequence& flat, int64_t begin, int64_t end,
                                     mpfr_prec_t prec) {
  ComplexKahan sum;
  if (flat.phase.degree() == 0 && flat.phase.coeff(0).is_zero()) {
    for (int64_t i = begin; i < end; ++i) {
      std::complex<double> v(1.0, 0.0);
      if (flat.mu) v = {static_cast<double>((*flat.mu)[static_cast<size_t>(i)]), 0.0};
      if (flat.values) v = (*flat.values)[static_cast<size_t>(i)];
      sum.add(v);
    }
    return sum.value();
  }
  PhaseStream stream(flat.phase, begin, prec);
  for (int64_t i = begin; i < end; ++i) {
    std::complex<double> z = cis_phase(stream.next());
    if (flat.mu) {
      int8_t m = (*flat.mu)[static_cast<size_t>(i)];
      if (m == 0) continue;
      if (m < 0) z = -z;
    } else if (flat.values) {
      z *= (*flat.values)[static_cast<size_t>(i)];
    }
    sum.add(z);
  }
  return sum.value();
}

std::complex<double> float_sum(const FlatSequence& flat, int64_t n, const SumOptions& opts) {
  if (!opts.parallel || opts.chunks <= 1 || n < 4 * opts.chunks)
    return float_chunk_sum(flat, 0, n, opts.prec);
  int chunks = opts.chunks;
  std::vector<std::complex<double>> partial(static_cast<size_t>(chunks));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<size_t>(chunks));
  for (int c = 0; c < chunks; ++c) {
    int64_t begin = n * c / chunks;
    int64_t end = n * (c + 1) / chunks;
    workers.emplace_back([&flat, &partial, &opts, c, begin, end] {
      partial[static_cast<size_t>(c)] = float_chunk_sum(flat, begin, end, opts.prec);
    });
  }
  for (auto& w : workers) w.join();
  ComplexKahan sum;
  for (const auto& z : partial) sum.add(z);
  return sum.value();
}

}  // namespace

bool exactly_summable(const SequenceSpec& c, const RealPoly& p) {
  if (!c.exactly_summable() || !p.is_rational()) return false;
  FlatSequence flat = flatten(c);
  flat.phase += p;
  return bounded_denominator_lcm(flat.phase) != 0;
}

std::complex<double> weighted_sum(const SequenceSpec& c, const RealPoly& p, int64_t n,
                                  const SumOptions& opts) {
  if (n < 1) throw std::invalid_argument("weighted_sum: N must be >= 1");
  FlatSequence flat = flatten(c);
  flat.phase += p;
  if (n > flat.length) throw std::invalid_argument("weighted_sum: sequence shorter than N");
  if (!opts.force_float && flat.phase.is_rational() && bounded_denominator_lcm(flat.phase) != 0)
    return exact_bucketed_sum(flat, n, opts.prec);
  return float_sum(flat, n, opts);
}

std::complex<double> weighted_average(const SequenceSpec& c, const RealPoly& p, int64_t n,
                                      const SumOptions& opts) {
  return weighted_sum(c, p, n, opts) / static_cast<double>(n);
}

std::complex<double> observable_average(const SequenceSpec& c, const AffineSkewMap& t,
                                        const Character& phi, const ProductPoint& p0, int64_t n,
                                        const SumOptions& opts) {
  if (n < 1) throw std::invalid_argument("observable_average: N must be >= 1");
  if (n > c.length()) throw std::invalid_argument("observable_average: sequence shorter than N");
  const auto& f = t.group();

  bool closed_form_ok = t.b_morphism().is_zero();
  if (closed_form_ok) {
    try {
      (void)t.type();
    } catch (const PositiveEntropyError&) {
      closed_form_ok = false;
    }
  }
  bool system_exact = t.mode() == Mode::exact && p0.x.is_rational();

  ComplexKahan sum;
  if (system_exact || !closed_form_ok) {
    // stream the orbit directly; exact Scalar arithmetic throughout
    ProductPoint cur = p0;
    for (int64_t i = 0; i < n; ++i) {
      std::complex<double> z = cis_phase(phi.phase(cur, f).frac(opts.prec));
      sum.add(c.term(i, opts.prec) * z);
      cur = t.iterate(cur, 1);
    }
    return sum.value() / static_cast<double>(n);
  }

  // floating quasi-unipotent path: closed orbit per index, no error growth
  const auto& ty = t.type();
  GroupElement y = p0.y;
  ProductPoint cur = p0;
  for (int64_t i = 0; i < n; ++i) {
    TorusPoint x = (i < ty.l) ? cur.x : t.closed_orbit(p0.x, static_cast<uint64_t>(i));
    std::complex<double> z =
        cis_phase(phi.phase({x, y}, f).frac(opts.prec));
    sum.add(c.term(i, opts.prec) * z);
    if (i + 1 < ty.l) cur = t.iterate(cur, 1);
    y = f.add(t.c_automorphism().apply(y), t.fiber_translation());
  }
  return sum.value() / static_cast<double>(n);
}

}  // namespace torosc
