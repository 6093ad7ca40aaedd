#include "torosc/phase_stream.hpp"

namespace torosc {

namespace {

inline void frac_inplace(mpfr_t x) {
  // table entries stay within (-1, 2), so conditional shifts suffice
  while (mpfr_sgn(x) < 0) mpfr_add_ui(x, x, 1, MPFR_RNDN);
  while (mpfr_cmp_ui(x, 1) >= 0) mpfr_sub_ui(x, x, 1, MPFR_RNDN);
}

}  // namespace

PhaseStream::PhaseStream(const RealPoly& p, int64_t n0, mpfr_prec_t prec)
    : deg_(p.degree()), prec_(prec), diffs_(static_cast<size_t>(deg_) + 1) {
  for (auto& d : diffs_) mpfr_init2(d, prec_);
  // exact seed values P(n0), ..., P(n0+deg), reduced mod 1
  std::vector<BigFloat> seed;
  seed.reserve(deg_ + 1);
  for (int i = 0; i <= deg_; ++i)
    seed.push_back(p.eval_at_integer(mpz_class(static_cast<long>(n0) + i)).frac(prec_));
  // successive forward-difference rows mod 1; row k's head is diffs_[k]
  for (int k = 0; k <= deg_; ++k) {
    mpfr_set(diffs_[k], seed[0].ptr(), MPFR_RNDN);
    for (int i = 0; i < deg_ - k; ++i) {
      mpfr_sub(seed[i].ptr(), seed[i + 1].ptr(), seed[i].ptr(), MPFR_RNDN);
      frac_inplace(seed[i].ptr());
    }
  }
}

PhaseStream::PhaseStream(PhaseStream&& o) noexcept
    : deg_(o.deg_), prec_(o.prec_), diffs_(std::move(o.diffs_)) {
  o.diffs_.clear();
}

PhaseStream::~PhaseStream() {
  for (auto& d : diffs_) mpfr_clear(d);
}

void PhaseStream::advance() {
  for (int k = 0; k < deg_; ++k) {
    mpfr_add(diffs_[k], diffs_[k], diffs_[k + 1], MPFR_RNDN);
    frac_inplace(diffs_[k]);
  }
}

double PhaseStream::next() {
  double v = mpfr_get_d(diffs_[0], MPFR_RNDN);
  advance();
  if (v >= 1.0) v -= 1.0;  // rounding to double may bump a value just below 1
  return v;
}

BigFloat PhaseStream::current(mpfr_prec_t out_prec) const {
  BigFloat r(out_prec);
  mpfr_set(r.ptr(), diffs_[0], MPFR_RNDN);
  return r;
}

}  // namespace torosc
