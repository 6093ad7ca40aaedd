#include "torosc/poly.hpp"

#include <sstream>

namespace torosc {

RealPoly RealPoly::monomial(const Scalar& c, int degree) {
  std::vector<Scalar> v(degree + 1);
  v[degree] = c;
  return RealPoly(std::move(v));
}

int RealPoly::degree() const {
  for (size_t i = c_.size(); i-- > 0;)
    if (!c_[i].is_zero()) return static_cast<int>(i);
  return 0;
}

bool RealPoly::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool RealPoly::is_rational() const {
  for (const auto& c : c_)
    if (!c.is_rational()) return false;
  return true;
}

RealPoly& RealPoly::operator+=(const RealPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

RealPoly& RealPoly::operator-=(const RealPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

RealPoly RealPoly::operator*(const RealPoly& o) const {
  std::vector<Scalar> out(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  return RealPoly(std::move(out));
}

RealPoly& RealPoly::scale(const mpq_class& q) {
  for (auto& c : c_) c.scale(q);
  return *this;
}

bool RealPoly::operator==(const RealPoly& o) const {
  size_t n = std::max(c_.size(), o.c_.size());
  for (size_t i = 0; i < n; ++i) {
    const Scalar a = i < c_.size() ? c_[i] : Scalar();
    const Scalar b = i < o.c_.size() ? o.c_[i] : Scalar();
    if (!(a == b)) return false;
  }
  return true;
}

Scalar RealPoly::eval_at_integer(const mpz_class& n) const {
  Scalar acc;
  for (size_t i = c_.size(); i-- > 0;) {
    acc *= Scalar(mpq_class(n));
    acc += c_[i];
  }
  return acc;
}

RealPoly RealPoly::compose_affine(const mpz_class& a, const mpz_class& b) const {
  RealPoly lin(std::vector<Scalar>{Scalar(mpq_class(b)), Scalar(mpq_class(a))});
  RealPoly acc;
  for (size_t i = c_.size(); i-- > 0;) {
    acc = acc * lin;
    acc += RealPoly(std::vector<Scalar>{c_[i]});
  }
  return acc;
}

RealPoly RealPoly::shift_up() const {
  std::vector<Scalar> out(c_.size() + 1);
  for (size_t i = 0; i < c_.size(); ++i) out[i + 1] = c_[i];
  return RealPoly(std::move(out));
}

std::string RealPoly::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i].str();
  os << "]";
  return os.str();
}

int RatPoly::degree() const {
  for (size_t i = c_.size(); i-- > 0;)
    if (c_[i] != 0) return static_cast<int>(i);
  return 0;
}

bool RatPoly::is_integer() const {
  for (const auto& q : c_)
    if (q.get_den() != 1) return false;
  return true;
}

RealPoly RatPoly::as_real() const {
  std::vector<Scalar> v;
  v.reserve(c_.size());
  for (const auto& q : c_) v.emplace_back(q);
  return RealPoly(std::move(v));
}

mpq_class RatPoly::eval_mod1(const mpz_class& n) const {
  mpq_class acc = 0;
  for (size_t i = c_.size(); i-- > 0;) {
    acc *= n;
    acc += c_[i];
  }
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), acc.get_num().get_mpz_t(), acc.get_den().get_mpz_t());
  acc -= fl;
  return acc;
}

BinomialPoly to_binomial(const RealPoly& p) {
  int d = static_cast<int>(p.coeff_count()) - 1;
  std::vector<Scalar> row(d + 1);
  for (int i = 0; i <= d; ++i) row[i] = p.eval_at_integer(i);
  std::vector<Scalar> coords(d + 1);
  coords[0] = row[0];
  for (int k = 1; k <= d; ++k) {
    for (int i = 0; i + k <= d; ++i) row[i] = row[i + 1] - row[i];
    coords[k] = row[0];
  }
  return BinomialPoly(std::move(coords));
}

RealPoly from_binomial(const BinomialPoly& b) {
  RealPoly result;
  RealPoly basis(std::vector<Scalar>{Scalar(mpq_class(1))});  // C_t^0
  for (size_t k = 0; k < b.size(); ++k) {
    if (k > 0) {
      // C_t^k = C_t^{k-1} * (t - (k-1)) / k
      RealPoly lin(std::vector<Scalar>{Scalar(mpq_class(-(static_cast<long>(k) - 1))),
                                       Scalar(mpq_class(1))});
      basis = basis * lin;
      basis.scale(mpq_class(1, static_cast<unsigned long>(k)));
    }
    RealPoly term = basis;
    RealPoly scaled;
    {
      std::vector<Scalar> cs(term.coeffs());
      for (auto& c : cs) c = c * b.coord(k);
      scaled = RealPoly(std::move(cs));
    }
    result += scaled;
  }
  return result;
}

std::pair<Scalar, RealPoly> strip_constant(const RealPoly& p) {
  Scalar c0 = p.coeff(0);
  std::vector<Scalar> q;
  for (size_t i = 1; i < p.coeff_count(); ++i) q.push_back(p.coeff(i));
  if (q.empty()) q.emplace_back();
  return {c0, RealPoly(std::move(q))};
}

BigFloat eval_phase_frac(const RealPoly& p, const mpz_class& n, mpfr_prec_t prec) {
  return p.eval_at_integer(n).frac(prec);
}

UnitComplex eval_phase(const RealPoly& p, const mpz_class& n, mpfr_prec_t prec) {
  auto z = cis_phase(eval_phase_frac(p, n, prec));
  return {z.real(), z.imag()};
}

unsigned long rational_phase_period(const RatPoly& q) {
  mpz_class l0 = 1;
  for (const auto& c : q.coeffs()) mpz_lcm(l0.get_mpz_t(), l0.get_mpz_t(), c.get_den().get_mpz_t());
  if (!l0.fits_ulong_p()) throw std::domain_error("rational_phase_period: period bound too large");
  unsigned long bound = l0.get_ui();

  std::vector<mpq_class> vals(bound);
  for (unsigned long n = 0; n < bound; ++n) vals[n] = q.eval_mod1(n);

  std::vector<unsigned long> divs;
  for (unsigned long d = 1; d * d <= bound; ++d) {
    if (bound % d) continue;
    divs.push_back(d);
    if (d != bound / d) divs.push_back(bound / d);
  }
  std::sort(divs.begin(), divs.end());
  for (unsigned long ell : divs) {
    bool ok = true;
    for (unsigned long n = 0; n < bound && ok; ++n)
      if (vals[n] != vals[(n + ell) % bound]) ok = false;
    if (ok) return ell;
  }
  return bound;
}

}  // namespace torosc
