#include "torosc/scalar.hpp"

#include <cctype>
#include <utility>

namespace torosc {

namespace {

// k = s*s*f with f squarefree; returns (s, f).
std::pair<mpz_class, unsigned long> squarefree_split(const mpz_class& k) {
  if (k == 0) return {0, 0};
  mpz_class s = 1, f = 1, rest = k;
  for (mpz_class p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) f *= p;
  }
  f *= rest;
  if (!f.fits_ulong_p())
    throw std::domain_error("scalar: squarefree radicand too large: " + f.get_str());
  return {s, f.get_ui()};
}

struct Lexer {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("scalar: " + what + " at position " +
                                std::to_string(pos) + " in \"" + s + "\"");
  }
};

Scalar parse_expr(Lexer& lx);

mpq_class parse_number(Lexer& lx) {
  lx.skip_ws();
  size_t start = lx.pos;
  while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos]))) ++lx.pos;
  if (lx.pos == start) lx.fail("expected digits");
  std::string intpart = lx.s.substr(start, lx.pos - start);
  if (lx.pos < lx.s.size() && lx.s[lx.pos] == '.') {
    ++lx.pos;
    size_t fs = lx.pos;
    while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos]))) ++lx.pos;
    if (lx.pos == fs) lx.fail("expected digits after decimal point");
    std::string fracpart = lx.s.substr(fs, lx.pos - fs);
    mpz_class num(intpart + fracpart, 10);
    mpz_class den = 1;
    for (size_t i = 0; i < fracpart.size(); ++i) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  return mpq_class(mpz_class(intpart, 10));
}

Scalar parse_atom(Lexer& lx) {
  lx.skip_ws();
  if (lx.eat('(')) {
    Scalar v = parse_expr(lx);
    if (!lx.eat(')')) lx.fail("expected ')'");
    return v;
  }
  if (lx.s.compare(lx.pos, 4, "sqrt") == 0) {
    lx.pos += 4;
    if (!lx.eat('(')) lx.fail("expected '(' after sqrt");
    mpq_class k = parse_number(lx);
    if (!lx.eat(')')) lx.fail("expected ')' after sqrt argument");
    if (k.get_den() != 1) lx.fail("sqrt argument must be an integer");
    if (!k.get_num().fits_ulong_p()) lx.fail("sqrt argument too large");
    return Scalar::sqrt_of(k.get_num().get_ui());
  }
  if (std::isdigit(static_cast<unsigned char>(lx.peek()))) return Scalar(parse_number(lx));
  lx.fail("expected number, sqrt(...), or '('");
}

Scalar parse_factor(Lexer& lx) {
  if (lx.eat('-')) {
    Scalar v = parse_factor(lx);
    return -v;
  }
  return parse_atom(lx);
}

Scalar parse_term(Lexer& lx) {
  Scalar v = parse_factor(lx);
  for (;;) {
    if (lx.eat('*')) {
      v *= parse_factor(lx);
    } else if (lx.eat('/')) {
      v = v.divided_by(parse_factor(lx));
    } else {
      return v;
    }
  }
}

Scalar parse_expr(Lexer& lx) {
  Scalar v = parse_term(lx);
  for (;;) {
    if (lx.eat('+')) {
      v += parse_term(lx);
    } else if (lx.eat('-')) {
      v -= parse_term(lx);
    } else {
      return v;
    }
  }
}

}  // namespace

Scalar::Scalar(const mpq_class& v) {
  mpq_class q = v;
  q.canonicalize();
  set_term(1, q);
}

void Scalar::set_term(unsigned long radicand, const mpq_class& c) {
  if (c == 0) {
    terms_.erase(radicand);
  } else {
    terms_[radicand] = c;
  }
}

Scalar Scalar::sqrt_of(unsigned long k) {
  Scalar r;
  if (k == 0) return r;
  auto [s, f] = squarefree_split(mpz_class(k));
  r.set_term(f, mpq_class(s));
  return r;
}

Scalar Scalar::parse(const std::string& expr) {
  Lexer lx{expr};
  Scalar v = parse_expr(lx);
  lx.skip_ws();
  if (lx.pos != expr.size()) lx.fail("trailing input");
  return v;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [k, c] : o.terms_) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& [k, c] : o.terms_) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, -c);
    } else {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  std::map<unsigned long, mpq_class> out;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : o.terms_) {
      mpz_class prod = mpz_class(ka) * mpz_class(kb);
      auto [s, f] = squarefree_split(prod);
      mpq_class c = ca * cb * mpq_class(s);
      auto it = out.find(f);
      if (it == out.end()) {
        if (c != 0) out.emplace(f, c);
      } else {
        it->second += c;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  terms_ = std::move(out);
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

Scalar& Scalar::scale(const mpq_class& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= q;
  return *this;
}

Scalar Scalar::divided_by(const Scalar& o) const {
  if (!o.is_rational()) throw std::domain_error("scalar: division by irrational value");
  mpq_class d = o.rational_part();
  if (d == 0) throw std::domain_error("scalar: division by zero");
  Scalar r = *this;
  r.scale(mpq_class(1) / d);
  return r;
}

bool Scalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

bool Scalar::is_integer() const {
  if (terms_.empty()) return true;
  return is_rational() && terms_.begin()->second.get_den() == 1;
}

mpq_class Scalar::rational_part() const {
  auto it = terms_.find(1);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

mpq_class Scalar::as_rational() const {
  if (!is_rational()) throw std::domain_error("scalar: value is irrational: " + str());
  return rational_part();
}

BigFloat Scalar::eval(mpfr_prec_t prec) const {
  mpfr_prec_t work = prec + 32;
  BigFloat acc(work);
  mpfr_t term, root;
  mpfr_inits2(work, term, root, (mpfr_ptr) nullptr);
  for (const auto& [k, c] : terms_) {
    mpfr_set_q(term, c.get_mpq_t(), MPFR_RNDN);
    if (k != 1) {
      mpfr_sqrt_ui(root, k, MPFR_RNDN);
      mpfr_mul(term, term, root, MPFR_RNDN);
    }
    mpfr_add(acc.ptr(), acc.ptr(), term, MPFR_RNDN);
  }
  mpfr_clears(term, root, (mpfr_ptr) nullptr);
  BigFloat out(prec);
  mpfr_set(out.ptr(), acc.ptr(), MPFR_RNDN);
  return out;
}

long Scalar::magnitude_bits() const {
  long best = 1;
  for (const auto& [k, c] : terms_) {
    long num = static_cast<long>(mpz_sizeinbase(c.get_num().get_mpz_t(), 2));
    long den = static_cast<long>(mpz_sizeinbase(c.get_den().get_mpz_t(), 2));
    long root = k > 1 ? static_cast<long>(mpz_sizeinbase(mpz_class(k).get_mpz_t(), 2)) / 2 + 1 : 0;
    best = std::max(best, num - den + 1 + root);
  }
  long count = 0;
  unsigned long n = terms_.size() + 1;
  while (n > 1) {
    n >>= 1;
    ++count;
  }
  return best + count + 2;
}

BigFloat Scalar::frac(mpfr_prec_t prec) const {
  if (is_rational()) {
    mpq_class q = rational_part();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    q -= fl;
    return BigFloat::from_rational(q, prec);
  }
  mpfr_prec_t work = magnitude_bits() + prec + 32;
  BigFloat v = eval(work);
  v.reduce_mod1();
  BigFloat out(prec);
  mpfr_set(out.ptr(), v.ptr(), MPFR_RNDN);
  return out;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    mpq_class a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? "-" : "+";
    }
    first = false;
    if (k == 1) {
      out += a.get_str();
    } else if (a == 1) {
      out += "sqrt(" + std::to_string(k) + ")";
    } else {
      out += a.get_str() + "*sqrt(" + std::to_string(k) + ")";
    }
  }
  return out;
}

}  // namespace torosc
