#include "torosc/torus.hpp"

#include <sstream>

namespace torosc {

namespace {

// x -> x - floor(x) on the rational part only; irrational terms pass through.
Scalar reduce_scalar_mod1(const Scalar& s) {
  mpq_class r = s.rational_part();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  if (fl == 0) return s;
  Scalar out = s;
  out -= Scalar(mpq_class(fl));
  return out;
}

}  // namespace

TorusPoint::TorusPoint(int dim, Mode mode) : c_(static_cast<size_t>(dim)), mode_(mode) {
  if (dim < 1) throw std::invalid_argument("torus point: dim must be >= 1");
}

TorusPoint::TorusPoint(std::vector<Scalar> coords, Mode mode)
    : c_(std::move(coords)), mode_(mode) {
  if (c_.empty()) throw std::invalid_argument("torus point: dim must be >= 1");
  if (mode_ == Mode::exact)
    for (const auto& s : c_)
      if (!s.is_rational())
        throw std::invalid_argument("torus point: exact mode requires rational coordinates");
  reduce();
}

void TorusPoint::reduce() {
  for (auto& s : c_) s = reduce_scalar_mod1(s);
}

bool TorusPoint::is_zero_mod1() const {
  for (const auto& s : c_)
    if (!s.is_integer()) return false;
  return true;
}

bool TorusPoint::is_rational() const {
  for (const auto& s : c_)
    if (!s.is_rational()) return false;
  return true;
}

TorusPoint& TorusPoint::operator+=(const TorusPoint& o) {
  if (dim() != o.dim()) throw std::invalid_argument("torus point: dimension mismatch");
  if (o.mode_ == Mode::floating) mode_ = Mode::floating;
  for (int i = 0; i < dim(); ++i) c_[i] += o.c_[i];
  reduce();
  return *this;
}

TorusPoint TorusPoint::operator-() const {
  TorusPoint r = *this;
  for (auto& s : r.c_) s = -s;
  r.reduce();
  return r;
}

TorusPoint TorusPoint::scaled(const mpz_class& k) const {
  TorusPoint r = *this;
  for (auto& s : r.c_) s.scale(mpq_class(k));
  r.reduce();
  return r;
}

TorusPoint TorusPoint::apply(const IntMatrix& a) const {
  if (a.dim() != dim()) throw std::invalid_argument("torus point: matrix dimension mismatch");
  std::vector<Scalar> out(c_.size());
  for (int i = 0; i < dim(); ++i) {
    Scalar acc;
    for (int j = 0; j < dim(); ++j) {
      Scalar t = c_[j];
      t.scale(mpq_class(a.at(i, j)));
      acc += t;
    }
    out[i] = acc;
  }
  return TorusPoint(std::move(out), mode_);
}

bool TorusPoint::equals_mod1(const TorusPoint& o) const {
  if (dim() != o.dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    Scalar d = c_[i] - o.c_[i];
    if (!d.is_integer()) return false;
  }
  return true;
}

Scalar TorusPoint::pairing(const std::vector<mpz_class>& lambda) const {
  if (lambda.size() != c_.size())
    throw std::invalid_argument("torus point: frequency vector length mismatch");
  Scalar acc;
  for (size_t i = 0; i < c_.size(); ++i) {
    Scalar t = c_[i];
    t.scale(mpq_class(lambda[i]));
    acc += t;
  }
  return acc;
}

std::string TorusPoint::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i].str();
  os << ")";
  return os.str();
}

TorusMorphismFromF::TorusMorphismFromF(FiniteAbelianGroup f, int torus_dim,
                                       std::vector<TorusPoint> gen_images)
    : f_(std::move(f)), d_(torus_dim), imgs_(std::move(gen_images)) {
  if (imgs_.size() != static_cast<size_t>(f_.rank()))
    throw std::invalid_argument("morphism: need one generator image per cyclic factor");
  for (int i = 0; i < f_.rank(); ++i) {
    if (imgs_[i].dim() != d_) throw std::invalid_argument("morphism: image dimension mismatch");
    if (!imgs_[i].is_rational())
      throw std::invalid_argument("morphism: generator images must be rational points");
    if (!imgs_[i].scaled(mpz_class(f_.modulus(i))).is_zero_mod1())
      throw std::invalid_argument(
          "morphism: order violation, " + std::to_string(f_.modulus(i)) + " * B(g_" +
          std::to_string(i) + ") != 0 in the torus");
  }
}

TorusMorphismFromF::TorusMorphismFromF(FiniteAbelianGroup f, int torus_dim,
                                       std::vector<TorusPoint> gen_images, bool)
    : f_(std::move(f)), d_(torus_dim), imgs_(std::move(gen_images)) {}

TorusMorphismFromF TorusMorphismFromF::zero(const FiniteAbelianGroup& f, int torus_dim) {
  std::vector<TorusPoint> imgs(static_cast<size_t>(f.rank()),
                               TorusPoint::zero(torus_dim, Mode::exact));
  return TorusMorphismFromF(f, torus_dim, std::move(imgs), true);
}

bool TorusMorphismFromF::is_zero() const {
  for (const auto& p : imgs_)
    if (!p.is_zero_mod1()) return false;
  return true;
}

TorusPoint TorusMorphismFromF::apply(const GroupElement& y) const {
  TorusPoint acc = TorusPoint::zero(d_, Mode::exact);
  for (int i = 0; i < f_.rank(); ++i) acc += imgs_[i].scaled(mpz_class(y[i]));
  return acc;
}

TorusMorphismFromF TorusMorphismFromF::left_multiplied(const IntMatrix& a) const {
  std::vector<TorusPoint> imgs;
  imgs.reserve(imgs_.size());
  for (const auto& p : imgs_) imgs.push_back(p.apply(a));
  return TorusMorphismFromF(f_, d_, std::move(imgs), true);
}

TorusMorphismFromF TorusMorphismFromF::precomposed(const GroupAutomorphism& c) const {
  std::vector<TorusPoint> imgs;
  imgs.reserve(imgs_.size());
  for (int i = 0; i < f_.rank(); ++i) {
    GroupElement gi = f_.zero();
    gi[i] = 1 % f_.modulus(i);
    imgs.push_back(apply(c.apply(gi)));
  }
  return TorusMorphismFromF(f_, d_, std::move(imgs), true);
}

TorusMorphismFromF& TorusMorphismFromF::operator+=(const TorusMorphismFromF& o) {
  for (size_t i = 0; i < imgs_.size(); ++i) imgs_[i] += o.imgs_[i];
  return *this;
}

}  // namespace torosc
