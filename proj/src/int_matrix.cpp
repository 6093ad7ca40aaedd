#include "torosc/int_matrix.hpp"

#include <sstream>

namespace torosc {

IntMatrix& IntMatrix::operator+=(const IntMatrix& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("IntMatrix: dimension mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

IntMatrix& IntMatrix::operator-=(const IntMatrix& o) {
  if (dim_ != o.dim_) throw std::invalid_argument("IntMatrix: dimension mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("IntMatrix: dimension mismatch");
  int d = a.dim_;
  IntMatrix r(d);
  mpz_class acc;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      acc = 0;
      for (int k = 0; k < d; ++k) acc += a.at(i, k) * b.at(k, j);
      r.at(i, j) = acc;
    }
  }
  return r;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : e_)
    if (v != 0) return false;
  return true;
}

bool IntMatrix::is_identity() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

mpz_class IntMatrix::det() const {
  int d = dim_;
  std::vector<mpz_class> m(e_);
  auto at_ = [&](int i, int j) -> mpz_class& { return m[static_cast<size_t>(i) * d + j]; };
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < d - 1; ++k) {
    if (at_(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < d; ++i)
        if (at_(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < d; ++j) std::swap(at_(k, j), at_(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < d; ++i) {
      for (int j = k + 1; j < d; ++j) {
        mpz_class num = at_(i, j) * at_(k, k) - at_(i, k) * at_(k, j);
        mpz_divexact(at_(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      at_(i, k) = 0;
    }
    prev = at_(k, k);
  }
  return sign > 0 ? at_(d - 1, d - 1) : mpz_class(-at_(d - 1, d - 1));
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < dim_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < dim_; ++j) os << (j ? "," : "") << at(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix mat_pow(const IntMatrix& a, unsigned long n) {
  IntMatrix result = IntMatrix::identity(a.dim());
  IntMatrix base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

}  // namespace torosc
