#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace torosc {

// Square matrix with arbitrary-precision integer entries. All arithmetic
// is exact; no floating point enters this type.
class IntMatrix {
 public:
  explicit IntMatrix(int dim) : dim_(dim), e_(static_cast<size_t>(dim) * dim) {
    if (dim < 1) throw std::invalid_argument("IntMatrix: dim must be >= 1");
  }
  IntMatrix(int dim, std::vector<mpz_class> entries) : dim_(dim), e_(std::move(entries)) {
    if (dim < 1) throw std::invalid_argument("IntMatrix: dim must be >= 1");
    if (e_.size() != static_cast<size_t>(dim) * dim)
      throw std::invalid_argument("IntMatrix: entry count does not match dim*dim");
  }

  static IntMatrix identity(int dim) {
    IntMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
  }
  // Standard superdiagonal nilpotent: ones on (i, i+1).
  static IntMatrix superdiagonal(int dim) {
    IntMatrix m(dim);
    for (int i = 0; i + 1 < dim; ++i) m.at(i, i + 1) = 1;
    return m;
  }

  int dim() const { return dim_; }
  mpz_class& at(int i, int j) { return e_[static_cast<size_t>(i) * dim_ + j]; }
  const mpz_class& at(int i, int j) const { return e_[static_cast<size_t>(i) * dim_ + j]; }

  IntMatrix& operator+=(const IntMatrix& o);
  IntMatrix& operator-=(const IntMatrix& o);
  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  bool operator==(const IntMatrix& o) const { return dim_ == o.dim_ && e_ == o.e_; }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_identity() const;

  // Exact determinant (fraction-free Bareiss elimination).
  mpz_class det() const;

  std::string str() const;

 private:
  int dim_;
  std::vector<mpz_class> e_;
};

// Exact A^n by repeated squaring; A^0 = I.
IntMatrix mat_pow(const IntMatrix& a, unsigned long n);

}  // namespace torosc
