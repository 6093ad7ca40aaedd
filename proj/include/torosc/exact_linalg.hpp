#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "torosc/int_matrix.hpp"

namespace torosc {

// Raised when a matrix offered as a torus automorphism has |det| != 1.
struct NotAutomorphismError : std::domain_error {
  using std::domain_error::domain_error;
};

// C_n^k as an exact integer; 0 when k > n.
mpz_class binom(unsigned long n, unsigned long k);

// Cached Pascal triangle rows, grown on demand.
class BinomTable {
 public:
  const mpz_class& get(unsigned long n, unsigned long k);

 private:
  void grow(unsigned long n);
  std::vector<std::vector<mpz_class>> rows_;
  mpz_class zero_;
};

// Minimal l >= 1 with N^l = 0; nullopt when N^dim != 0 (not nilpotent).
// The zero matrix has index 1.
std::optional<int> nilpotency_index(const IntMatrix& n);

struct QuasiUnipotentType {
  unsigned long m = 1;                       // minimal order with A^m - I nilpotent
  int l = 1;                                 // nilpotency index of A^m - I
  IntMatrix nilpotent_part = IntMatrix(1);   // A^m - I
};

// lcm{ k >= 1 : phi(k) <= dim } — every root of unity that can occur as an
// eigenvalue of a dim x dim integer matrix has order in that set.
unsigned long entropy_search_bound(int dim);

// Zero-entropy test for a torus automorphism. Requires |det A| = 1
// (throws NotAutomorphismError otherwise). Returns nullopt when A has an
// eigenvalue off the unit circle; otherwise the minimal (m, l) certificate.
std::optional<QuasiUnipotentType> classify_zero_entropy(const IntMatrix& a);

// (I+N)^n for the standard d-dimensional superdiagonal N: entry (i,j) is
// C_n^{j-i}. Valid for all n >= 0 under the convention C_n^k = 0 for k > n.
IntMatrix unipotent_power_closed(unsigned long n, int d);

// sum_{k=0}^{n-1} (I+N)^k: entry (i,j) is C_n^{j-i+1}.
IntMatrix unipotent_geom_sum_closed(unsigned long n, int d);

}  // namespace torosc
