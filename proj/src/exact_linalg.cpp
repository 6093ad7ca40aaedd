#include "torosc/exact_linalg.hpp"

#include <algorithm>
#include <numeric>

namespace torosc {

mpz_class binom(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

const mpz_class& BinomTable::get(unsigned long n, unsigned long k) {
  if (k > n) return zero_;
  if (n >= rows_.size()) grow(n);
  return rows_[n][k];
}

void BinomTable::grow(unsigned long n) {
  size_t old = rows_.size();
  rows_.resize(n + 1);
  for (size_t i = old; i <= n; ++i) {
    rows_[i].resize(i + 1);
    rows_[i][0] = 1;
    rows_[i][i] = 1;
    for (size_t j = 1; j < i; ++j) rows_[i][j] = rows_[i - 1][j - 1] + rows_[i - 1][j];
  }
}

std::optional<int> nilpotency_index(const IntMatrix& n) {
  if (n.is_zero()) return 1;
  IntMatrix p = n;
  for (int l = 2; l <= n.dim(); ++l) {
    p = p * n;
    if (p.is_zero()) return l;
  }
  return std::nullopt;
}

namespace {

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<unsigned long> sorted_divisors(unsigned long n) {
  std::vector<unsigned long> divs;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    divs.push_back(d);
    if (d != n / d) divs.push_back(n / d);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

unsigned long entropy_search_bound(int dim) {
  // phi(k) >= sqrt(k/2), so phi(k) > dim once k > 2 (dim+1)^2.
  unsigned long kmax = 2ul * (dim + 1) * (dim + 1) + 1;
  mpz_class l = 1;
  for (unsigned long k = 1; k <= kmax; ++k) {
    if (euler_phi(k) <= static_cast<unsigned long>(dim)) {
      mpz_class kk(k);
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), kk.get_mpz_t());
    }
  }
  if (!l.fits_ulong_p())
    throw std::domain_error("classify: search bound overflows for dim " + std::to_string(dim));
  return l.get_ui();
}

std::optional<QuasiUnipotentType> classify_zero_entropy(const IntMatrix& a) {
  mpz_class d = a.det();
  if (d != 1 && d != -1)
    throw NotAutomorphismError("classify: |det| = " + mpz_class(abs(d)).get_str() +
                               ", matrix is not a torus automorphism");
  unsigned long bound = entropy_search_bound(a.dim());
  IntMatrix id = IntMatrix::identity(a.dim());
  {
    IntMatrix nl = mat_pow(a, bound) - id;
    if (!nilpotency_index(nl)) return std::nullopt;  // eigenvalue off the unit circle
  }
  for (unsigned long m : sorted_divisors(bound)) {
    IntMatrix nm = mat_pow(a, m) - id;
    if (auto l = nilpotency_index(nm)) {
      QuasiUnipotentType t{m, *l, std::move(nm)};
      return t;
    }
  }
  // unreachable: bound itself passed the nilpotency test
  return std::nullopt;
}

IntMatrix unipotent_power_closed(unsigned long n, int d) {
  IntMatrix r(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) r.at(i, j) = binom(n, static_cast<unsigned long>(j - i));
  return r;
}

IntMatrix unipotent_geom_sum_closed(unsigned long n, int d) {
  IntMatrix r(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) r.at(i, j) = binom(n, static_cast<unsigned long>(j - i) + 1);
  return r;
}

}  // namespace torosc
