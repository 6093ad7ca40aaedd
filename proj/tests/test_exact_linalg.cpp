#include <doctest.h>

#include "test_support.hpp"
#include "torosc/exact_linalg.hpp"

using namespace torosc;

namespace {

IntMatrix m2(long a, long b, long c, long d) {
  return IntMatrix(2, {mpz_class(a), mpz_class(b), mpz_class(c), mpz_class(d)});
}

// Brute-force classifier oracle: scan every m = 1..L directly.
std::optional<std::pair<unsigned long, int>> classify_oracle(const IntMatrix& a) {
  unsigned long bound = entropy_search_bound(a.dim());
  IntMatrix id = IntMatrix::identity(a.dim());
  for (unsigned long m = 1; m <= bound; ++m) {
    if (auto l = nilpotency_index(mat_pow(a, m) - id)) return std::make_pair(m, *l);
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("binom basics") {
  CHECK(binom(3, 2) == 3);
  CHECK(binom(0, 0) == 1);
  CHECK(binom(5, 2) == 10);
  CHECK(binom(4, 7) == 0);
  CHECK(binom(60, 30) == mpz_class("118264581564861424"));
}

TEST_CASE("binom table matches the free function and Pascal's identity") {
  BinomTable table;
  for (unsigned long n = 0; n <= 40; ++n)
    for (unsigned long k = 0; k <= n + 2; ++k) CHECK(table.get(n, k) == binom(n, k));
  for (unsigned long n = 1; n <= 40; ++n)
    for (unsigned long k = 1; k <= n; ++k)
      CHECK(table.get(n, k) == table.get(n - 1, k - 1) + table.get(n - 1, k));
}

TEST_CASE("hockey-stick identity used by the closed forms") {
  for (unsigned long n = 0; n <= 60; ++n)
    for (unsigned long k = 0; k <= n; ++k) {
      mpz_class lhs = 0;
      for (unsigned long j = k; j <= n; ++j) lhs += binom(j, k);
      CHECK(lhs == binom(n + 1, k + 1));
    }
}

TEST_CASE("mat_pow") {
  CHECK(mat_pow(m2(1, 1, 0, 1), 3) == m2(1, 3, 0, 1));
  IntMatrix a = m2(2, 1, 1, 1);
  CHECK(mat_pow(a, 0) == IntMatrix::identity(2));

  // rotation: A^4 = I, checked against direct 4-fold multiplication
  IntMatrix r = m2(0, -1, 1, 0);
  IntMatrix direct = r * r * r * r;
  CHECK(mat_pow(r, 4) == direct);
  CHECK(direct == IntMatrix::identity(2));
}

TEST_CASE("nilpotency_index") {
  CHECK(nilpotency_index(IntMatrix(3)) == 1);
  CHECK(nilpotency_index(m2(0, 1, 0, 0)) == 2);
  CHECK(nilpotency_index(IntMatrix::identity(2)) == std::nullopt);
  CHECK(nilpotency_index(IntMatrix::superdiagonal(4)) == 4);
}

TEST_CASE("determinant") {
  CHECK(m2(2, 1, 1, 1).det() == 1);
  CHECK(m2(0, -1, 1, 0).det() == 1);
  CHECK(m2(1, 2, 3, 4).det() == -2);
  IntMatrix a(3, {mpz_class(2), mpz_class(0), mpz_class(1), mpz_class(0), mpz_class(1),
                  mpz_class(0), mpz_class(1), mpz_class(0), mpz_class(1)});
  CHECK(a.det() == 1);
  IntMatrix sing(3);
  CHECK(sing.det() == 0);
}

TEST_CASE("entropy search bound") {
  // dim 2: orders k with phi(k) <= 2 are {1,2,3,4,6}
  CHECK(entropy_search_bound(2) == 12);
  CHECK(entropy_search_bound(1) == 2);
}

TEST_CASE("classify_zero_entropy fixed cases") {
  auto t1 = classify_zero_entropy(m2(1, 1, 0, 1));
  REQUIRE(t1.has_value());
  CHECK(t1->m == 1);
  CHECK(t1->l == 2);

  auto t2 = classify_zero_entropy(m2(0, -1, 1, 0));
  REQUIRE(t2.has_value());
  CHECK(t2->m == 4);
  CHECK(t2->l == 1);
  // the m < 4 candidates are genuinely non-nilpotent
  IntMatrix r = m2(0, -1, 1, 0);
  CHECK((r - IntMatrix::identity(2)).det() != 0);
  CHECK((mat_pow(r, 2) - IntMatrix::identity(2)).det() != 0);

  auto t3 = classify_zero_entropy(m2(2, 1, 1, 1));
  CHECK(!t3.has_value());
  // positive entropy certificate: (A^12 - I)^2 != 0
  IntMatrix n12 = mat_pow(m2(2, 1, 1, 1), 12) - IntMatrix::identity(2);
  CHECK(!(n12 * n12).is_zero());

  auto t4 = classify_zero_entropy(IntMatrix::identity(3));
  REQUIRE(t4.has_value());
  CHECK(t4->m == 1);
  CHECK(t4->l == 1);

  auto t5 = classify_zero_entropy(IntMatrix(1, {mpz_class(-1)}));
  REQUIRE(t5.has_value());
  CHECK(t5->m == 2);
  CHECK(t5->l == 1);
}

TEST_CASE("classify rejects non-automorphisms") {
  CHECK_THROWS_AS(classify_zero_entropy(m2(1, 2, 3, 4)), NotAutomorphismError);
  CHECK_THROWS_AS(classify_zero_entropy(m2(2, 0, 0, 2)), NotAutomorphismError);
}

TEST_CASE("classify certificate on random quasi-unipotent matrices") {
  testing::Rng rng{20240811};
  for (int trial = 0; trial < 40; ++trial) {
    int dim = static_cast<int>(rng.in(1, 4));
    auto gen = testing::random_quasi_unipotent(rng, dim);
    auto t = classify_zero_entropy(gen.a);
    REQUIRE(t.has_value());
    CHECK(t->m == gen.m);
    CHECK(t->l == gen.l);
    // certificate: (A^m - I)^l = 0, (A^m - I)^{l-1} != 0 (or l = 1)
    IntMatrix n = mat_pow(gen.a, t->m) - IntMatrix::identity(dim);
    CHECK(n == t->nilpotent_part);
    IntMatrix p = IntMatrix::identity(dim);
    for (int k = 0; k < t->l - 1; ++k) p = p * n;
    if (t->l > 1) CHECK(!p.is_zero());
    CHECK((p * n).is_zero());
    // minimality over every smaller exponent
    for (unsigned long mm = 1; mm < t->m; ++mm)
      CHECK(!nilpotency_index(mat_pow(gen.a, mm) - IntMatrix::identity(dim)));
  }
}

TEST_CASE("classifier agrees with the brute-force oracle on a 2x2 sample") {
  // the acceptance suite runs the full [-2,2] box; sample here for speed
  testing::Rng rng{7};
  int checked = 0;
  while (checked < 60) {
    IntMatrix a = m2(rng.in(-2, 2), rng.in(-2, 2), rng.in(-2, 2), rng.in(-2, 2));
    mpz_class d = a.det();
    if (d != 1 && d != -1) continue;
    ++checked;
    auto got = classify_zero_entropy(a);
    auto want = classify_oracle(a);
    CHECK(got.has_value() == want.has_value());
    if (got && want) {
      CHECK(got->m == want->first);
      CHECK(got->l == want->second);
    }
  }
}

TEST_CASE("unipotent closed forms: fixed values") {
  IntMatrix p33 = unipotent_power_closed(3, 3);
  CHECK(p33 == IntMatrix(3, {mpz_class(1), mpz_class(3), mpz_class(3), mpz_class(0), mpz_class(1),
                             mpz_class(3), mpz_class(0), mpz_class(0), mpz_class(1)}));
  CHECK(unipotent_power_closed(0, 4) == IntMatrix::identity(4));
  CHECK(unipotent_power_closed(5, 2) == m2(1, 5, 0, 1));

  // formula (5) at n=3, d=2: I + (I+N) + (I+N)^2 = 3I + 3N
  CHECK(unipotent_geom_sum_closed(3, 2) == m2(3, 3, 0, 3));
  CHECK(unipotent_geom_sum_closed(1, 3) == IntMatrix::identity(3));
  CHECK(unipotent_geom_sum_closed(0, 3).is_zero());
}

TEST_CASE("unipotent closed forms match the power oracles") {
  for (int d = 1; d <= 6; ++d) {
    IntMatrix u = IntMatrix::identity(d) + IntMatrix::superdiagonal(d);
    IntMatrix pow = IntMatrix::identity(d);
    IntMatrix geo(d);
    for (unsigned long n = 0; n <= 100; ++n) {
      CHECK(unipotent_power_closed(n, d) == pow);
      CHECK(unipotent_geom_sum_closed(n, d) == geo);
      geo += pow;
      pow = pow * u;
    }
  }
}

TEST_CASE("classify handles larger dimensions and mixed spectra") {
  // block diag of the order-4 rotation and a 3x3 unipotent: m = 4, l = 3
  IntMatrix a(5);
  a.at(0, 1) = -1;
  a.at(1, 0) = 1;
  for (int i = 2; i < 5; ++i) a.at(i, i) = 1;
  a.at(2, 3) = 1;
  a.at(3, 4) = 1;
  auto t = classify_zero_entropy(a);
  REQUIRE(t.has_value());
  CHECK(t->m == 4);
  CHECK(t->l == 3);

  // companion of x^4 - x^3 - x^2 - x + 1: unimodular with an eigenvalue off
  // the unit circle (and two on it); positive entropy either way
  IntMatrix s(4);
  s.at(0, 3) = -1;
  s.at(1, 0) = 1;
  s.at(1, 3) = 1;
  s.at(2, 1) = 1;
  s.at(2, 3) = 1;
  s.at(3, 2) = 1;
  s.at(3, 3) = 1;
  mpz_class det = s.det();
  REQUIRE((det == 1 || det == -1));
  CHECK(!classify_zero_entropy(s).has_value());
  // brute confirmation at the dim-4 bound
  unsigned long bound = entropy_search_bound(4);
  CHECK(bound == 120);
  CHECK(!nilpotency_index(mat_pow(s, bound) - IntMatrix::identity(4)).has_value());
}
