#pragma once

#include "torosc/poly.hpp"
#include "torosc/skew.hpp"

namespace torosc {

// Character of T^d x F: integer frequency vector against the torus
// coordinates plus residue frequencies against the cyclic factors.
struct Character {
  std::vector<mpz_class> torus_freq;
  std::vector<int64_t> fiber_freq;

  static Character torus_only(std::vector<mpz_class> lambda) {
    return {std::move(lambda), {}};
  }

  bool fiber_trivial(const FiniteAbelianGroup& f) const;
  // <lambda, x> + sum_i w_i y_i / m_i, exact.
  Scalar phase(const ProductPoint& p, const FiniteAbelianGroup& f) const;
  Scalar phase(const TorusPoint& x) const { return x.pairing(torus_freq); }
  UnitComplex eval(const ProductPoint& p, const FiniteAbelianGroup& f,
                   mpfr_prec_t prec = 96) const;
};

// phi(T^n x) = e^{2 pi i P(q)} for n = qm + p with fixed p in [1, m]:
// P = P1 + P2 with deg P1 <= l-1 and deg P2 <= l; P2 is rational whenever
// the translation has finite order.
struct CharOrbitPoly {
  RealPoly p1;
  RealPoly p2;
  bool rational_flag = false;
  std::vector<Scalar> beta;   // <lambda, N^k A^p x>
  std::vector<Scalar> alpha;  // <lambda, N^k b*>
  std::vector<Scalar> theta;  // <lambda, N^k b_p>
  uint64_t p = 1;

  RealPoly total() const { return p1 + p2; }
};

// Requires a torus character (fiber frequencies trivial) and a map with no
// fiber coupling (B = 0); throws PositiveEntropyError when A is not
// classifiable.
CharOrbitPoly char_orbit_poly(const AffineSkewMap& t, const Character& phi, const TorusPoint& x,
                              uint64_t p);

}  // namespace torosc
