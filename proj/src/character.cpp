#include "torosc/character.hpp"

namespace torosc {

bool Character::fiber_trivial(const FiniteAbelianGroup& f) const {
  for (size_t i = 0; i < fiber_freq.size(); ++i)
    if (fiber_freq[i] % f.modulus(static_cast<int>(i)) != 0) return false;
  return true;
}

Scalar Character::phase(const ProductPoint& p, const FiniteAbelianGroup& f) const {
  Scalar acc = p.x.pairing(torus_freq);
  if (!fiber_freq.empty()) {
    if (fiber_freq.size() != static_cast<size_t>(f.rank()))
      throw std::invalid_argument("character: fiber frequency rank mismatch");
    for (int i = 0; i < f.rank(); ++i)
      acc += Scalar(mpq_class(fiber_freq[i] * p.y[i], f.modulus(i)));
  }
  return acc;
}

UnitComplex Character::eval(const ProductPoint& p, const FiniteAbelianGroup& f,
                            mpfr_prec_t prec) const {
  auto z = cis_phase(phase(p, f).frac(prec));
  return {z.real(), z.imag()};
}

CharOrbitPoly char_orbit_poly(const AffineSkewMap& t, const Character& phi, const TorusPoint& x,
                              uint64_t p) {
  if (!t.b_morphism().is_zero())
    throw std::invalid_argument("char_orbit_poly: map couples the fiber (B != 0)");
  if (!phi.fiber_trivial(t.group()))
    throw std::invalid_argument("char_orbit_poly: character must be trivial on the fiber");
  const auto& ty = t.type();
  if (p < 1 || p > ty.m)
    throw std::invalid_argument("char_orbit_poly: p must be in [1, m]");

  TorusPoint apx = x;
  for (uint64_t i = 0; i < p; ++i) apx = apx.apply(t.a_matrix());

  int l = ty.l;
  CharOrbitPoly out;
  out.p = p;
  out.beta.resize(l);
  out.alpha.resize(l);
  out.theta.resize(l);
  for (int k = 0; k < l; ++k) {
    const IntMatrix& nk = t.nilpotent_power(k);
    out.beta[k] = phi.phase(apx.apply(nk));
    out.alpha[k] = phi.phase(t.b_star().apply(nk));
    out.theta[k] = phi.phase(t.b_prefix(p).apply(nk));
  }

  // P1(q) = sum_k C_q^k beta_k ; P2(q) = sum_k (C_q^{k+1} alpha_k + C_q^k theta_k)
  out.p1 = from_binomial(BinomialPoly(out.beta));
  std::vector<Scalar> z(static_cast<size_t>(l) + 1);
  for (int j = 0; j <= l; ++j) {
    if (j >= 1) z[j] += out.alpha[j - 1];
    if (j <= l - 1) z[j] += out.theta[j];
  }
  out.p2 = from_binomial(BinomialPoly(std::move(z)));

  out.rational_flag = true;
  for (int k = 0; k < l; ++k)
    if (!out.alpha[k].is_rational() || !out.theta[k].is_rational()) out.rational_flag = false;
  return out;
}

}  // namespace torosc
