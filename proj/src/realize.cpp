#include "torosc/realize.hpp"

namespace torosc {

namespace {

Mode mode_for(const RealPoly& p) { return p.is_rational() ? Mode::exact : Mode::floating; }

std::vector<Scalar> padded_coords(const BinomialPoly& b, size_t dim) {
  std::vector<Scalar> coords(b.coords());
  coords.resize(dim);
  return coords;
}

// Orbit-side phase at index n through the closed binomial row: the
// realization start/translation coordinates against C_n^k (automorphism:
// k = 0..d; affine: C_n^{k+1}).
Scalar orbit_phase_exact(const Realization& r, int64_t n) {
  Scalar acc;
  if (r.kind == RealizationKind::automorphism) {
    const auto& x = r.start.x;
    for (int k = 0; k < x.dim(); ++k) {
      Scalar t = x.coord(k);
      t.scale(mpq_class(binom(static_cast<unsigned long>(n), static_cast<unsigned long>(k))));
      acc += t;
    }
  } else {
    const auto& b = r.system.translation();
    for (int k = 0; k < b.dim(); ++k) {
      Scalar t = b.coord(k);
      t.scale(mpq_class(binom(static_cast<unsigned long>(n), static_cast<unsigned long>(k) + 1)));
      acc += t;
    }
    acc += r.b0;
  }
  return acc;
}

// Same contraction evaluated at a clamped working precision, which is how
// a fixed-precision user would run the closed form.
BigFloat orbit_phase_clamped(const Realization& r, int64_t n, mpfr_prec_t prec) {
  BigFloat acc(prec);
  mpfr_t term, coeff;
  mpfr_inits2(prec, term, coeff, (mpfr_ptr) nullptr);
  auto add_term = [&](const Scalar& s, const mpz_class& c) {
    BigFloat v = s.eval(prec);
    mpfr_set_z(coeff, c.get_mpz_t(), MPFR_RNDN);
    mpfr_mul(term, v.ptr(), coeff, MPFR_RNDN);
    mpfr_add(acc.ptr(), acc.ptr(), term, MPFR_RNDN);
  };
  if (r.kind == RealizationKind::automorphism) {
    const auto& x = r.start.x;
    for (int k = 0; k < x.dim(); ++k)
      add_term(x.coord(k), binom(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
  } else {
    const auto& b = r.system.translation();
    for (int k = 0; k < b.dim(); ++k)
      add_term(b.coord(k),
               binom(static_cast<unsigned long>(n), static_cast<unsigned long>(k) + 1));
    add_term(r.b0, mpz_class(1));
  }
  mpfr_clears(term, coeff, (mpfr_ptr) nullptr);
  acc.reduce_mod1();
  return acc;
}

}  // namespace

Realization realize_automorphism(const RealPoly& p) {
  auto f = FiniteAbelianGroup::trivial();
  int dim = static_cast<int>(p.coeff_count());
  return realize_automorphism(p, f, TorusMorphismFromF::zero(f, dim),
                              GroupAutomorphism::identity(f));
}

Realization realize_automorphism(const RealPoly& p, const FiniteAbelianGroup& f,
                                 const TorusMorphismFromF& b, const GroupAutomorphism& c) {
  int dim = static_cast<int>(p.coeff_count());  // declared degree bound + 1
  IntMatrix a = IntMatrix::identity(dim) + IntMatrix::superdiagonal(dim);
  Mode mode = mode_for(p);
  TorusPoint x(padded_coords(to_binomial(p), static_cast<size_t>(dim)), mode);
  AffineSkewMap system(std::move(a), b, c, TorusPoint::zero(dim, mode), f.zero());
  ProductPoint start = system.start(std::move(x), f.zero());
  return {RealizationKind::automorphism, std::move(system), std::move(start), 0, Scalar(), p};
}

Realization realize_affine(const RealPoly& q) {
  auto f = FiniteAbelianGroup::trivial();
  int dim = static_cast<int>(q.coeff_count());  // declared deg Q + 1
  return realize_affine(q, f, TorusMorphismFromF::zero(f, dim), GroupAutomorphism::identity(f));
}

Realization realize_affine(const RealPoly& q, const FiniteAbelianGroup& f,
                           const TorusMorphismFromF& b, const GroupAutomorphism& c) {
  RealPoly tq = q.shift_up();
  int d = static_cast<int>(q.coeff_count());
  BinomialPoly coords = to_binomial(tq);
  Scalar b0 = coords.coord(0);
  std::vector<Scalar> trans(static_cast<size_t>(d));
  for (int k = 1; k < static_cast<int>(coords.size()); ++k) trans[k - 1] = coords.coord(k);
  IntMatrix a = IntMatrix::identity(d) + IntMatrix::superdiagonal(d);
  Mode mode = mode_for(tq);
  AffineSkewMap system(std::move(a), b, c, TorusPoint(std::move(trans), mode), f.zero());
  ProductPoint start = system.start(TorusPoint::zero(d, mode), f.zero());
  return {RealizationKind::affine, std::move(system), std::move(start), 0, b0, tq};
}

mpfr_prec_t recommended_precision(const Realization& r, int64_t n) {
  int top = r.kind == RealizationKind::automorphism ? r.start.x.dim() - 1
                                                    : r.system.translation().dim();
  mpz_class c = binom(static_cast<unsigned long>(std::max<int64_t>(n, 1)),
                      static_cast<unsigned long>(top));
  long coeff_bits = 1;
  const auto& coords =
      r.kind == RealizationKind::automorphism ? r.start.x.coords() : r.system.translation().coords();
  for (const auto& s : coords) coeff_bits = std::max(coeff_bits, s.magnitude_bits());
  return static_cast<mpfr_prec_t>(mpz_sizeinbase(c.get_mpz_t(), 2) + coeff_bits + 96);
}

VerifyReport verify_realization(const Realization& r, int64_t n, mpfr_prec_t forced_prec) {
  VerifyReport rep;
  rep.n_checked = n;
  rep.forced_prec = forced_prec;
  bool all_exact = r.target.is_rational() && forced_prec == 0;
  rep.exact = all_exact;
  for (int64_t i = 0; i < n; ++i) {
    double err;
    if (all_exact) {
      Scalar diff = orbit_phase_exact(r, i) - r.target.eval_at_integer(mpz_class(static_cast<long>(i)));
      err = diff.is_integer() ? 0.0
                              : unit_circle_distance(diff.frac(96), BigFloat(96));
    } else {
      BigFloat target_side = eval_phase_frac(r.target, mpz_class(static_cast<long>(i)), 128);
      BigFloat orbit_side =
          forced_prec > 0 ? orbit_phase_clamped(r, i, forced_prec)
                          : orbit_phase_exact(r, i).frac(128);
      err = unit_circle_distance(target_side, orbit_side);
    }
    if (err > rep.max_error) {
      rep.max_error = err;
      rep.argmax_n = i;
    }
  }
  if (forced_prec > 0 && n > 0 && forced_prec < recommended_precision(r, n - 1))
    rep.precision_flagged = true;
  return rep;
}

}  // namespace torosc
