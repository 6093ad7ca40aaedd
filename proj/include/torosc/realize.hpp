#pragma once

#include "torosc/poly.hpp"
#include "torosc/skew.hpp"

namespace torosc {

enum class RealizationKind { automorphism, affine };

// An explicit system, start point, and first-coordinate observable whose
// realization equals a prescribed polynomial exponential sequence:
// e^{2 pi i target(n)} = e^{2 pi i (G(T^n start) + b0)} for all n >= 0.
struct Realization {
  RealizationKind kind;
  AffineSkewMap system;
  ProductPoint start;
  int observable_coord = 0;
  Scalar b0;
  RealPoly target;
};

// Special automorphism T(x,y) = ((I+N)x + By, Cy) on T^{d+1} x F with
// d = deg P; the start point carries the binomial coordinates of P, so the
// first orbit coordinate equals P(n) mod 1. F defaults to the trivial group.
Realization realize_automorphism(const RealPoly& p);
Realization realize_automorphism(const RealPoly& p, const FiniteAbelianGroup& f,
                                 const TorusMorphismFromF& b, const GroupAutomorphism& c);

// Special affine map T(x,y) = ((I+N)x + By + b, Cy) on T^d x F with
// d = deg Q + 1; the translation carries the binomial coordinates of t Q(t),
// so G(T^n (0,0)) + b0 = n Q(n) mod 1.
Realization realize_affine(const RealPoly& q);
Realization realize_affine(const RealPoly& q, const FiniteAbelianGroup& f,
                           const TorusMorphismFromF& b, const GroupAutomorphism& c);

struct VerifyReport {
  double max_error = 0;
  int64_t argmax_n = 0;
  int64_t n_checked = 0;
  bool exact = false;            // exact-rational equality checks were used
  mpfr_prec_t forced_prec = 0;   // 0 = adaptive precision
  bool precision_flagged = false;
};

// max_{n < N} |e^{2 pi i target(n)} - e^{2 pi i (G(orbit n) + b0)}| with the
// orbit side evaluated through the closed binomial forms. Exact rational data
// yields error exactly 0. A nonzero forced_prec clamps the working precision
// of the orbit side (the reference side stays adaptive); the report flags
// the run when the clamp is below what the binomial magnitudes require.
VerifyReport verify_realization(const Realization& r, int64_t n, mpfr_prec_t forced_prec = 0);

// Working precision the orbit side needs at index n (binomials up to C_n^d
// plus coefficient magnitude plus 96 fractional bits).
mpfr_prec_t recommended_precision(const Realization& r, int64_t n);

}  // namespace torosc
