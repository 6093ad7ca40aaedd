#pragma once

#include <cstdint>
#include <vector>

#include "torosc/poly.hpp"

namespace torosc {

// Streams frac(P(n)) for n = n0, n0+1, ... by stepping a forward-difference
// table mod 1. All table entries live in [0,1) at fixed precision, so the
// per-step rounding error is bounded by (deg+1) * 2^-prec regardless of how
// large P(n) itself grows; seeding is exact. Independent streams may be
// seeded at arbitrary start indices, which is what makes partitioned
// parallel summation equivalent to the sequential pass.
class PhaseStream {
 public:
  PhaseStream(const RealPoly& p, int64_t n0, mpfr_prec_t prec = 160);
  PhaseStream(const PhaseStream&) = delete;
  PhaseStream& operator=(const PhaseStream&) = delete;
  PhaseStream(PhaseStream&&) noexcept;
  ~PhaseStream();

  // Phase of the current index as a double in [0,1), then advance.
  double next();
  // Current phase at full stream precision (no advance).
  BigFloat current(mpfr_prec_t out_prec) const;
  void advance();

 private:
  int deg_;
  mpfr_prec_t prec_;
  std::vector<mpfr_t> diffs_;  // diffs_[0] = current value, diffs_[k] = k-th forward difference
};

}  // namespace torosc
