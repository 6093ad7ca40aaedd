#pragma once

#include "torosc/character.hpp"
#include "torosc/sequence.hpp"

namespace torosc {

// Parallel-reduction contract: the index range may be partitioned
// arbitrarily; each chunk is summed in index order and chunk results are
// combined in chunk order, so the chunk count (not the thread count) fixes
// the result. The sequential mode is the reference. When every phase in
// play is rational with a desk-scale period and the sequence values are
// exactly representable, sums are bucketed per reduced phase with exact
// rational accumulation, which makes them independent of the partition
// altogether.
struct SumOptions {
  bool parallel = false;
  int chunks = 8;
  mpfr_prec_t prec = 160;
  bool force_float = false;  // disable the exact bucket path
};

// (1/N) sum_{n<N} c_n e^{2 pi i P(n)}.
std::complex<double> weighted_average(const SequenceSpec& c, const RealPoly& p, int64_t n,
                                      const SumOptions& opts = {});

// The un-normalized sum.
std::complex<double> weighted_sum(const SequenceSpec& c, const RealPoly& p, int64_t n,
                                  const SumOptions& opts = {});

// (1/N) sum_{n<N} c_n phi(T^n p0). Exact-mode systems stream the orbit by
// direct iteration; floating systems with quasi-unipotent A and B = 0 use
// the closed orbit form, which does not accumulate error over n.
std::complex<double> observable_average(const SequenceSpec& c, const AffineSkewMap& t,
                                        const Character& phi, const ProductPoint& p0, int64_t n,
                                        const SumOptions& opts = {});

// True when the bucketed exact path applies to this (c, P) pair.
bool exactly_summable(const SequenceSpec& c, const RealPoly& p);

}  // namespace torosc
