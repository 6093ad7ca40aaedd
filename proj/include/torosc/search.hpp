#pragma once

#include <optional>
#include <string>

#include "torosc/average.hpp"

namespace torosc {

struct OscConfig {
  std::vector<int64_t> schedule{1000, 10000, 100000, 1000000};
  int samples = 1024;        // stage-1 stratified samples
  int refine_budget = 240;   // simplex evaluations per candidate at stage 1
  int top_k = 16;
  uint64_t seed = 1;
  double epsilon = 0.5;      // refutation threshold at the largest N
  mpfr_prec_t prec = 160;
  int weak_grid = 256;                // t grid size per monomial degree
  std::vector<Scalar> weak_extra_t;   // extra exact grid points
  bool parallel = false;
  int chunks = 8;
};

// One evaluated phase: CSV row (N, phase_id, re, im, abs). s is the partial
// average (1/N) S_N for that phase.
struct PhaseRow {
  int64_t n;
  std::string phase_id;
  std::vector<double> coeffs;  // coefficients of t Q(t), degree 1 upward
  std::complex<double> s;
  double abs_s;
};

struct PhaseWitness {
  std::vector<double> coeffs;   // full search: coefficients of t Q(t)
  int monomial_k = -1;          // weak search: refuted degree, coeffs = {t}
  std::optional<Scalar> exact_t;  // weak search: grid point given exactly
  double abs_s = 0;
  int64_t n = 0;
};

enum class VerdictKind { refuted, consistent };

struct OscillationVerdict {
  VerdictKind kind = VerdictKind::consistent;
  int order = 1;
  double sup = 0;      // best |S_N| at the largest N
  int64_t n_max = 0;
  std::optional<PhaseWitness> witness;
};

struct AverageReport {
  std::vector<int64_t> schedule;
  std::vector<PhaseRow> rows;
  std::vector<double> sup_trajectory;           // best |S| per schedule entry
  std::vector<std::pair<int, double>> grid_sup; // weak: per-k grid sup at N_max
  OscConfig config;
  std::string verdict_str;
};

// Empirical oscillation-order test: maximizes |S_N| over phases t Q(t) with
// Q in R_{d-1}[t] and coefficients in [0,1)^d (the constant term plays no
// role), by stratified low-discrepancy sampling plus Nelder-Mead refinement
// cascaded along the N schedule. The verdict is finite-N evidence, never a
// proof: refuted carries a reproducible witness, consistent carries the
// observed sup trajectory.
std::pair<OscillationVerdict, AverageReport> test_oscillation(const SequenceSpec& c, int d,
                                                              const OscConfig& cfg);

// Weak variant: each monomial degree 0 <= k <= d is tested separately over
// scalar t in [0,1) (uniform grid plus configured exact extras, then the
// same refinement cascade).
std::pair<OscillationVerdict, AverageReport> test_weak_oscillation(const SequenceSpec& c, int d,
                                                                   const OscConfig& cfg);

// |S_N| for the phase with the given power-basis coefficients (degree 1
// upward); the re-evaluation entry point for witness reproducibility.
double witness_abs(const SequenceSpec& c, const std::vector<double>& coeffs, int64_t n,
                   const OscConfig& cfg);

}  // namespace torosc
