#pragma once

#include <json.hpp>

#include "torosc/realize.hpp"
#include "torosc/search.hpp"

namespace torosc {

using nlohmann::json;

// Matrix literal: {"dim": d, "rows": [[int | "decimal string", ...], ...]}.
IntMatrix matrix_from_json(const json& j);
json matrix_to_json(const IntMatrix& m);

// Polynomial literal: {"coeffs": ["expr", ...]} ordered from degree 0 up.
RealPoly poly_from_json(const json& j);
json poly_to_json(const RealPoly& p);
RatPoly rat_poly_from_json(const json& j);

// System description:
// {"torus_dim": d, "A": matrix, "F": {"moduli": [...]}, "C": matrix,
//  "B": {"generator_images": [[expr, ...], ...]}, "a": [expr, ...],
//  "b": [residues], "mode": "exact"|"float", "precision_bits": int}
// F/C/B/a/b optional (trivial defaults).
struct SystemSpec {
  AffineSkewMap map;
  mpfr_prec_t precision_bits = 160;
};
SystemSpec system_from_json(const json& j);
json system_to_json(const AffineSkewMap& map, mpfr_prec_t precision_bits);

// Sequence spec:
// {"kind":"polynomial-phase","poly":{...}} | {"kind":"moebius","length":N} |
// {"kind":"explicit-list","values":[[re,im],...]} |
// {"kind":"modulated-product","base":{...},"q":{...}} |
// {"kind":"subsequence","base":{...},"a":int,"b":int} (folded on load)
SequenceSpec sequence_from_json(const json& j);

// Realization export: system JSON plus start/observable/target; re-importable.
json realization_to_json(const Realization& r, mpfr_prec_t precision_bits);
Realization realization_from_json(const json& j);

json report_to_json(const AverageReport& report, const OscillationVerdict& verdict);
std::string report_rows_csv(const AverageReport& report);
json config_to_json(const OscConfig& cfg);

}  // namespace torosc
