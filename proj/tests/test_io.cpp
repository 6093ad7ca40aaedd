#include <doctest.h>

#include "torosc/io.hpp"

using namespace torosc;

TEST_CASE("matrix json round trip") {
  json j = json::parse(R"js({"dim": 2, "rows": [[1, 1], [0, 1]]})js");
  IntMatrix m = matrix_from_json(j);
  CHECK(m.at(0, 1) == 1);
  CHECK(matrix_from_json(matrix_to_json(m)) == m);

  // arbitrary-precision decimal strings
  json big = json::parse(R"js({"dim": 1, "rows": [["123456789012345678901234567890"]]})js");
  CHECK(matrix_from_json(big).at(0, 0) == mpz_class("123456789012345678901234567890"));

  CHECK_THROWS_WITH_AS(matrix_from_json(json::parse(R"js({"dim": 2, "rows": [[1, 1]]})js")),
                       doctest::Contains("rows"), std::invalid_argument);
}

TEST_CASE("poly json round trip") {
  json j = json::parse(R"js({"coeffs": ["0", "sqrt(2)", "1/3"]})js");
  RealPoly p = poly_from_json(j);
  CHECK(p.coeff(1) == Scalar::parse("sqrt(2)"));
  CHECK(poly_from_json(poly_to_json(p)) == p);
  CHECK_THROWS_AS(rat_poly_from_json(j), std::invalid_argument);
}

TEST_CASE("system json") {
  json j = json::parse(R"js({
    "torus_dim": 2,
    "A": {"dim": 2, "rows": [[1, 1], [0, 1]]},
    "F": {"moduli": [2]},
    "C": {"dim": 1, "rows": [[1]]},
    "B": {"generator_images": [["1/2", "0"]]},
    "a": ["1/3", "0"],
    "b": [1],
    "mode": "exact",
    "precision_bits": 128
  })js");
  SystemSpec sys = system_from_json(j);
  CHECK(sys.map.torus_dim() == 2);
  CHECK(sys.map.group().order() == 2);
  CHECK(sys.precision_bits == 128);
  CHECK(sys.map.translation().coord(0).as_rational() == mpq_class(1, 3));
  // round trip
  SystemSpec again = system_from_json(system_to_json(sys.map, sys.precision_bits));
  CHECK(again.map.torus_dim() == 2);
  CHECK(again.map.b_morphism().generator_image(0).coord(0).as_rational() == mpq_class(1, 2));

  json bad = j;
  bad["B"]["generator_images"][0][0] = "1/3";  // order violation for Z2
  CHECK_THROWS_WITH_AS(system_from_json(bad), doctest::Contains("order violation"),
                       std::invalid_argument);
}

TEST_CASE("sequence json") {
  auto c = sequence_from_json(json::parse(R"js({"kind": "moebius", "length": 100})js"));
  CHECK(c.kind() == SequenceSpec::Kind::moebius);

  auto cp = sequence_from_json(
      json::parse(R"js({"kind": "polynomial-phase", "poly": {"coeffs": ["0", "sqrt(2)"]}})js"));
  CHECK(cp.kind() == SequenceSpec::Kind::polynomial_phase);

  auto cm = sequence_from_json(json::parse(R"js({
    "kind": "modulated-product",
    "base": {"kind": "moebius", "length": 50},
    "q": {"coeffs": ["0", "1/2"]}
  })js"));
  CHECK(cm.modulation_period() == 2);

  auto cs = sequence_from_json(json::parse(R"js({
    "kind": "subsequence",
    "base": {"kind": "moebius", "length": 50},
    "a": 2, "b": 1
  })js"));
  CHECK(cs.term(0).real() == -1);  // mu(2)

  CHECK_THROWS_WITH_AS(sequence_from_json(json::parse(R"js({"kind": "nope"})js")),
                       doctest::Contains("unknown sequence kind"), std::invalid_argument);
}

TEST_CASE("realization export and re-import") {
  auto r = realize_affine(poly_from_json(json::parse(R"js({"coeffs": ["0", "sqrt(2)"]})js")));
  json j = realization_to_json(r, 160);
  Realization back = realization_from_json(j);
  CHECK(back.kind == RealizationKind::affine);
  CHECK(back.system.torus_dim() == r.system.torus_dim());
  CHECK(back.target == r.target);
  auto rep = verify_realization(back, 2000);
  CHECK(rep.max_error < 1e-8);
}
