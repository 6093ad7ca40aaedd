#include "torosc/io.hpp"

#include <sstream>

namespace torosc {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw std::invalid_argument("input field \"" + field + "\": " + what);
}

mpz_class int_from_json(const json& v, const std::string& field) {
  if (v.is_number_integer()) return mpz_class(v.get<long>());
  if (v.is_string()) {
    try {
      return mpz_class(v.get<std::string>(), 10);
    } catch (const std::exception&) {
      fail(field, "not an integer literal: " + v.get<std::string>());
    }
  }
  fail(field, "expected integer or decimal string");
}

Scalar scalar_from_json(const json& v, const std::string& field) {
  try {
    if (v.is_number_integer()) return Scalar(mpq_class(v.get<long>()));
    if (v.is_string()) return Scalar::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    fail(field, e.what());
  }
  fail(field, "expected coefficient expression string");
}

}  // namespace

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("rows"))
    fail("matrix", "expected object with \"dim\" and \"rows\"");
  int dim = j.at("dim").get<int>();
  if (dim < 1) fail("dim", "must be >= 1");
  const json& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != static_cast<size_t>(dim))
    fail("rows", "expected " + std::to_string(dim) + " rows");
  std::vector<mpz_class> entries;
  entries.reserve(static_cast<size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<size_t>(dim))
      fail("rows[" + std::to_string(i) + "]", "expected " + std::to_string(dim) + " entries");
    for (int k = 0; k < dim; ++k)
      entries.push_back(int_from_json(row[static_cast<size_t>(k)],
                                      "rows[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
  }
  return IntMatrix(dim, std::move(entries));
}

json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.dim(); ++k) {
      const mpz_class& e = m.at(i, k);
      if (e.fits_slong_p())
        row.push_back(e.get_si());
      else
        row.push_back(e.get_str());
    }
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.dim()}, {"rows", std::move(rows)}};
}

RealPoly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs")) fail("poly", "expected object with \"coeffs\"");
  const json& cs = j.at("coeffs");
  if (!cs.is_array() || cs.empty()) fail("coeffs", "expected nonempty array");
  std::vector<Scalar> coeffs;
  coeffs.reserve(cs.size());
  for (size_t i = 0; i < cs.size(); ++i)
    coeffs.push_back(scalar_from_json(cs[i], "coeffs[" + std::to_string(i) + "]"));
  return RealPoly(std::move(coeffs));
}

json poly_to_json(const RealPoly& p) {
  json cs = json::array();
  for (const auto& c : p.coeffs()) cs.push_back(c.str());
  return json{{"coeffs", std::move(cs)}};
}

RatPoly rat_poly_from_json(const json& j) {
  RealPoly p = poly_from_json(j);
  std::vector<mpq_class> coeffs;
  coeffs.reserve(p.coeff_count());
  for (const auto& c : p.coeffs()) {
    if (!c.is_rational()) fail("coeffs", "rational polynomial required, got " + c.str());
    coeffs.push_back(c.as_rational());
  }
  return RatPoly(std::move(coeffs));
}

SystemSpec system_from_json(const json& j) {
  if (!j.is_object() || !j.contains("A")) fail("system", "expected object with \"A\"");
  IntMatrix a = matrix_from_json(j.at("A"));
  int d = a.dim();
  if (j.contains("torus_dim") && j.at("torus_dim").get<int>() != d)
    fail("torus_dim", "does not match A's dimension");

  std::vector<int64_t> moduli{1};
  if (j.contains("F")) {
    const json& f = j.at("F");
    if (!f.is_object() || !f.contains("moduli")) fail("F", "expected object with \"moduli\"");
    moduli = f.at("moduli").get<std::vector<int64_t>>();
  }
  FiniteAbelianGroup group(moduli);

  GroupAutomorphism c_aut = GroupAutomorphism::identity(group);
  if (j.contains("C")) {
    IntMatrix cm = matrix_from_json(j.at("C"));
    if (cm.dim() != group.rank()) fail("C", "dimension does not match the group rank");
    std::vector<int64_t> ce;
    ce.reserve(static_cast<size_t>(cm.dim()) * cm.dim());
    for (int i = 0; i < cm.dim(); ++i)
      for (int k = 0; k < cm.dim(); ++k) {
        if (!cm.at(i, k).fits_slong_p()) fail("C", "entry out of range");
        ce.push_back(cm.at(i, k).get_si());
      }
    c_aut = GroupAutomorphism(group, std::move(ce));
  }

  Mode mode = Mode::exact;
  if (j.contains("mode")) {
    std::string m = j.at("mode").get<std::string>();
    if (m == "exact")
      mode = Mode::exact;
    else if (m == "float")
      mode = Mode::floating;
    else
      fail("mode", "expected \"exact\" or \"float\"");
  }

  TorusMorphismFromF b_mor = TorusMorphismFromF::zero(group, d);
  if (j.contains("B")) {
    const json& b = j.at("B");
    if (!b.is_object() || !b.contains("generator_images"))
      fail("B", "expected object with \"generator_images\"");
    const json& gi = b.at("generator_images");
    if (!gi.is_array() || gi.size() != static_cast<size_t>(group.rank()))
      fail("generator_images", "expected one image per cyclic factor");
    std::vector<TorusPoint> imgs;
    for (size_t i = 0; i < gi.size(); ++i) {
      std::vector<Scalar> coords;
      for (size_t k = 0; k < gi[i].size(); ++k)
        coords.push_back(scalar_from_json(gi[i][k], "generator_images[" + std::to_string(i) + "]"));
      if (coords.size() != static_cast<size_t>(d))
        fail("generator_images[" + std::to_string(i) + "]", "expected " + std::to_string(d) +
                                                                " coordinates");
      imgs.emplace_back(std::move(coords), Mode::exact);
    }
    b_mor = TorusMorphismFromF(group, d, std::move(imgs));
  }

  TorusPoint a_trans = TorusPoint::zero(d, mode);
  if (j.contains("a")) {
    const json& av = j.at("a");
    if (!av.is_array() || av.size() != static_cast<size_t>(d))
      fail("a", "expected " + std::to_string(d) + " coordinates");
    std::vector<Scalar> coords;
    for (size_t i = 0; i < av.size(); ++i)
      coords.push_back(scalar_from_json(av[i], "a[" + std::to_string(i) + "]"));
    a_trans = TorusPoint(std::move(coords), mode);
  }

  GroupElement b_trans = group.zero();
  if (j.contains("b")) {
    auto bv = j.at("b").get<std::vector<int64_t>>();
    if (bv.size() != static_cast<size_t>(group.rank()))
      fail("b", "expected one residue per cyclic factor");
    b_trans = group.reduce(bv);
  }

  mpfr_prec_t prec = 160;
  if (j.contains("precision_bits")) {
    prec = j.at("precision_bits").get<long>();
    if (prec < MPFR_PREC_MIN) fail("precision_bits", "too small");
  }

  return SystemSpec{AffineSkewMap(std::move(a), std::move(b_mor), std::move(c_aut),
                                  std::move(a_trans), std::move(b_trans)),
                    prec};
}

json system_to_json(const AffineSkewMap& map, mpfr_prec_t precision_bits) {
  json j;
  j["torus_dim"] = map.torus_dim();
  j["A"] = matrix_to_json(map.a_matrix());
  j["F"] = json{{"moduli", map.group().moduli()}};
  {
    json cm = json::array();
    for (int i = 0; i < map.group().rank(); ++i) {
      json row = json::array();
      for (int k = 0; k < map.group().rank(); ++k)
        row.push_back(map.c_automorphism().entry(i, k));
      cm.push_back(std::move(row));
    }
    j["C"] = json{{"dim", map.group().rank()}, {"rows", std::move(cm)}};
  }
  {
    json gi = json::array();
    for (int i = 0; i < map.group().rank(); ++i) {
      json coords = json::array();
      const TorusPoint& img = map.b_morphism().generator_image(i);
      for (int k = 0; k < img.dim(); ++k) coords.push_back(img.coord(k).str());
      gi.push_back(std::move(coords));
    }
    j["B"] = json{{"generator_images", std::move(gi)}};
  }
  {
    json av = json::array();
    for (int i = 0; i < map.torus_dim(); ++i) av.push_back(map.translation().coord(i).str());
    j["a"] = std::move(av);
  }
  j["b"] = map.fiber_translation();
  j["mode"] = map.mode() == Mode::exact ? "exact" : "float";
  j["precision_bits"] = static_cast<long>(precision_bits);
  return j;
}

SequenceSpec sequence_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) fail("seq", "expected object with \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "polynomial-phase") {
    if (!j.contains("poly")) fail("seq", "polynomial-phase requires \"poly\"");
    return SequenceSpec::polynomial_phase(poly_from_json(j.at("poly")));
  }
  if (kind == "moebius") {
    if (!j.contains("length")) fail("seq", "moebius requires \"length\"");
    return SequenceSpec::moebius(j.at("length").get<int64_t>());
  }
  if (kind == "explicit-list") {
    if (!j.contains("values")) fail("seq", "explicit-list requires \"values\"");
    std::vector<std::complex<double>> vals;
    for (const auto& v : j.at("values")) {
      if (v.is_array() && v.size() == 2)
        vals.emplace_back(v[0].get<double>(), v[1].get<double>());
      else if (v.is_number())
        vals.emplace_back(v.get<double>(), 0.0);
      else
        fail("values", "expected [re, im] pairs or numbers");
    }
    return SequenceSpec::explicit_list(std::move(vals));
  }
  if (kind == "modulated-product") {
    if (!j.contains("base") || !j.contains("q"))
      fail("seq", "modulated-product requires \"base\" and \"q\"");
    return modulate_rational(sequence_from_json(j.at("base")), rat_poly_from_json(j.at("q")));
  }
  if (kind == "subsequence") {
    if (!j.contains("base") || !j.contains("a") || !j.contains("b"))
      fail("seq", "subsequence requires \"base\", \"a\", \"b\"");
    return arithmetic_subsequence(sequence_from_json(j.at("base")), j.at("a").get<int64_t>(),
                                  j.at("b").get<int64_t>());
  }
  fail("kind", "unknown sequence kind: " + kind);
}

json realization_to_json(const Realization& r, mpfr_prec_t precision_bits) {
  json j = system_to_json(r.system, precision_bits);
  json start = json::array();
  for (int i = 0; i < r.start.x.dim(); ++i) start.push_back(r.start.x.coord(i).str());
  j["start"] = std::move(start);
  j["observable"] = json{{"coordinate", r.observable_coord}, {"b0", r.b0.str()}};
  j["target_poly"] = poly_to_json(r.target);
  j["realization_kind"] = r.kind == RealizationKind::automorphism ? "automorphism" : "affine";
  return j;
}

Realization realization_from_json(const json& j) {
  SystemSpec sys = system_from_json(j);
  if (!j.contains("start") || !j.contains("observable") || !j.contains("target_poly") ||
      !j.contains("realization_kind"))
    fail("realization", "missing start/observable/target_poly/realization_kind");
  std::vector<Scalar> coords;
  for (size_t i = 0; i < j.at("start").size(); ++i)
    coords.push_back(scalar_from_json(j.at("start")[i], "start[" + std::to_string(i) + "]"));
  TorusPoint x(std::move(coords), sys.map.mode());
  ProductPoint start = sys.map.start(std::move(x), sys.map.group().zero());
  Scalar b0 = scalar_from_json(j.at("observable").at("b0"), "observable.b0");
  int coord = j.at("observable").at("coordinate").get<int>();
  if (coord != 0)
    fail("observable.coordinate", "the realized observable is the first-coordinate projection");
  RealPoly target = poly_from_json(j.at("target_poly"));
  RealizationKind kind = j.at("realization_kind").get<std::string>() == "affine"
                             ? RealizationKind::affine
                             : RealizationKind::automorphism;
  return {kind, std::move(sys.map), std::move(start), coord, std::move(b0), std::move(target)};
}

json config_to_json(const OscConfig& cfg) {
  json extras = json::array();
  for (const auto& t : cfg.weak_extra_t) extras.push_back(t.str());
  return json{{"schedule", cfg.schedule},
              {"samples", cfg.samples},
              {"refine_budget", cfg.refine_budget},
              {"top_k", cfg.top_k},
              {"seed", cfg.seed},
              {"epsilon", cfg.epsilon},
              {"precision_bits", static_cast<long>(cfg.prec)},
              {"weak_grid", cfg.weak_grid},
              {"weak_extra_t", std::move(extras)},
              {"parallel", cfg.parallel},
              {"chunks", cfg.chunks}};
}

json report_to_json(const AverageReport& report, const OscillationVerdict& verdict) {
  json j;
  j["verdict"] = report.verdict_str;
  j["order"] = verdict.order;
  j["sup"] = verdict.sup;
  j["N_max"] = verdict.n_max;
  if (verdict.witness) {
    json w;
    w["coeffs"] = verdict.witness->coeffs;
    if (verdict.witness->monomial_k >= 0) w["monomial_k"] = verdict.witness->monomial_k;
    if (verdict.witness->exact_t) w["exact_t"] = verdict.witness->exact_t->str();
    w["abs_S"] = verdict.witness->abs_s;
    w["N"] = verdict.witness->n;
    j["witness"] = std::move(w);
  }
  j["sup_trajectory"] = report.sup_trajectory;
  if (!report.grid_sup.empty()) {
    json g = json::array();
    for (const auto& [k, sup] : report.grid_sup) g.push_back(json{{"k", k}, {"sup", sup}});
    j["grid_sup"] = std::move(g);
  }
  j["schedule"] = report.schedule;
  j["config"] = config_to_json(report.config);
  return j;
}

std::string report_rows_csv(const AverageReport& report) {
  std::ostringstream os;
  os << "N,phase_id,re,im,abs\n";
  char buf[96];
  for (const auto& row : report.rows) {
    os << row.n << "," << row.phase_id << ",";
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", row.s.real(), row.s.imag(), row.abs_s);
    os << buf << "\n";
  }
  return os.str();
}

}  // namespace torosc
