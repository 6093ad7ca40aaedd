#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "torosc/io.hpp"
#include "torosc/version.hpp"

using namespace torosc;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("input file \"" + path + "\": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("input file \"" + path + "\": " + e.what());
  }
}

struct Output {
  std::string out_path;
  std::string format = "json";

  // JSON summary to --out (or stdout); row CSV to <out>.csv when rows exist,
  // or to stdout when --format csv and no --out.
  void emit(const json& summary, const AverageReport* report = nullptr) const {
    json j = summary;
    j["artifact_version"] = kVersion;
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
      if (format == "csv" && report != nullptr) {
        std::cout << report_rows_csv(*report);
      } else {
        std::cout << text;
      }
    } else {
      std::ofstream out(out_path);
      if (!out) throw std::invalid_argument("output file \"" + out_path + "\": cannot open");
      out << text;
      if (report != nullptr && format == "csv") {
        std::ofstream csv(out_path + ".csv");
        if (!csv) throw std::invalid_argument("output file \"" + out_path + ".csv\": cannot open");
        csv << report_rows_csv(*report);
      }
    }
  }
};

std::vector<int64_t> parse_schedule(const std::string& csv) {
  std::vector<int64_t> out;
  size_t pos = 0;
  while (pos < csv.size()) {
    size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    std::string tok = csv.substr(pos, comma - pos);
    if (!tok.empty()) out.push_back(std::stoll(tok));
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("flag --N: expected a comma-separated list");
  for (int64_t n : out)
    if (n < 1) throw std::invalid_argument("flag --N: lengths must be >= 1");
  return out;
}

json complex_json(std::complex<double> z) {
  return json{{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}};
}

json point_json(const TorusPoint& x) {
  json coords = json::array();
  json approx = json::array();
  for (int i = 0; i < x.dim(); ++i) {
    coords.push_back(x.coord(i).str());
    approx.push_back(x.coord(i).frac(96).to_double());
  }
  return json{{"coords", std::move(coords)}, {"mod1", std::move(approx)}};
}

TorusPoint point_from_arg(const std::string& csv, int dim, Mode mode) {
  std::vector<Scalar> coords;
  std::string s = csv;
  if (!s.empty() && s.front() == '[') s = s.substr(1, s.size() - 2);
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    std::string tok = s.substr(pos, comma - pos);
    if (!tok.empty()) coords.push_back(Scalar::parse(tok));
    if (comma == s.size()) break;
    pos = comma + 1;
  }
  if (static_cast<int>(coords.size()) != dim)
    throw std::invalid_argument("flag --start: expected " + std::to_string(dim) +
                                " coordinates, got " + std::to_string(coords.size()));
  return TorusPoint(std::move(coords), mode);
}

int run(int argc, char** argv) {
  CLI::App app{"torosc: exact zero-entropy torus dynamics and empirical oscillation testing"};
  app.require_subcommand(1);
  app.fallthrough();

  Output output;
  app.add_option("--out", output.out_path, "write the JSON report here (plus .csv rows)");
  app.add_option("--format", output.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string matrix_path, system_path, poly_path, seq_path;
  std::string schedule_str = "1000,10000,100000,1000000";
  std::string mode_override;
  long precision_bits = 160;
  int samples = 1024, refine = 240, d_order = 1;
  uint64_t seed = 1;
  double epsilon = 0.5;
  bool parallel = false;
  int grid = 256;
  std::vector<std::string> extra_t;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--precision-bits", precision_bits, "working precision for phase reduction");
    cmd->add_option("--mode", mode_override, "override the arithmetic mode (exact|float)")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_flag("--parallel", parallel, "enable the parallel reduction");
  };

  auto* classify_cmd = app.add_subcommand("classify", "zero-entropy / quasi-unipotent test");
  classify_cmd->add_option("--matrix", matrix_path, "matrix JSON path")->required();

  auto* orbit_cmd = app.add_subcommand("orbit", "iterate vs closed-form orbit comparison");
  orbit_cmd->add_option("--system", system_path, "system JSON path")->required();
  std::string start_str = "[]";
  std::string n_list_str = "1,2,3,4,5";
  orbit_cmd->add_option("--start", start_str, "start point, e.g. \"[1/3,sqrt(2)]\"");
  orbit_cmd->add_option("--n", n_list_str, "comma list of orbit indices");
  add_common(orbit_cmd);

  auto* skew_cmd = app.add_subcommand("skew", "period, H_n, and power-decomposition checks");
  skew_cmd->add_option("--system", system_path, "system JSON path")->required();
  std::string skew_n_str = "1,2,3,5,8";
  skew_cmd->add_option("--n", skew_n_str, "comma list of block counts n");
  add_common(skew_cmd);

  auto* avg_cmd = app.add_subcommand("average", "weighted average of c_n against a phase");
  avg_cmd->add_option("--seq", seq_path, "sequence JSON path")->required();
  avg_cmd->add_option("--poly", poly_path, "phase polynomial JSON path");
  avg_cmd->add_option("--N", schedule_str, "comma list of lengths");
  add_common(avg_cmd);

  auto* osc_cmd = app.add_subcommand("test-osc", "empirical oscillation-order test");
  osc_cmd->add_option("--seq", seq_path, "sequence JSON path")->required();
  osc_cmd->add_option("--d", d_order, "order to test")->required();
  osc_cmd->add_option("--N", schedule_str, "N schedule (comma list)");
  osc_cmd->add_option("--samples", samples, "stage-1 sample count");
  osc_cmd->add_option("--refine", refine, "refinement budget per candidate");
  osc_cmd->add_option("--seed", seed, "search seed");
  osc_cmd->add_option("--epsilon", epsilon, "refutation threshold");
  add_common(osc_cmd);

  auto* weak_cmd = app.add_subcommand("test-weak", "empirical weak-oscillation test");
  weak_cmd->add_option("--seq", seq_path, "sequence JSON path")->required();
  weak_cmd->add_option("--d", d_order, "order to test")->required();
  weak_cmd->add_option("--N", schedule_str, "N schedule (comma list)");
  weak_cmd->add_option("--grid", grid, "t grid size per monomial degree");
  weak_cmd->add_option("--extra-t", extra_t, "extra exact grid points (expressions)");
  weak_cmd->add_option("--refine", refine, "refinement budget per candidate");
  weak_cmd->add_option("--seed", seed, "search seed");
  weak_cmd->add_option("--epsilon", epsilon, "refutation threshold");
  add_common(weak_cmd);

  auto* realize_cmd = app.add_subcommand("realize", "realize a polynomial exponential sequence");
  realize_cmd->add_option("--poly", poly_path, "target polynomial JSON path")->required();
  bool affine = false;
  int64_t verify_n = 0;
  long forced_prec = 0;
  realize_cmd->add_flag("--affine", affine, "use the affine construction (target t Q(t))");
  realize_cmd->add_option("--verify", verify_n, "verify the realization up to this N");
  realize_cmd->add_option("--force-precision", forced_prec,
                          "clamp the orbit-side working precision (demonstration)");
  add_common(realize_cmd);

  auto* counter_cmd = app.add_subcommand("counterexample",
                                         "weakly-oscillating-but-not-oscillating sequence");
  int cd = 2;
  std::string alpha_str = "sqrt(2)", beta_str = "sqrt(3)";
  int64_t counter_n = 100000;
  counter_cmd->add_option("--d", cd, "order d >= 2");
  counter_cmd->add_option("--alpha", alpha_str, "irrational alpha expression");
  counter_cmd->add_option("--beta", beta_str, "irrational beta expression");
  counter_cmd->add_option("--N", counter_n, "length for the checks");
  counter_cmd->add_option("--grid", grid, "weak-test grid size");
  counter_cmd->add_option("--seed", seed, "search seed");
  add_common(counter_cmd);

  auto* moebius_cmd = app.add_subcommand("moebius", "Moebius sequence by linear sieve");
  int64_t moebius_n = 1000000;
  moebius_cmd->add_option("--N", moebius_n, "sieve length");

  CLI11_PARSE(app, argc, argv);
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(precision_bits);

  auto config_echo = [&](const std::string& subcommand) {
    json cfg;
    cfg["subcommand"] = subcommand;
    if (!matrix_path.empty()) cfg["matrix"] = matrix_path;
    if (!system_path.empty()) cfg["system"] = system_path;
    if (!poly_path.empty()) cfg["poly"] = poly_path;
    if (!seq_path.empty()) cfg["seq"] = seq_path;
    if (!mode_override.empty()) cfg["mode"] = mode_override;
    cfg["precision_bits"] = precision_bits;
    cfg["parallel"] = parallel;
    cfg["format"] = output.format;
    return cfg;
  };

  if (classify_cmd->parsed()) {
    IntMatrix a = matrix_from_json(load_json(matrix_path));
    json j;
    j["matrix"] = matrix_to_json(a);
    auto t = classify_zero_entropy(a);
    j["zero_entropy"] = t.has_value();
    if (t) {
      j["m"] = t->m;
      j["l"] = t->l;
      j["nilpotent_part"] = matrix_to_json(t->nilpotent_part);
    }
    j["config"] = config_echo("classify");
    output.emit(j);
    return 0;
  }

  auto load_system = [&]() {
    json j = load_json(system_path);
    if (!mode_override.empty()) j["mode"] = mode_override;
    return system_from_json(j);
  };

  if (orbit_cmd->parsed()) {
    SystemSpec sys = load_system();
    TorusPoint x = start_str == "[]"
                       ? TorusPoint::zero(sys.map.torus_dim(), sys.map.mode())
                       : point_from_arg(start_str, sys.map.torus_dim(), sys.map.mode());
    ProductPoint p = sys.map.start(x, sys.map.group().zero());
    json rows = json::array();
    bool all_equal = true;
    bool closed_ok = sys.map.b_morphism().is_zero();
    int l = 0;
    if (closed_ok) {
      try {
        l = sys.map.type().l;
      } catch (const PositiveEntropyError&) {
        closed_ok = false;
      }
    }
    for (int64_t n : parse_schedule(n_list_str)) {
      ProductPoint it = sys.map.iterate(p, static_cast<uint64_t>(n));
      json row;
      row["n"] = n;
      row["iterate"] = point_json(it.x);
      if (closed_ok && n >= l) {
        TorusPoint cl = sys.map.closed_orbit(x, static_cast<uint64_t>(n));
        row["closed"] = point_json(cl);
        bool eq = cl.equals_mod1(it.x);
        row["equal"] = eq;
        all_equal = all_equal && eq;
      }
      rows.push_back(std::move(row));
    }
    json j;
    j["rows"] = std::move(rows);
    j["closed_form_available"] = closed_ok;
    j["all_equal"] = all_equal;
    j["config"] = config_echo("orbit");
    output.emit(j);
    return 0;
  }

  if (skew_cmd->parsed()) {
    SystemSpec sys = load_system();
    SkewPeriod sp = sys.map.skew_period();
    json j;
    j["q_factorial"] = sp.q_factorial.get_str();
    j["q_min"] = sp.q_min;
    j["M"] = matrix_to_json(sp.m_matrix);
    json hrows = json::array();
    json drows = json::array();
    bool all_equal = true;
    ProductPoint p = sys.map.start(TorusPoint::zero(sys.map.torus_dim(), sys.map.mode()),
                                   sys.map.group().zero());
    for (int64_t n : parse_schedule(skew_n_str)) {
      TorusPoint hd = sys.map.h_term(static_cast<uint64_t>(n), HMode::direct);
      TorusPoint hc = sys.map.h_term(static_cast<uint64_t>(n), HMode::closed);
      bool eq = hd.equals_mod1(hc);
      all_equal = all_equal && eq;
      hrows.push_back(json{{"n", n}, {"H_n", point_json(hc)}, {"modes_equal", eq}});
      for (uint64_t jj = 0; jj < std::min<uint64_t>(sp.q_min, 4); ++jj) {
        ProductPoint got = sys.map.power_decomposition(p, static_cast<uint64_t>(n), jj);
        ProductPoint want = sys.map.iterate(p, static_cast<uint64_t>(n) * sp.q_min + jj);
        bool deq = got.x.equals_mod1(want.x) && got.y == want.y;
        all_equal = all_equal && deq;
        drows.push_back(json{{"n", n}, {"j", jj}, {"equal", deq}});
      }
    }
    j["h_term_checks"] = std::move(hrows);
    j["decomposition_checks"] = std::move(drows);
    j["all_equal"] = all_equal;
    j["config"] = config_echo("skew");
    output.emit(j);
    return 0;
  }

  if (avg_cmd->parsed()) {
    SequenceSpec c = sequence_from_json(load_json(seq_path));
    RealPoly p = poly_path.empty() ? RealPoly::zero() : poly_from_json(load_json(poly_path));
    SumOptions opts{parallel, 8, prec, false};
    AverageReport report;
    report.schedule = parse_schedule(schedule_str);
    json rows = json::array();
    for (int64_t n : report.schedule) {
      std::complex<double> avg = weighted_average(c, p, n, opts);
      rows.push_back(json{{"N", n}, {"average", complex_json(avg)}});
      report.rows.push_back({n, "average", {}, avg, std::abs(avg)});
    }
    json j;
    j["rows"] = std::move(rows);
    j["exact_path"] = exactly_summable(c, p);
    j["config"] = config_echo("average");
    output.emit(j, &report);
    return 0;
  }

  if (osc_cmd->parsed() || weak_cmd->parsed()) {
    SequenceSpec c = sequence_from_json(load_json(seq_path));
    OscConfig cfg;
    cfg.schedule = parse_schedule(schedule_str);
    cfg.samples = samples;
    cfg.refine_budget = refine;
    cfg.seed = seed;
    cfg.epsilon = epsilon;
    cfg.prec = prec;
    cfg.weak_grid = grid;
    cfg.parallel = parallel;
    for (const auto& e : extra_t) cfg.weak_extra_t.push_back(Scalar::parse(e));
    auto [verdict, report] = osc_cmd->parsed() ? test_oscillation(c, d_order, cfg)
                                               : test_weak_oscillation(c, d_order, cfg);
    output.emit(report_to_json(report, verdict), &report);
    return verdict.kind == VerdictKind::refuted ? 2 : 0;
  }

  if (realize_cmd->parsed()) {
    RealPoly p = poly_from_json(load_json(poly_path));
    if (mode_override == "exact" && !p.is_rational())
      throw std::invalid_argument("flag --mode: exact mode requires a rational target polynomial");
    Realization r = affine ? realize_affine(p) : realize_automorphism(p);
    json j = realization_to_json(r, prec);
    if (verify_n > 0) {
      VerifyReport rep = verify_realization(r, verify_n, static_cast<mpfr_prec_t>(forced_prec));
      j["verify"] = json{{"N", rep.n_checked},
                         {"max_error", rep.max_error},
                         {"argmax_n", rep.argmax_n},
                         {"exact", rep.exact},
                         {"forced_precision", static_cast<long>(rep.forced_prec)},
                         {"precision_flagged", rep.precision_flagged}};
    }
    j["config"] = config_echo(affine ? "realize --affine" : "realize");
    output.emit(j);
    return 0;
  }

  if (counter_cmd->parsed()) {
    Scalar alpha = Scalar::parse(alpha_str);
    Scalar beta = Scalar::parse(beta_str);
    SequenceSpec c = counterexample_weak_not_full(cd, alpha, beta);
    // the exact refutation phase P(n) = -(alpha n^d + beta n^{d-1})
    std::vector<Scalar> pc(static_cast<size_t>(cd) + 1);
    pc[static_cast<size_t>(cd)] = -alpha;
    pc[static_cast<size_t>(cd) - 1] = -beta;
    RealPoly refute_phase(std::move(pc));
    SumOptions opts{parallel, 8, prec, false};
    std::complex<double> s = weighted_average(c, refute_phase, counter_n, opts);

    OscConfig cfg;
    cfg.schedule = {std::max<int64_t>(counter_n / 100, 1), std::max<int64_t>(counter_n / 10, 1),
                    counter_n};
    cfg.weak_grid = grid;
    cfg.seed = seed;
    cfg.prec = prec;
    cfg.parallel = parallel;
    cfg.weak_extra_t.push_back(Scalar(mpq_class(2)) - alpha);
    auto [verdict, report] = test_weak_oscillation(c, cd, cfg);

    json j;
    j["sequence"] = json{{"d", cd}, {"alpha", alpha.str()}, {"beta", beta.str()}};
    j["refutation_phase_average"] = complex_json(s);
    j["oscillation_refuted"] = std::abs(s) > cfg.epsilon;
    j["weak"] = report_to_json(report, verdict);
    j["config"] = config_echo("counterexample");
    output.emit(j, &report);
    bool refuted = std::abs(s) > cfg.epsilon || verdict.kind == VerdictKind::refuted;
    return refuted ? 2 : 0;
  }

  if (moebius_cmd->parsed()) {
    SequenceSpec c = SequenceSpec::moebius(moebius_n);
    const auto& mu = c.mu_values();
    int64_t sum = 0, c_minus = 0, c_zero = 0, c_plus = 0;
    for (int8_t v : mu) {
      sum += v;
      (v < 0 ? c_minus : v == 0 ? c_zero : c_plus) += 1;
    }
    json j;
    j["length"] = moebius_n;
    j["mertens_sum"] = sum;
    j["counts"] = json{{"minus_one", c_minus}, {"zero", c_zero}, {"plus_one", c_plus}};
    j["config"] = config_echo("moebius");
    if (!output.out_path.empty() && output.format == "csv") {
      std::ofstream csv(output.out_path + ".csv");
      csv << "n,mu\n";
      for (size_t i = 0; i < mu.size(); ++i)
        csv << (i + 1) << "," << static_cast<int>(mu[i]) << "\n";
    }
    output.emit(j);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
