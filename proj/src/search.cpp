#include "torosc/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace torosc {

namespace {

// Deterministic uint64 -> [0,1) double; std::uniform_real_distribution is
// implementation-defined and would break cross-run reproducibility.
double unit_double(uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

struct SplitMix64 {
  uint64_t state;
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double unit() { return unit_double(next()); }
  uint64_t below(uint64_t n) { return next() % n; }
};

double wrap01(double v) {
  v -= std::floor(v);
  if (v >= 1.0) v -= 1.0;
  return v;
}

RealPoly poly_from_coeffs(const std::vector<double>& coeffs) {
  std::vector<Scalar> c(coeffs.size() + 1);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    mpq_class q(wrap01(coeffs[i]));
    q.canonicalize();
    c[i + 1] = Scalar(q);
  }
  return RealPoly(std::move(c));
}

using Objective = std::function<double(const std::vector<double>&)>;

struct Candidate {
  std::vector<double> coeffs;
  double score = 0;
};

// Nelder-Mead maximization. Objectives here are 1-periodic in every
// coordinate, so the simplex roams R^d freely and the result is wrapped.
Candidate nelder_mead(const Objective& f, std::vector<double> x0, double scale, int budget) {
  size_t d = x0.size();
  struct Vert {
    std::vector<double> x;
    double fv;
  };
  int evals = 0;
  auto call = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  std::vector<Vert> simplex;
  simplex.push_back({x0, call(x0)});
  for (size_t i = 0; i < d; ++i) {
    auto x = x0;
    x[i] += scale;
    simplex.push_back({x, call(x)});
  }
  auto best_first = [](const Vert& a, const Vert& b) { return a.fv > b.fv; };
  std::sort(simplex.begin(), simplex.end(), best_first);
  while (evals < budget) {
    const Vert worst = simplex.back();
    std::vector<double> centroid(d, 0.0);
    for (size_t i = 0; i + 1 < simplex.size(); ++i)
      for (size_t j = 0; j < d; ++j) centroid[j] += simplex[i].x[j];
    for (size_t j = 0; j < d; ++j) centroid[j] /= static_cast<double>(d);
    auto along = [&](double t) {
      std::vector<double> x(d);
      for (size_t j = 0; j < d; ++j) x[j] = centroid[j] + t * (worst.x[j] - centroid[j]);
      return x;
    };
    auto xr = along(-1.0);
    double fr = call(xr);
    if (fr > simplex[0].fv) {
      auto xe = along(-2.0);
      double fe = call(xe);
      if (fe > fr)
        simplex.back() = {xe, fe};
      else
        simplex.back() = {xr, fr};
    } else if (fr > simplex[simplex.size() - 2].fv) {
      simplex.back() = {xr, fr};
    } else {
      auto xc = along(0.5);
      double fc = call(xc);
      if (fc > worst.fv) {
        simplex.back() = {xc, fc};
      } else {
        for (size_t i = 1; i < simplex.size(); ++i) {
          for (size_t j = 0; j < d; ++j)
            simplex[i].x[j] = simplex[0].x[j] + 0.5 * (simplex[i].x[j] - simplex[0].x[j]);
          simplex[i].fv = call(simplex[i].x);
        }
      }
    }
    std::sort(simplex.begin(), simplex.end(), best_first);
  }
  std::vector<double> best(d);
  for (size_t j = 0; j < d; ++j) best[j] = wrap01(simplex[0].x[j]);
  return {best, simplex[0].fv};
}

std::string format_coeffs(const std::vector<double>& c) {
  std::string s = "[";
  char buf[40];
  for (size_t i = 0; i < c.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", c[i]);
    s += (i ? "," : "");
    s += buf;
  }
  return s + "]";
}

// Secondary screening length: shares no small kernel-zero structure with n0,
// so a peak masked by a Dirichlet zero at one length shows up at the other.
int64_t secondary_length(int64_t n0) { return n0 + std::max<int64_t>(n0 / 4 + 37, 41); }

}  // namespace

double witness_abs(const SequenceSpec& c, const std::vector<double>& coeffs, int64_t n,
                   const OscConfig& cfg) {
  SumOptions opts{cfg.parallel, cfg.chunks, cfg.prec, false};
  return std::abs(weighted_sum(c, poly_from_coeffs(coeffs), n, opts)) / static_cast<double>(n);
}

std::pair<OscillationVerdict, AverageReport> test_oscillation(const SequenceSpec& c, int d,
                                                              const OscConfig& cfg) {
  if (d < 1) throw std::invalid_argument("test_oscillation: d must be >= 1");
  if (cfg.schedule.empty()) throw std::invalid_argument("test_oscillation: empty N schedule");
  if (cfg.samples < 1 || cfg.top_k < 1)
    throw std::invalid_argument("test_oscillation: samples and top_k must be >= 1");
  SumOptions opts{cfg.parallel, cfg.chunks, cfg.prec, false};
  auto sum_at = [&](const std::vector<double>& coeffs, int64_t n) {
    return weighted_sum(c, poly_from_coeffs(coeffs), n, opts);
  };
  auto abs_at = [&](const std::vector<double>& coeffs, int64_t n) {
    return std::abs(sum_at(coeffs, n)) / static_cast<double>(n);
  };

  AverageReport report;
  report.schedule = cfg.schedule;
  report.config = cfg;

  int64_t n0 = cfg.schedule.front();
  int64_t n0b = secondary_length(n0);
  SplitMix64 rng{cfg.seed ^ 0x6f346c0d2f8cull};

  // Stage 1: Latin-hypercube samples over the coefficient torus [0,1)^d,
  // scored by the larger of two screening lengths.
  std::vector<std::vector<uint32_t>> perms(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    auto& perm = perms[static_cast<size_t>(j)];
    perm.resize(static_cast<size_t>(cfg.samples));
    std::iota(perm.begin(), perm.end(), 0u);
    for (size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  std::vector<Candidate> cands;
  cands.reserve(static_cast<size_t>(cfg.samples));
  for (int s = 0; s < cfg.samples; ++s) {
    std::vector<double> x(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j)
      x[static_cast<size_t>(j)] =
          (static_cast<double>(perms[static_cast<size_t>(j)][static_cast<size_t>(s)]) +
           rng.unit()) /
          static_cast<double>(cfg.samples);
    std::complex<double> s1 = sum_at(x, n0) / static_cast<double>(n0);
    double f1 = std::abs(s1);
    double f2 = abs_at(x, n0b);
    report.rows.push_back({n0, "sample:" + std::to_string(s), x, s1, f1});
    cands.push_back({std::move(x), std::max(f1, f2)});
  }
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  cands.resize(std::min<size_t>(static_cast<size_t>(cfg.top_k), cands.size()));

  // Refinement cascade along the schedule; the surviving set shrinks.
  for (size_t stage = 0; stage < cfg.schedule.size(); ++stage) {
    int64_t n = cfg.schedule[stage];
    unsigned shift = static_cast<unsigned>(std::min<size_t>(stage, 8));
    int budget = std::max(cfg.refine_budget >> shift, 24);
    size_t keep = std::max<size_t>(1, static_cast<size_t>(cfg.top_k) >> std::min<size_t>(2 * stage, 16));
    cands.resize(std::min(keep, cands.size()));
    double scale = stage == 0 ? 1.0 / (2.0 * static_cast<double>(cfg.samples))
                              : 0.5 / static_cast<double>(cfg.schedule[stage - 1]);
    Objective obj = [&](const std::vector<double>& x) { return abs_at(x, n); };
    for (auto& cand : cands) cand = nelder_mead(obj, cand.coeffs, scale, budget);
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
    report.sup_trajectory.push_back(cands[0].score);
    report.rows.push_back({n, "refine:stage" + std::to_string(stage), cands[0].coeffs,
                           sum_at(cands[0].coeffs, n) / static_cast<double>(n),
                           cands[0].score});
  }

  int64_t n_max = cfg.schedule.back();
  OscillationVerdict verdict;
  verdict.order = d;
  verdict.sup = cands[0].score;
  verdict.n_max = n_max;
  if (cands[0].score > cfg.epsilon) {
    verdict.kind = VerdictKind::refuted;
    verdict.witness = PhaseWitness{cands[0].coeffs, -1, std::nullopt, cands[0].score, n_max};
    report.rows.push_back(
        {n_max, "witness:" + format_coeffs(cands[0].coeffs), cands[0].coeffs,
         sum_at(cands[0].coeffs, n_max) / static_cast<double>(n_max), cands[0].score});
  }
  report.verdict_str =
      verdict.kind == VerdictKind::refuted ? "refuted" : "consistent-with-oscillating";
  return {verdict, report};
}

std::pair<OscillationVerdict, AverageReport> test_weak_oscillation(const SequenceSpec& c, int d,
                                                                   const OscConfig& cfg) {
  if (d < 1) throw std::invalid_argument("test_weak_oscillation: d must be >= 1");
  if (cfg.schedule.empty()) throw std::invalid_argument("test_weak_oscillation: empty N schedule");
  if (cfg.weak_grid < 1) throw std::invalid_argument("test_weak_oscillation: grid must be >= 1");
  AverageReport report;
  report.schedule = cfg.schedule;
  report.config = cfg;
  int64_t n_max = cfg.schedule.back();
  SumOptions opts{cfg.parallel, cfg.chunks, cfg.prec, false};

  OscillationVerdict verdict;
  verdict.order = d;
  verdict.n_max = n_max;

  for (int k = 0; k <= d; ++k) {
    std::vector<Scalar> grid;
    grid.reserve(static_cast<size_t>(cfg.weak_grid) + cfg.weak_extra_t.size());
    for (int j = 0; j < cfg.weak_grid; ++j)
      grid.emplace_back(mpq_class(j, static_cast<unsigned long>(cfg.weak_grid)));
    for (const auto& t : cfg.weak_extra_t) grid.push_back(t);

    int64_t n0 = cfg.schedule.front();
    int64_t n0b = secondary_length(n0);
    double grid_sup_at_nmax = 0;
    double best_score = -1;
    double best_t = 0;
    for (const Scalar& t : grid) {
      RealPoly phase = RealPoly::monomial(t, k);
      double score = 0;
      for (int64_t n : cfg.schedule) {
        std::complex<double> s =
            weighted_sum(c, phase, n, opts) / static_cast<double>(n);
        double a = std::abs(s);
        report.rows.push_back(
            {n, "grid:k=" + std::to_string(k) + ":t=" + t.str(), {t.to_double()}, s, a});
        if (n == n_max) grid_sup_at_nmax = std::max(grid_sup_at_nmax, a);
        if (n == n0) score = a;
      }
      score = std::max(score, std::abs(weighted_sum(c, phase, n0b, opts)) /
                                  static_cast<double>(n0b));
      if (score > best_score) {
        best_score = score;
        best_t = t.to_double();
      }
    }
    report.grid_sup.emplace_back(k, grid_sup_at_nmax);

    if (k == 0) {
      // e^{2 pi i t} is constant over n: |S_N| does not depend on t
      if (grid_sup_at_nmax > verdict.sup) verdict.sup = grid_sup_at_nmax;
      if (grid_sup_at_nmax > cfg.epsilon &&
          (!verdict.witness || grid_sup_at_nmax > verdict.witness->abs_s)) {
        verdict.kind = VerdictKind::refuted;
        verdict.witness = PhaseWitness{{0.0}, 0, Scalar(), grid_sup_at_nmax, n_max};
      }
      continue;
    }

    // 1-d refinement cascade over t for the monomial n^k t
    double cur_t = best_t;
    double cur_f = best_score;
    for (size_t stage = 0; stage < cfg.schedule.size(); ++stage) {
      int64_t n = cfg.schedule[stage];
      unsigned shift = static_cast<unsigned>(std::min<size_t>(stage, 8));
      int budget = std::max(cfg.refine_budget >> shift, 24);
      double scale = stage == 0 ? 0.5 / static_cast<double>(cfg.weak_grid)
                                : 0.5 / static_cast<double>(cfg.schedule[stage - 1]);
      Objective obj = [&](const std::vector<double>& x) {
        std::vector<Scalar> coeffs(static_cast<size_t>(k) + 1);
        mpq_class q(wrap01(x[0]));
        q.canonicalize();
        coeffs[static_cast<size_t>(k)] = Scalar(q);
        return std::abs(weighted_sum(c, RealPoly(std::move(coeffs)), n, opts)) /
               static_cast<double>(n);
      };
      Candidate cand = nelder_mead(obj, {cur_t}, scale, budget);
      cur_t = cand.coeffs[0];
      cur_f = cand.score;
      std::vector<Scalar> rc(static_cast<size_t>(k) + 1);
      mpq_class rq(wrap01(cur_t));
      rq.canonicalize();
      rc[static_cast<size_t>(k)] = Scalar(rq);
      std::complex<double> ravg =
          weighted_sum(c, RealPoly(std::move(rc)), n, opts) / static_cast<double>(n);
      report.rows.push_back({n, "refine:k=" + std::to_string(k), {cur_t}, ravg, cur_f});
    }
    if (cur_f > verdict.sup) verdict.sup = cur_f;
    if (cur_f > cfg.epsilon && (!verdict.witness || cur_f > verdict.witness->abs_s)) {
      verdict.kind = VerdictKind::refuted;
      verdict.witness = PhaseWitness{{cur_t}, k, std::nullopt, cur_f, n_max};
    }
  }

  for (int64_t n : cfg.schedule) {
    double best = 0;
    for (const auto& row : report.rows)
      if (row.n == n) best = std::max(best, row.abs_s);
    report.sup_trajectory.push_back(best);
  }
  report.verdict_str =
      verdict.kind == VerdictKind::refuted ? "refuted" : "consistent-with-weakly-oscillating";
  return {verdict, report};
}

}  // namespace torosc
