#include "torosc/skew.hpp"

#include <numeric>

namespace torosc {

AffineSkewMap::AffineSkewMap(IntMatrix a_mat, TorusMorphismFromF b_mor, GroupAutomorphism c_aut,
                             TorusPoint a_trans, GroupElement b_trans)
    : a_mat_(std::move(a_mat)),
      b_mor_(std::move(b_mor)),
      c_aut_(std::move(c_aut)),
      a_trans_(std::move(a_trans)),
      b_trans_(std::move(b_trans)),
      cache_(std::make_shared<Caches>()) {
  mpz_class d = a_mat_.det();
  if (d != 1 && d != -1)
    throw NotAutomorphismError("skew map: A has |det| != 1, not a torus automorphism");
  if (b_mor_.torus_dim() != a_mat_.dim())
    throw std::invalid_argument("skew map: morphism torus dimension mismatch");
  if (!(b_mor_.group() == c_aut_.group()))
    throw std::invalid_argument("skew map: B and C act on different groups");
  if (a_trans_.dim() != a_mat_.dim())
    throw std::invalid_argument("skew map: translation dimension mismatch");
  if (b_trans_.size() != static_cast<size_t>(c_aut_.group().rank()))
    throw std::invalid_argument("skew map: fiber translation rank mismatch");
  b_trans_ = c_aut_.group().reduce(b_trans_);
}

AffineSkewMap make_skew(IntMatrix a_mat, TorusMorphismFromF b_mor, GroupAutomorphism c_aut,
                        TorusPoint a_trans, GroupElement b_trans) {
  return AffineSkewMap(std::move(a_mat), std::move(b_mor), std::move(c_aut), std::move(a_trans),
                       std::move(b_trans));
}

AffineSkewMap AffineSkewMap::torus_affine(IntMatrix a_mat, TorusPoint translation) {
  auto f = FiniteAbelianGroup::trivial();
  int d = a_mat.dim();
  return AffineSkewMap(std::move(a_mat), TorusMorphismFromF::zero(f, d),
                       GroupAutomorphism::identity(f), std::move(translation), f.zero());
}

ProductPoint AffineSkewMap::start(TorusPoint x, GroupElement y) const {
  if (x.dim() != torus_dim()) throw std::invalid_argument("skew map: start point dimension");
  return {std::move(x), group().reduce(std::move(y))};
}

ProductPoint AffineSkewMap::iterate(const ProductPoint& p, uint64_t n) const {
  TorusPoint x = p.x;
  GroupElement y = p.y;
  for (uint64_t i = 0; i < n; ++i) {
    TorusPoint nx = x.apply(a_mat_);
    if (!b_mor_.is_zero()) nx += b_mor_.apply(y);
    nx += a_trans_;
    x = std::move(nx);
    y = group().add(c_aut_.apply(y), b_trans_);
  }
  return {std::move(x), std::move(y)};
}

void AffineSkewMap::ensure_classified() const {
  std::call_once(cache_->classify_flag, [&] {
    cache_->type = classify_zero_entropy(a_mat_);
    if (!cache_->type) return;
    cache_->n_pows.clear();
    cache_->n_pows.push_back(IntMatrix::identity(a_mat_.dim()));
    for (int k = 1; k < cache_->type->l; ++k)
      cache_->n_pows.push_back(cache_->n_pows.back() * cache_->type->nilpotent_part);
    // cache_->b_prefix[p-1] = sum_{k=0}^{p-1} A^k a ; the last entry (p = m) is b*
    cache_->b_prefix.clear();
    TorusPoint acc = a_trans_;
    TorusPoint apow_a = a_trans_;
    cache_->b_prefix.push_back(acc);
    for (uint64_t p = 2; p <= cache_->type->m; ++p) {
      apow_a = apow_a.apply(a_mat_);
      acc += apow_a;
      cache_->b_prefix.push_back(acc);
    }
  });
}

const QuasiUnipotentType& AffineSkewMap::type() const {
  ensure_classified();
  if (!cache_->type)
    throw PositiveEntropyError("skew map: A has positive entropy, no quasi-unipotent type");
  return *cache_->type;
}

const IntMatrix& AffineSkewMap::nilpotent_power(int k) const {
  const auto& t = type();
  if (k < 0 || k >= t.l) throw std::out_of_range("skew map: nilpotent power index");
  return cache_->n_pows[static_cast<size_t>(k)];
}

const TorusPoint& AffineSkewMap::b_star() const {
  type();
  return cache_->b_prefix.back();
}

const TorusPoint& AffineSkewMap::b_prefix(uint64_t p) const {
  const auto& t = type();
  if (p < 1 || p > t.m) throw std::out_of_range("skew map: b_p index must be in [1, m]");
  return cache_->b_prefix[static_cast<size_t>(p - 1)];
}

TorusPoint AffineSkewMap::closed_orbit(const TorusPoint& x, uint64_t n) const {
  if (!b_mor_.is_zero())
    throw std::invalid_argument("closed_orbit: map couples the fiber (B != 0)");
  const auto& t = type();
  if (n < static_cast<uint64_t>(t.l))
    throw std::invalid_argument("closed_orbit: n must be >= l = " + std::to_string(t.l));
  uint64_t q = (n - 1) / t.m;
  uint64_t p = n - q * t.m;  // 1 <= p <= m

  TorusPoint apx = x;
  for (uint64_t i = 0; i < p; ++i) apx = apx.apply(a_mat_);

  TorusPoint acc = TorusPoint::zero(torus_dim(), x.mode());
  for (int k = 0; k < t.l; ++k) {
    const IntMatrix& nk = cache_->n_pows[static_cast<size_t>(k)];
    mpz_class cqk = binom(q, static_cast<unsigned long>(k));
    mpz_class cqk1 = binom(q, static_cast<unsigned long>(k) + 1);
    acc += apx.apply(nk).scaled(cqk);
    acc += b_star().apply(nk).scaled(cqk1);
    acc += b_prefix(p).apply(nk).scaled(cqk);
  }
  return acc;
}

SkewCoeffs AffineSkewMap::skew_coeffs(uint64_t j) const {
  std::lock_guard<std::mutex> lock(cache_->coeff_mutex);
  if (cache_->coeff_cache.empty()) {
    cache_->coeff_cache.push_back({TorusPoint::zero(torus_dim(), Mode::exact), group().zero(),
                            TorusMorphismFromF::zero(group(), torus_dim())});
    cache_->coeff_cpow = GroupAutomorphism::identity(group());
  }
  while (cache_->coeff_cache.size() <= j) {
    const SkewCoeffs& prev = cache_->coeff_cache.back();
    TorusPoint a_next = prev.a_j.apply(a_mat_);
    a_next += a_trans_;
    if (!b_mor_.is_zero()) a_next += b_mor_.apply(prev.b_j);
    GroupElement b_next = group().add(c_aut_.apply(prev.b_j), b_trans_);
    TorusMorphismFromF bb_next = prev.big_b_j.left_multiplied(a_mat_);
    bb_next += b_mor_.precomposed(*cache_->coeff_cpow);
    cache_->coeff_cache.push_back({std::move(a_next), std::move(b_next), std::move(bb_next)});
    cache_->coeff_cpow = cache_->coeff_cpow->compose(c_aut_);
  }
  return cache_->coeff_cache[static_cast<size_t>(j)];
}

const AffineSkewMap::PeriodData& AffineSkewMap::period_data() const {
  std::call_once(cache_->period_flag, [&] {
    const auto& t = type();  // throws on positive entropy
    PeriodData pd;
    uint64_t ord_c = c_aut_.order();
    pd.q_min = std::lcm(ord_c, t.m);
    mpz_fac_ui(pd.q_factorial.get_mpz_t(), static_cast<unsigned long>(group().order()));
    pd.q_factorial *= torus_dim();
    pd.a_pow_q = mat_pow(a_mat_, pd.q_min);
    pd.m_matrix = pd.a_pow_q - IntMatrix::identity(torus_dim());
    auto idx = nilpotency_index(pd.m_matrix);
    if (!idx || *idx > torus_dim())
      throw std::logic_error("skew map: A^q - I failed the nilpotency certificate");
    if (!c_aut_.pow(pd.q_min).is_identity())
      throw std::logic_error("skew map: C^q != I, period certificate failed");
    pd.m_pows.push_back(IntMatrix::identity(torus_dim()));
    for (int k = 1; k < torus_dim(); ++k) pd.m_pows.push_back(pd.m_pows.back() * pd.m_matrix);
    SkewCoeffs cq = skew_coeffs(pd.q_min);
    pd.a_q = cq.a_j;
    pd.b_q = cq.b_j;
    pd.big_b_q = cq.big_b_j;
    pd.v = pd.big_b_q.apply(pd.b_q);
    cache_->period = std::move(pd);
  });
  return *cache_->period;
}

SkewPeriod AffineSkewMap::skew_period() const {
  const auto& pd = period_data();
  return {pd.q_factorial, pd.q_min, pd.m_matrix};
}

TorusPoint AffineSkewMap::h_term(uint64_t n, HMode mode) const {
  const auto& pd = period_data();
  if (n <= 1) return TorusPoint::zero(torus_dim(), Mode::exact);
  if (mode == HMode::direct) {
    // sum_{j=0}^{n-2} (n-1-j) (A^q)^j v
    TorusPoint acc = TorusPoint::zero(torus_dim(), Mode::exact);
    TorusPoint w = pd.v;
    for (uint64_t j = 0; j + 1 < n; ++j) {
      acc += w.scaled(mpz_class(static_cast<unsigned long>(n - 1 - j)));
      if (j + 2 < n) w = w.apply(pd.a_pow_q);
    }
    return acc;
  }
  TorusPoint acc = TorusPoint::zero(torus_dim(), Mode::exact);
  for (int k = 0; k < torus_dim(); ++k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), n, static_cast<unsigned long>(k) + 2);
    acc += pd.v.apply(pd.m_pows[static_cast<size_t>(k)]).scaled(c);
  }
  return acc;
}

ProductPoint AffineSkewMap::power_decomposition(const ProductPoint& p, uint64_t n,
                                                uint64_t j) const {
  const auto& pd = period_data();
  if (j >= pd.q_min)
    throw std::invalid_argument("power_decomposition: j must be in [0, q-1]");
  if (n < 1) throw std::invalid_argument("power_decomposition: n must be >= 1");
  ProductPoint pj = iterate(p, j);
  TorusPoint c = pd.big_b_q.apply(pj.y);
  c += pd.a_q;
  TorusPoint x = pj.x;
  for (uint64_t i = 0; i < n; ++i) {
    x = x.apply(pd.a_pow_q);
    x += c;
  }
  x += h_term(n, HMode::closed);
  GroupElement y = group().add(pj.y, group().scale(pd.b_q, static_cast<int64_t>(n)));
  return {std::move(x), std::move(y)};
}

}  // namespace torosc
