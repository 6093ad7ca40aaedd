#include "torosc/group.hpp"

#include <numeric>

namespace torosc {

namespace {

int64_t mod_pos(int64_t v, int64_t m) {
  int64_t r = v % m;
  return r < 0 ? r + m : r;
}

constexpr int64_t kEnumerationLimit = 1'000'000;

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int64_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw std::invalid_argument("group: moduli list must be nonempty");
  order_ = 1;
  for (int64_t m : moduli_) {
    if (m < 1) throw std::invalid_argument("group: moduli must be >= 1");
    if (order_ > kEnumerationLimit / m)
      throw std::invalid_argument("group: order exceeds supported scale");
    order_ *= m;
  }
}

GroupElement FiniteAbelianGroup::reduce(GroupElement e) const {
  if (e.size() != moduli_.size()) throw std::invalid_argument("group: element rank mismatch");
  for (size_t i = 0; i < e.size(); ++i) e[i] = mod_pos(e[i], moduli_[i]);
  return e;
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement r(moduli_.size());
  for (size_t i = 0; i < moduli_.size(); ++i) r[i] = mod_pos(a[i] + b[i], moduli_[i]);
  return r;
}

GroupElement FiniteAbelianGroup::scale(const GroupElement& a, int64_t k) const {
  GroupElement r(moduli_.size());
  for (size_t i = 0; i < moduli_.size(); ++i)
    r[i] = mod_pos(mod_pos(k, moduli_[i]) * a[i], moduli_[i]);
  return r;
}

int64_t FiniteAbelianGroup::element_order(const GroupElement& a) const {
  int64_t ord = 1;
  for (size_t i = 0; i < moduli_.size(); ++i) {
    int64_t oi = moduli_[i] / std::gcd(moduli_[i], a[i] == 0 ? moduli_[i] : a[i]);
    ord = std::lcm(ord, oi);
  }
  return ord;
}

int64_t FiniteAbelianGroup::index_of(const GroupElement& e) const {
  int64_t idx = 0;
  for (size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + e[i];
  return idx;
}

GroupElement FiniteAbelianGroup::element_at(int64_t idx) const {
  GroupElement e(moduli_.size());
  for (size_t i = moduli_.size(); i-- > 0;) {
    e[i] = idx % moduli_[i];
    idx /= moduli_[i];
  }
  return e;
}

GroupAutomorphism::GroupAutomorphism(FiniteAbelianGroup f, std::vector<int64_t> matrix)
    : f_(std::move(f)), mat_(std::move(matrix)) {
  size_t r = static_cast<size_t>(f_.rank());
  if (mat_.size() != r * r)
    throw std::invalid_argument("automorphism: matrix size does not match group rank");
  validate();
}

GroupAutomorphism::GroupAutomorphism(FiniteAbelianGroup f, std::vector<int64_t> matrix, bool)
    : f_(std::move(f)), mat_(std::move(matrix)) {}

GroupAutomorphism GroupAutomorphism::identity(const FiniteAbelianGroup& f) {
  int r = f.rank();
  std::vector<int64_t> m(static_cast<size_t>(r) * r, 0);
  for (int i = 0; i < r; ++i) m[static_cast<size_t>(i) * r + i] = 1;
  return GroupAutomorphism(f, std::move(m), true);
}

void GroupAutomorphism::validate() const {
  int r = f_.rank();
  // well-definedness on the quotient: m_j * c_ij = 0 mod m_i
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      __int128 v = static_cast<__int128>(entry(i, j)) * f_.modulus(j);
      if (v % f_.modulus(i) != 0)
        throw std::invalid_argument("automorphism: entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is not well-defined on the quotient");
    }
  // bijectivity, exhaustively
  std::vector<char> hit(static_cast<size_t>(f_.order()), 0);
  for (int64_t idx = 0; idx < f_.order(); ++idx) {
    int64_t img = f_.index_of(apply(f_.element_at(idx)));
    if (hit[img])
      throw std::invalid_argument("automorphism: matrix is not invertible on the group");
    hit[img] = 1;
  }
}

GroupElement GroupAutomorphism::apply(const GroupElement& y) const {
  int r = f_.rank();
  GroupElement out(r);
  for (int i = 0; i < r; ++i) {
    __int128 acc = 0;
    for (int j = 0; j < r; ++j) acc += static_cast<__int128>(entry(i, j)) * y[j];
    int64_t m = f_.modulus(i);
    int64_t v = static_cast<int64_t>(acc % m);
    out[i] = v < 0 ? v + m : v;
  }
  return out;
}

GroupAutomorphism GroupAutomorphism::compose(const GroupAutomorphism& o) const {
  int r = f_.rank();
  std::vector<int64_t> m(static_cast<size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      __int128 acc = 0;
      for (int k = 0; k < r; ++k) acc += static_cast<__int128>(entry(i, k)) * o.entry(k, j);
      int64_t mi = f_.modulus(i);
      int64_t v = static_cast<int64_t>(acc % mi);
      m[static_cast<size_t>(i) * r + j] = v < 0 ? v + mi : v;
    }
  return GroupAutomorphism(f_, std::move(m), true);
}

GroupAutomorphism GroupAutomorphism::pow(uint64_t n) const {
  GroupAutomorphism result = identity(f_);
  GroupAutomorphism base = *this;
  while (n > 0) {
    if (n & 1) result = result.compose(base);
    n >>= 1;
    if (n) base = base.compose(base);
  }
  return result;
}

bool GroupAutomorphism::is_identity() const {
  int r = f_.rank();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      int64_t want = (i == j) ? 1 % f_.modulus(i) : 0;
      if (mod_pos(entry(i, j), f_.modulus(i)) != want) return false;
    }
  return true;
}

uint64_t GroupAutomorphism::order() const {
  std::vector<char> seen(static_cast<size_t>(f_.order()), 0);
  uint64_t ord = 1;
  for (int64_t start = 0; start < f_.order(); ++start) {
    if (seen[start]) continue;
    uint64_t len = 0;
    int64_t cur = start;
    do {
      seen[cur] = 1;
      cur = f_.index_of(apply(f_.element_at(cur)));
      ++len;
    } while (cur != start);
    ord = std::lcm(ord, len);
  }
  return ord;
}

}  // namespace torosc
