#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace torosc {

using GroupElement = std::vector<int64_t>;  // residue vector, one per cyclic factor

// Z_{m1} x ... x Z_{mr}, elements as residue vectors. A factor with m_i = 1
// is allowed (trivial); the whole group is trivial when all moduli are 1.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<int64_t> moduli);
  static FiniteAbelianGroup trivial() { return FiniteAbelianGroup({1}); }

  int rank() const { return static_cast<int>(moduli_.size()); }
  int64_t modulus(int i) const { return moduli_[i]; }
  const std::vector<int64_t>& moduli() const { return moduli_; }
  int64_t order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  GroupElement zero() const { return GroupElement(moduli_.size(), 0); }
  GroupElement reduce(GroupElement e) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement scale(const GroupElement& a, int64_t k) const;
  // Order of the element in the group.
  int64_t element_order(const GroupElement& a) const;

  // Enumeration index <-> element (row-major over residues).
  int64_t index_of(const GroupElement& e) const;
  GroupElement element_at(int64_t idx) const;

  bool operator==(const FiniteAbelianGroup& o) const { return moduli_ == o.moduli_; }

 private:
  std::vector<int64_t> moduli_;
  int64_t order_;
};

// Automorphism of a finite abelian group, given by an integer matrix acting
// on residue vectors: (Cy)_i = sum_j c_ij y_j mod m_i. Construction checks
// well-definedness (m_j c_ij = 0 mod m_i) and bijectivity (exhaustive, desk
// scale).
class GroupAutomorphism {
 public:
  GroupAutomorphism(FiniteAbelianGroup f, std::vector<int64_t> matrix);
  static GroupAutomorphism identity(const FiniteAbelianGroup& f);

  const FiniteAbelianGroup& group() const { return f_; }
  int64_t entry(int i, int j) const { return mat_[static_cast<size_t>(i) * f_.rank() + j]; }

  GroupElement apply(const GroupElement& y) const;
  GroupAutomorphism compose(const GroupAutomorphism& o) const;  // this after o
  GroupAutomorphism pow(uint64_t n) const;
  bool is_identity() const;
  // Multiplicative order (lcm of permutation cycle lengths).
  uint64_t order() const;

 private:
  GroupAutomorphism(FiniteAbelianGroup f, std::vector<int64_t> matrix, bool skip_checks);
  void validate() const;
  FiniteAbelianGroup f_;
  std::vector<int64_t> mat_;
};

}  // namespace torosc
