#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>

#include "torosc/exact_linalg.hpp"
#include "torosc/torus.hpp"

namespace torosc {

struct PositiveEntropyError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ProductPoint {
  TorusPoint x;
  GroupElement y;
};

// Coefficients of T^j(x,y) = (A^j x + B_j y + a_j, C^j y + b_j).
struct SkewCoeffs {
  TorusPoint a_j;
  GroupElement b_j;
  TorusMorphismFromF big_b_j;
};

struct SkewPeriod {
  mpz_class q_factorial;                    // #F! * d
  uint64_t q_min = 1;                   // lcm(ord C, m); used by all downstream computation
  IntMatrix m_matrix = IntMatrix(1);    // A^{q_min} - I, nilpotent of index <= d
};

enum class HMode { direct, closed };

// T(x,y) = (Ax + By + a, Cy + b) on T^d x F. Immutable after construction;
// derived data (classification, period machinery, coefficient prefixes) is
// computed once behind initialize-once guards, so concurrent queries are
// safe.
class AffineSkewMap {
 public:
  AffineSkewMap(IntMatrix a_mat, TorusMorphismFromF b_mor, GroupAutomorphism c_aut,
                TorusPoint a_trans, GroupElement b_trans);

  // Pure torus affine map x -> Ax + t (trivial fiber).
  static AffineSkewMap torus_affine(IntMatrix a_mat, TorusPoint translation);

  int torus_dim() const { return a_mat_.dim(); }
  const FiniteAbelianGroup& group() const { return c_aut_.group(); }
  const IntMatrix& a_matrix() const { return a_mat_; }
  const TorusMorphismFromF& b_morphism() const { return b_mor_; }
  const GroupAutomorphism& c_automorphism() const { return c_aut_; }
  const TorusPoint& translation() const { return a_trans_; }
  const GroupElement& fiber_translation() const { return b_trans_; }
  Mode mode() const { return a_trans_.mode(); }

  ProductPoint start(TorusPoint x, GroupElement y) const;

  // n-fold application; exact on the Scalar representation.
  ProductPoint iterate(const ProductPoint& p, uint64_t n) const;

  // Closed-form T^n x for the torus factor, valid when A is quasi-unipotent
  // of type (m,l) and the map has no fiber coupling (B = 0). Writes
  // n = qm + p with 1 <= p <= m and evaluates
  //   T^n x = sum_{k<l} ( C_q^k N^k A^p x + C_q^{k+1} N^k b* + C_q^k N^k b_p )
  // with b* = sum_{k=0}^{m-1} A^k a and b_p = sum_{k=0}^{p-1} A^k a.
  TorusPoint closed_orbit(const TorusPoint& x, uint64_t n) const;

  // Coefficients of T^j via the recursion
  //   a_{j+1} = A a_j + a + B b_j,  b_{j+1} = C b_j + b,  B_{j+1} = A B_j + B C^j.
  SkewCoeffs skew_coeffs(uint64_t j) const;

  // Throws PositiveEntropyError when A is not zero entropy.
  SkewPeriod skew_period() const;

  // H_n: the x-drift of T^{nq}. direct evaluates sum_{i=1}^{n-1} i A^{q(n-i-1)} B_q b_q,
  // closed evaluates sum_{k<d} C_n^{k+2} M^k B_q b_q. Both are exact and equal.
  TorusPoint h_term(uint64_t n, HMode mode) const;

  // T^{nq+j}(x,y) = (F_{y_j}^n(x_j) + H_n, G^n(y_j)) with q = q_min,
  // F_y(x) = A^q x + B_q y + a_q and G(y) = y + b_q.
  ProductPoint power_decomposition(const ProductPoint& p, uint64_t n, uint64_t j) const;

  // Quasi-unipotent certificate of A; throws PositiveEntropyError otherwise.
  const QuasiUnipotentType& type() const;
  const IntMatrix& nilpotent_power(int k) const;  // N^k, 0 <= k <= l-1
  const TorusPoint& b_star() const;               // sum_{k<m} A^k a
  const TorusPoint& b_prefix(uint64_t p) const;   // sum_{k<p} A^k a, 1 <= p <= m

 private:
  struct PeriodData {
    mpz_class q_factorial;
    uint64_t q_min = 1;
    IntMatrix m_matrix = IntMatrix(1);
    IntMatrix a_pow_q = IntMatrix(1);
    std::vector<IntMatrix> m_pows;
    TorusPoint a_q = TorusPoint(1, Mode::exact);
    GroupElement b_q;
    TorusMorphismFromF big_b_q = TorusMorphismFromF::zero(FiniteAbelianGroup::trivial(), 1);
    TorusPoint v = TorusPoint(1, Mode::exact);  // B_q b_q
  };
  // Derived data lives behind a shared block so maps stay value-semantic;
  // copies of a map share the same initialize-once caches.
  struct Caches {
    std::once_flag classify_flag;
    std::optional<QuasiUnipotentType> type;
    std::vector<IntMatrix> n_pows;
    std::vector<TorusPoint> b_prefix;  // index p-1 holds b_p; last entry is b*

    std::once_flag period_flag;
    std::optional<PeriodData> period;

    std::mutex coeff_mutex;
    std::vector<SkewCoeffs> coeff_cache;
    std::optional<GroupAutomorphism> coeff_cpow;  // C^j for the next cache step
  };

  void ensure_classified() const;
  const PeriodData& period_data() const;

  IntMatrix a_mat_;
  TorusMorphismFromF b_mor_;
  GroupAutomorphism c_aut_;
  TorusPoint a_trans_;
  GroupElement b_trans_;
  std::shared_ptr<Caches> cache_;
};

// Validated construction; distinct errors for non-automorphism A,
// non-invertible C, and morphism order violations surface from the
// component constructors and the |det| check here.
AffineSkewMap make_skew(IntMatrix a_mat, TorusMorphismFromF b_mor, GroupAutomorphism c_aut,
                        TorusPoint a_trans, GroupElement b_trans);

}  // namespace torosc
