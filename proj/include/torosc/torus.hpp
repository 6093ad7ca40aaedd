#pragma once

#include <vector>

#include "torosc/group.hpp"
#include "torosc/int_matrix.hpp"
#include "torosc/scalar.hpp"

namespace torosc {

enum class Mode { exact, floating };

// Point of T^d. Exact mode restricts coordinates to rationals, stored
// reduced into [0,1). Floating mode admits surd coordinates; arithmetic
// stays exact on the Scalar representation and only the rational part is
// reduced, so identities mod 1 remain decidable and numeric observation
// happens at whatever precision the caller asks for.
class TorusPoint {
 public:
  TorusPoint(int dim, Mode mode);
  TorusPoint(std::vector<Scalar> coords, Mode mode);
  static TorusPoint zero(int dim, Mode mode) { return TorusPoint(dim, mode); }

  int dim() const { return static_cast<int>(c_.size()); }
  Mode mode() const { return mode_; }
  const Scalar& coord(int i) const { return c_[i]; }
  const std::vector<Scalar>& coords() const { return c_; }
  bool is_zero_mod1() const;
  bool is_rational() const;

  TorusPoint& operator+=(const TorusPoint& o);
  friend TorusPoint operator+(TorusPoint a, const TorusPoint& b) { return a += b; }
  TorusPoint operator-() const;
  // Multiply every coordinate by an integer.
  TorusPoint scaled(const mpz_class& k) const;
  // A . x for an integer matrix of matching dimension.
  TorusPoint apply(const IntMatrix& a) const;

  // Exact equality in T^d (difference has integer rational part and no
  // irrational terms).
  bool equals_mod1(const TorusPoint& o) const;

  // <lambda, x> as an exact Scalar (not reduced).
  Scalar pairing(const std::vector<mpz_class>& lambda) const;

  std::string str() const;

 private:
  void reduce();
  std::vector<Scalar> c_;
  Mode mode_;
};

// Morphism F -> T^d given by rational images of the cyclic generators.
// Construction checks order compatibility: m_i * B(g_i) = 0 in T^d.
class TorusMorphismFromF {
 public:
  TorusMorphismFromF(FiniteAbelianGroup f, int torus_dim, std::vector<TorusPoint> gen_images);
  static TorusMorphismFromF zero(const FiniteAbelianGroup& f, int torus_dim);

  const FiniteAbelianGroup& group() const { return f_; }
  int torus_dim() const { return d_; }
  bool is_zero() const;
  const TorusPoint& generator_image(int i) const { return imgs_[i]; }

  TorusPoint apply(const GroupElement& y) const;

  // A . B (post-compose with an integer torus matrix).
  TorusMorphismFromF left_multiplied(const IntMatrix& a) const;
  // B . C (pre-compose with a group automorphism).
  TorusMorphismFromF precomposed(const GroupAutomorphism& c) const;
  TorusMorphismFromF& operator+=(const TorusMorphismFromF& o);

 private:
  TorusMorphismFromF(FiniteAbelianGroup f, int torus_dim, std::vector<TorusPoint> gen_images,
                     bool skip_checks);
  FiniteAbelianGroup f_;
  int d_;
  std::vector<TorusPoint> imgs_;
};

}  // namespace torosc
