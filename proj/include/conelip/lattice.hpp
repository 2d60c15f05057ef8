#pragma once

#include "conelip/vector.hpp"

namespace conelip {

/// Riesz-space operations for the coordinatewise order on R^n.
struct LatticeOps {
  Vector sup;       ///< x v y
  Vector inf;       ///< x ^ y
  Vector pos_part;  ///< x+ = x v 0
  Vector neg_part;  ///< x- = (-x) v 0
  Vector abs;       ///< |x| = x v (-x)
};

LatticeOps lattice_ops(const Vector& x, const Vector& y);

/// Worst residual of each classical lattice identity on one sample.
/// Equalities report max |lhs - rhs|; inequalities report the largest
/// violation (0 when the inequality holds). Identity (v) uses the sorted
/// triple lo <= mid <= hi built coordinatewise from (x, y, z).
struct LatticeIdentityResiduals {
  double decomposition = 0.0;  ///< (i)  x = x+ - x-, x+ ^ x- = 0, |x| = x+ + x-, |-x| = |x|
  double triangle = 0.0;       ///< (ii) ||x|-|y|| <= |x+y| <= |x|+|y|
  double abs_bound = 0.0;      ///< (iii) |x| <= a  <=>  x <= a and -x <= a, with a = |z|
  double sup_inf_abs = 0.0;    ///< (iv) |x| v |y| = (|x+y|+|x-y|)/2, |x| ^ |y| = ||x+y|-|x-y||/2
  double sandwich = 0.0;       ///< (v)  lo <= mid <= hi  =>  |mid| <= |lo| v |hi|
  bool abs_bound_equivalence = true;  ///< both sides of (iii) agree
};

LatticeIdentityResiduals lattice_identity_residuals(const Vector& x, const Vector& y, const Vector& z);

}  // namespace conelip
