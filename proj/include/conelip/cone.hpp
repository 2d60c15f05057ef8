#pragma once

#include <span>
#include <vector>

#include "conelip/vector.hpp"

namespace conelip {

/// Finitely generated closed convex cone C = { sum_i l_i g_i : l_i >= 0 }.
/// Induces the preorder x <=_C y  <=>  y - x in C.
class PolyCone {
 public:
  PolyCone(Eigen::Index dim, std::vector<Vector> generators);

  /// R^n_+ generated by the unit vectors.
  static PolyCone orthant(Eigen::Index dim);
  /// Planar sector cone{(1, eps), (-1, eps)}.
  static PolyCone sector(double eps);
  /// Block-diagonal product C_1 x ... x C_k.
  static PolyCone product(std::span<const PolyCone> factors);

  Eigen::Index dim() const { return dim_; }
  const std::vector<Vector>& generators() const { return generators_; }
  /// Generators as columns, each scaled to unit sup-norm.
  const Matrix& normalized_matrix() const { return columns_; }
  Matrix generator_matrix() const;

  bool operator==(const PolyCone& other) const;

  /// Coordinates coupled by shared generator supports. C is the product of
  /// the cones its blocks carry; a block without generators is {0}.
  struct Block {
    std::vector<Eigen::Index> coords;
    std::vector<Eigen::Index> gens;
  };
  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  Eigen::Index dim_;
  std::vector<Vector> generators_;
  Matrix columns_;
  std::vector<Block> blocks_;
};

struct MembershipResult {
  bool member = false;
  double residual = 0.0;   ///< ||G l - v||_inf at the best nonnegative l
  double threshold = 0.0;  ///< tol * (1 + ||v||_inf)
  Vector coefficients;     ///< l (for the normalized generators)
};

/// Decides v in C block by block: simplicial blocks by a direct solve with
/// negative coefficients clipped, others by nonnegative least squares.
/// Accepts when the residual is at most tol * (1 + ||v||_inf).
MembershipResult cone_membership(const PolyCone& cone, const Vector& v, double tol = kResidualTol);
bool cone_member(const PolyCone& cone, const Vector& v, double tol = kResidualTol);

/// x <=_C y.
bool order_le(const PolyCone& cone, const Vector& x, const Vector& y, double tol = kResidualTol);

/// lhs <=_C rhs with a signed residual: for the coordinate cone the smallest
/// coordinate of rhs - lhs, otherwise minus the membership residual. The
/// comparison holds when the membership test accepts.
struct OrderCheck {
  bool holds = false;
  double residual = 0.0;
};
OrderCheck order_check(const PolyCone& cone, const Vector& lhs, const Vector& rhs, double tol = kResidualTol);

/// C n (-C) = {0}.
bool is_pointed(const PolyCone& cone, double tol = kResidualTol);

/// [lo, hi]_o = (lo + C) n (hi - C).
class OrderInterval {
 public:
  OrderInterval(PolyCone cone, Vector lo, Vector hi);

  const PolyCone& cone() const { return cone_; }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }

  /// lo <=_C hi; otherwise the interval is empty.
  bool nonempty(double tol = kResidualTol) const;
  bool contains(const Vector& z, double tol = kResidualTol) const;

 private:
  PolyCone cone_;
  Vector lo_;
  Vector hi_;
};

/// z in (A + C) n (A - C): some a in A lies below z and some a' in A above it.
bool full_hull_member(const PolyCone& cone, std::span<const Vector> points, const Vector& z, double tol = kResidualTol);

}  // namespace conelip
