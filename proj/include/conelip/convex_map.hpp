#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "conelip/cone.hpp"
#include "conelip/domain.hpp"
#include "conelip/vector.hpp"

namespace conelip {

class ConvexMap;

struct AffinePiece {
  Vector weight;
  double offset = 0.0;
};

/// Output i is max_j (a_ij . x + b_ij).
struct MaxAffineBody {
  std::vector<std::vector<AffinePiece>> outputs;
};

/// Output i is x' Q_i x + c_i . x + d_i with Q_i symmetric PSD.
struct QuadraticOutput {
  Matrix Q;
  Vector c;
  double d = 0.0;
};
struct QuadraticBody {
  std::vector<QuadraticOutput> outputs;
};

/// phi(functional . x) for a piecewise-affine path phi through the points
/// (breakpoints[k], values[k]); affine extension of the end segments outside.
struct PathBody {
  Vector functional;
  std::vector<double> breakpoints;
  std::vector<Vector> values;
};

/// Outputs of the parts stacked in order; target cone is the product.
struct CompositeBody {
  std::vector<std::shared_ptr<const ConvexMap>> parts;
};

using MapBody = std::variant<MaxAffineBody, QuadraticBody, PathBody, CompositeBody>;

/// Evaluable map f : Omega -> Y with Y ordered by a polyhedral cone.
///
/// Max-affine and PSD-quadratic bodies are convex by construction (for the
/// coordinate cone). A path is C-convex iff its consecutive slopes are
/// C-increasing, which is checked at construction and reported by
/// convexity_verified() rather than enforced.
class ConvexMap {
 public:
  /// target_cone defaults to the coordinate cone (product of parts for composites).
  ConvexMap(MapBody body, Domain domain, std::optional<PolyCone> target_cone = std::nullopt);

  static ConvexMap max_affine(std::vector<std::vector<AffinePiece>> outputs, Domain domain);
  static ConvexMap quadratic(std::vector<QuadraticOutput> outputs, Domain domain);
  static ConvexMap path(std::vector<double> breakpoints, std::vector<Vector> values, Domain domain,
                        std::optional<PolyCone> target_cone = std::nullopt, std::optional<Vector> functional = std::nullopt);
  static ConvexMap composite(std::vector<ConvexMap> parts);

  /// The negation of a PSD quadratic: concave, used as a non-convex control.
  static ConvexMap nonconvex_control(std::vector<QuadraticOutput> outputs, Domain domain);

  Eigen::Index domain_dim() const { return domain_.dim(); }
  Eigen::Index target_dim() const { return target_dim_; }
  const PolyCone& target_cone() const { return cone_; }
  const Domain& domain() const { return domain_; }
  const MapBody& body() const { return body_; }
  bool convexity_verified() const { return convex_; }
  bool coordinate_target() const { return coordinate_target_; }

  /// Throws InputError outside the domain.
  Vector operator()(const Vector& x) const;
  double scalar(const Vector& x) const;
  Vector evaluate_unchecked(const Vector& x) const;

  /// Affine minorant data at x: value f(x) and a Jacobian whose row i is a
  /// subgradient of output i. A valid minorant per coordinate when each
  /// output is a convex function.
  std::pair<Vector, Matrix> linearization(const Vector& x) const;

  /// Coordinates the map does not depend on.
  std::vector<bool> inert_coordinates() const;

  /// True when every output is affine in x.
  bool is_affine() const;

 private:
  struct UncheckedTag {};
  ConvexMap(QuadraticBody body, Domain domain, UncheckedTag);

  MapBody body_;
  Domain domain_;
  PolyCone cone_;
  Eigen::Index target_dim_ = 0;
  bool convex_ = true;
  bool coordinate_target_ = true;
};

/// C is the coordinate cone: contains every unit vector and every generator is >= 0.
bool is_coordinate_cone(const PolyCone& cone);

/// Consecutive slope differences of a path, each tested for C-membership.
struct PathSlopeCheck {
  std::vector<Vector> slopes;          ///< slope of segment k (between breakpoints k and k+1)
  std::vector<MembershipResult> steps;  ///< slope[k+1] - slope[k] in C
  bool monotone = true;
};
PathSlopeCheck check_path_slopes(const std::vector<double>& breakpoints, const std::vector<Vector>& values,
                                 const PolyCone& cone);

}  // namespace conelip
