#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "conelip/vector.hpp"

namespace conelip {

enum class SeminormKind { weighted_sup, weighted_l1, minkowski_polytope, max_of };

std::string_view to_string(SeminormKind kind);
SeminormKind seminorm_kind_from_string(std::string_view name);

/// An evaluable seminorm on R^n.
///
/// weighted_sup:        max_i w_i |x_i|
/// weighted_l1:         sum_i w_i |x_i|
/// minkowski_polytope:  gauge inf{ t > 0 : x in t W } of W = conv(vertices);
///                      W must be symmetric with 0 in its interior
/// max_of:              pointwise maximum of finitely many seminorms
///
/// Values are immutable; copies share the underlying description.
class SeminormSpec {
 public:
  static SeminormSpec weighted_sup(Vector weights);
  static SeminormSpec weighted_l1(Vector weights);
  static SeminormSpec sup_norm(Eigen::Index dim);
  static SeminormSpec l1_norm(Eigen::Index dim);
  static SeminormSpec abs();  ///< |.| on R
  /// Vertices are the columns of `vertices` (dim x m).
  static SeminormSpec minkowski(Matrix vertices);
  /// Gauge of the sup-norm unit ball, vertex form (2^dim vertices).
  static SeminormSpec sup_ball_gauge(Eigen::Index dim);
  static SeminormSpec max_of(std::vector<SeminormSpec> parts);

  SeminormKind kind() const;
  Eigen::Index dim() const;
  const Vector& weights() const;            ///< weighted kinds only
  const Matrix& vertices() const;           ///< minkowski only
  const std::vector<SeminormSpec>& parts() const;  ///< max_of only

  double operator()(const Vector& x) const;

  /// Vertices of the closed ball B_p[center, radius]. std::nullopt when the
  /// ball is unbounded (the seminorm has a kernel) or for max_of.
  std::optional<std::vector<Vector>> ball_vertices(const Vector& center, double radius) const;

  /// True when evaluation is zero only at the origin (a norm).
  bool is_norm() const;

  /// Linear functionals whose pointwise max equals the seminorm. Available
  /// for weighted kinds in any dimension and for planar polytopes.
  std::optional<std::vector<Vector>> dual_functionals() const;

  bool operator==(const SeminormSpec& other) const;

 private:
  struct Impl;
  explicit SeminormSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace conelip
