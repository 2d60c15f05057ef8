#pragma once

#include <optional>
#include <random>

#include "conelip/seminorm.hpp"
#include "conelip/vector.hpp"

namespace conelip {

/// Where a ConvexMap may be evaluated: all of R^n, an axis-aligned box, or a
/// closed seminorm ball. Evaluation outside is an error.
class Domain {
 public:
  enum class Kind { whole, box, ball };

  static Domain whole(Eigen::Index dim);
  static Domain box(Vector lo, Vector hi);
  static Domain ball(Vector center, double radius, SeminormSpec p);

  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  const Vector& lo() const { return lo_; }          ///< box
  const Vector& hi() const { return hi_; }          ///< box
  const Vector& center() const { return center_; }  ///< ball
  double radius() const { return radius_; }         ///< ball
  const std::optional<SeminormSpec>& seminorm() const { return p_; }

  bool contains(const Vector& x, double tol = 1e-12) const;

  /// Uniform sample from the domain; `whole` samples [-1, 1]^n. Balls whose
  /// seminorm has a kernel are sampled in the bounding box of half-width
  /// radius (kernel coordinates included).
  Vector sample(std::mt19937_64& rng) const;

  /// Parameter range {t : base + t dir in domain}; infinite ends allowed.
  std::pair<double, double> line_range(const Vector& base, const Vector& dir) const;

 private:
  Domain() = default;
  Kind kind_ = Kind::whole;
  Eigen::Index dim_ = 0;
  Vector lo_;
  Vector hi_;
  Vector center_;
  double radius_ = 0.0;
  std::optional<SeminormSpec> p_;
};

}  // namespace conelip
