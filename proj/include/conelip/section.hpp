#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "conelip/convex_map.hpp"

namespace conelip {

/// One-variable restriction t -> f(base + t * direction), optionally to one
/// output coordinate, or any callable t -> Y on an interval. Values are
/// compared in the section's cone.
class Section {
 public:
  using Fn = std::function<Vector(double)>;

  Section(Fn fn, PolyCone cone, double t_min, double t_max);

  /// Restriction of a map to a line. With `output`, the section is scalar and
  /// ordered by R_+, which requires a coordinate target cone.
  static Section along(const ConvexMap& f, const Vector& base, const Vector& direction,
                       std::optional<Eigen::Index> output = std::nullopt);
  /// Restriction to the segment through x and y: t -> f(x + t (y - x)).
  static Section through(const ConvexMap& f, const Vector& x, const Vector& y,
                         std::optional<Eigen::Index> output = std::nullopt);
  static Section scalar(std::function<double(double)> fn, double t_min = -std::numeric_limits<double>::infinity(),
                        double t_max = std::numeric_limits<double>::infinity());

  Vector operator()(double t) const;
  /// Requires target_dim() == 1.
  double value(double t) const;

  const PolyCone& cone() const { return cone_; }
  Eigen::Index target_dim() const { return cone_.dim(); }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  bool in_range(double t) const;

 private:
  Fn fn_;
  PolyCone cone_;
  double t_min_;
  double t_max_;
};

}  // namespace conelip
