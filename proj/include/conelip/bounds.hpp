#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conelip/convex_map.hpp"
#include "conelip/seminorm.hpp"

namespace conelip {

/// Upper bound for q(f(x)) over x in B_p[x0, R].
struct BetaBound {
  double value = 0.0;
  bool certified = false;
  std::string method;                  ///< "vertex-lp", "vertex-minorant" or "sampled"
  std::optional<Vector> coordinate_bound;  ///< |f_i| <= bound_i on the ball (certified methods)
};

/// Vertices of B_p[x0, R] restricted to the coordinates f depends on (others
/// held at x0). std::nullopt when the ball is not a polytope in those
/// coordinates or has more than 2^20 vertices.
std::optional<std::vector<Vector>> relevant_ball_vertices(const ConvexMap& f, const SeminormSpec& p, const Vector& x0,
                                                         double R);

/// q is monotone in |y|: |y| <= |y'| coordinatewise implies q(y) <= q(y').
/// Exact for weighted kinds; minkowski gauges are tested for invariance under
/// coordinate reflections.
bool is_solid(const SeminormSpec& q);

/// Certified when f is convex with a coordinate target, q is solid and the
/// relevant ball is a polytope inside the domain: the top of each output is
/// attained at a vertex and the bottom is bounded by an LP (max-affine) or by
/// the affine minorant at x0. Otherwise the maximum over `samples` sampled
/// points, flagged as not certified.
BetaBound beta_bound(const ConvexMap& f, const SeminormSpec& q, const SeminormSpec& p, const Vector& x0, double R,
                     std::size_t samples = 4096, std::uint64_t seed = 1);

/// q(x) <= z and x <= y <= z (in C) imply q(y) <= max(q(x), q(z)).
struct FullnessCheck {
  bool full = false;
  bool exact = false;  ///< false when decided by sampling
  std::optional<Vector> witness;  ///< a violating middle point y
};
FullnessCheck check_fullness(const SeminormSpec& q, const PolyCone& cone, std::size_t samples = 2000,
                             std::uint64_t seed = 1);

}  // namespace conelip

namespace conelip {

struct ContainmentCheck {
  bool inside = false;
  bool exact = false;
  std::optional<Vector> witness;  ///< a ball point outside the domain
};

/// B_p[x0, R] lies in the domain. Decided exactly for whole and box domains
/// and for polytope balls; otherwise by sampling.
ContainmentCheck ball_inside_domain(const Domain& domain, const SeminormSpec& p, const Vector& x0, double R,
                                    std::size_t samples = 2000, std::uint64_t seed = 1);

}  // namespace conelip
