#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "conelip/convex_map.hpp"
#include "conelip/section.hpp"
#include "conelip/seminorm.hpp"

namespace conelip {

/// The four equivalent chord inequalities for t1 < t2 < t3, compared in the
/// section's cone:
///   (a) phi(t2) <= w1 phi(t1) + w3 phi(t3),  w1 = (t3-t2)/(t3-t1), w3 = (t2-t1)/(t3-t1)
///   (b) s12 <= s13    (c) s13 <= s23    (d) s12 <= s23
/// where sij is the difference quotient of phi between ti and tj.
struct ChordReport {
  double identity_residual = 0.0;  ///< |t2 - (w1 t1 + w3 t3)|
  bool identity_ok = false;
  std::array<OrderCheck, 4> inequalities{};
  bool all_hold = false;
};
ChordReport chord_slope_check(const Section& phi, double t1, double t2, double t3);

/// (f(z_t) - f(x0)) / p(z_t - x0) with z_t = x + t (y - x), x0 = z_{t0}.
/// Throws InputError when p(x - y) = 0 (degenerate direction) or t == t0.
Vector p_slope(const ConvexMap& f, const SeminormSpec& p, const Vector& x, const Vector& y, double t0, double t);

/// Slope monotonicity for t < t', both different from t0:
///   t0 < t < t':  slope(t) <= slope(t')
///   t < t' < t0:  slope(t') <= slope(t)   (p-slope, denominator is nonnegative)
///   t < t0 < t':  -slope(t) <= slope(t')
OrderCheck slope_monotonicity(const ConvexMap& f, const SeminormSpec& p, const Vector& x, const Vector& y, double t0,
                              double t, double t_prime);

struct AffineReport {
  bool affine = false;         ///< phi((1-t0)a + t0 b) equals the chord value
  double gap = 0.0;            ///< sup-norm of chord value minus phi at the test point
  bool grid_checked = false;
  bool grid_agrees = false;    ///< chord agreement on the verification grid
  double grid_max_gap = 0.0;
};
AffineReport affine_detect(const Section& phi, double a, double b, double t0, int grid_points = 100,
                           double tol = kResidualTol);

enum class TailDirection { increasing_right, decreasing_left };

struct TailReport {
  TailDirection direction = TailDirection::increasing_right;
  bool grid_verified = false;          ///< strict monotonicity on the grid
  double grid_from = 0.0;
  double grid_to = 0.0;
  std::optional<double> witness_t;     ///< extrapolation parameter t with phi(a + t (b - a)) >= M
  std::optional<double> witness_point; ///< a + t (b - a)
  std::optional<double> witness_value;
  bool witness_verified = false;
};
/// Scalar sections only. Throws InputError when phi(a) == phi(b).
TailReport tail_behavior(const Section& phi, double a, double b, double M, int grid_points = 100);

enum class AdditivityMode { convex, concave };

struct SuperadditiveReport {
  bool holds = false;
  double lhs = 0.0;  ///< phi(alpha + beta)
  double rhs = 0.0;  ///< phi(alpha) + phi(beta)
  std::optional<double> intermediate;       ///< min(a,b) phi(max) - max(a,b) phi(min), convex mode
  std::optional<bool> intermediate_holds;
};
/// Convex mode: phi(a + b) >= phi(a) + phi(b); concave mode: <=. Requires
/// phi(0) = 0 and phi > 0 on sampled points of (0, a + b].
SuperadditiveReport superadditive_check(const Section& phi, double alpha, double beta, AdditivityMode mode,
                                        double tol = kResidualTol);

/// Max of each output over the 2^n vertices of center + [-h, h]^n.
Vector hypercube_bound(const ConvexMap& f, const Vector& center, double half_width, int max_dim = 20);
double hypercube_bound_scalar(const ConvexMap& f, const Vector& center, double half_width, int max_dim = 20);

struct EpigraphMembership {
  bool in_epi = false;         ///< f(x) <= alpha
  bool in_strict_epi = false;  ///< f(x) < alpha
};
EpigraphMembership epigraph_predicates(const ConvexMap& f, const Vector& x, double alpha);

struct SampleCheck {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_residual = 0.0;  ///< most negative residual seen (0 if none)
  std::optional<Vector> witness;
  bool holds() const { return violations == 0; }
};

/// C-convexity f((1-a) x1 + a x2) <=_C (1-a) f(x1) + a f(x2) on random
/// triples drawn from the domain.
SampleCheck convexity_check(const ConvexMap& f, std::size_t samples, std::uint64_t seed, double tol = kResidualTol);

/// Midpoint convexity of epi(f) for scalar f: pairs (x_i, alpha_i) with
/// alpha_i >= f(x_i), midpoint tested for membership.
SampleCheck epigraph_midpoint_check(const ConvexMap& f, std::size_t samples, std::uint64_t seed, double tol = kResidualTol);

/// Chord inequalities on random sections and random t-triples.
SampleCheck chord_suite(const ConvexMap& f, std::size_t samples, std::uint64_t seed);

}  // namespace conelip
