#include "conelip/convex_checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "conelip/errors.hpp"

namespace conelip {
namespace {

double rel_tol(double tol, double scale) { return tol * (1.0 + std::abs(scale)); }

void require_scalar(const Section& phi, const char* what) {
  if (phi.target_dim() != 1) throw InputError(std::string(what) + ": scalar section required");
}

}  // namespace

ChordReport chord_slope_check(const Section& phi, double t1, double t2, double t3) {
  if (!(t1 < t2 && t2 < t3)) throw InputError("chord_slope_check: requires t1 < t2 < t3");
  const Vector p1 = phi(t1);
  const Vector p2 = phi(t2);
  const Vector p3 = phi(t3);
  const double w1 = (t3 - t2) / (t3 - t1);
  const double w3 = (t2 - t1) / (t3 - t1);

  ChordReport r;
  r.identity_residual = std::abs(t2 - (w1 * t1 + w3 * t3));
  r.identity_ok = r.identity_residual <= 1e-12 * (1.0 + std::max({std::abs(t1), std::abs(t2), std::abs(t3)}));

  const Vector s12 = (p2 - p1) / (t2 - t1);
  const Vector s13 = (p3 - p1) / (t3 - t1);
  const Vector s23 = (p3 - p2) / (t3 - t2);
  const PolyCone& C = phi.cone();
  r.inequalities[0] = order_check(C, p2, w1 * p1 + w3 * p3);
  r.inequalities[1] = order_check(C, s12, s13);
  r.inequalities[2] = order_check(C, s13, s23);
  r.inequalities[3] = order_check(C, s12, s23);
  r.all_hold = r.identity_ok && std::all_of(r.inequalities.begin(), r.inequalities.end(), [](const OrderCheck& c) { return c.holds; });
  return r;
}

Vector p_slope(const ConvexMap& f, const SeminormSpec& p, const Vector& x, const Vector& y, double t0, double t) {
  require_same_dim(x, y, "p_slope");
  if (p(x - y) == 0.0) throw InputError("p_slope: degenerate direction, p(x - y) = 0");
  if (t == t0) throw InputError("p_slope: t must differ from t0");
  const Vector x0 = x + t0 * (y - x);
  const Vector zt = x + t * (y - x);
  return (f(zt) - f(x0)) / p(zt - x0);
}

OrderCheck slope_monotonicity(const ConvexMap& f, const SeminormSpec& p, const Vector& x, const Vector& y, double t0,
                              double t, double t_prime) {
  if (!(t < t_prime)) throw InputError("slope_monotonicity: requires t < t'");
  if (t == t0 || t_prime == t0) throw InputError("slope_monotonicity: parameters must differ from t0");
  const Vector lo = p_slope(f, p, x, y, t0, t);
  const Vector hi = p_slope(f, p, x, y, t0, t_prime);
  if (t < t0 && t0 < t_prime) return order_check(f.target_cone(), -lo, hi);
  // left of t0 the denominator p(z_t - x0) grows as t decreases, so the order flips
  if (t_prime < t0) return order_check(f.target_cone(), hi, lo);
  return order_check(f.target_cone(), lo, hi);
}

AffineReport affine_detect(const Section& phi, double a, double b, double t0, int grid_points, double tol) {
  if (!(a < b)) throw InputError("affine_detect: requires a < b");
  if (!(t0 > 0.0 && t0 < 1.0)) throw InputError("affine_detect: t0 must lie in (0, 1)");
  const Vector fa = phi(a);
  const Vector fb = phi(b);
  const double scale = std::max(sup_norm(fa), sup_norm(fb));
  auto gap_at = [&](double s) { return sup_norm((1.0 - s) * fa + s * fb - phi((1.0 - s) * a + s * b)); };

  AffineReport r;
  r.gap = gap_at(t0);
  r.affine = r.gap <= rel_tol(tol, scale);
  if (r.affine) {
    r.grid_checked = true;
    const int n = std::max(grid_points, 2);
    for (int k = 0; k < n; ++k) r.grid_max_gap = std::max(r.grid_max_gap, gap_at(static_cast<double>(k) / (n - 1)));
    r.grid_agrees = r.grid_max_gap <= rel_tol(tol, scale);
  }
  return r;
}

TailReport tail_behavior(const Section& phi, double a, double b, double M, int grid_points) {
  require_scalar(phi, "tail_behavior");
  if (!(a < b)) throw InputError("tail_behavior: requires a < b");
  const double fa = phi.value(a);
  const double fb = phi.value(b);
  if (fa == fb) throw InputError("tail_behavior: phi(a) = phi(b), no conclusion");

  TailReport r;
  const double span = b - a;
  const double t_star = (M - fa) / (fb - fa);
  double t = 0.0;
  if (fa < fb) {
    r.direction = TailDirection::increasing_right;
    t = std::max(t_star, 1.0);
  } else {
    r.direction = TailDirection::decreasing_left;
    t = std::min(t_star, 0.0);
  }
  const double point = a + t * span;
  r.witness_t = t;
  if (phi.in_range(point)) {
    r.witness_point = point;
    r.witness_value = phi.value(point);
    r.witness_verified = *r.witness_value >= M;
  }

  const int n = std::max(grid_points, 2);
  if (r.direction == TailDirection::increasing_right) {
    double end = std::max(b + span, r.witness_point.value_or(b));
    end = std::min(end, phi.t_max());
    r.grid_from = b;
    r.grid_to = end;
  } else {
    double start = std::min(a - span, r.witness_point.value_or(a));
    start = std::max(start, phi.t_min());
    r.grid_from = start;
    r.grid_to = a;
  }
  r.grid_verified = true;
  if (r.grid_to > r.grid_from) {
    double prev = phi.value(r.grid_from);
    for (int k = 1; k < n; ++k) {
      const double s = r.grid_from + (r.grid_to - r.grid_from) * k / (n - 1);
      const double v = phi.value(s);
      const bool ok = r.direction == TailDirection::increasing_right ? v > prev : v < prev;
      if (!ok) r.grid_verified = false;
      prev = v;
    }
  }
  return r;
}

SuperadditiveReport superadditive_check(const Section& phi, double alpha, double beta, AdditivityMode mode, double tol) {
  require_scalar(phi, "superadditive_check");
  if (!(alpha > 0.0 && beta > 0.0)) throw InputError("superadditive_check: alpha and beta must be positive");
  const double f0 = phi.value(0.0);
  if (std::abs(f0) > tol) throw InputError("superadditive_check: phi(0) must vanish");
  constexpr int kPrecondSamples = 100;
  for (int k = 1; k <= kPrecondSamples; ++k) {
    const double t = (alpha + beta) * k / kPrecondSamples;
    if (!(phi.value(t) > 0.0)) {
      throw InputError("superadditive_check: phi must be positive away from 0 (fails at t = " + std::to_string(t) + ")");
    }
  }
  SuperadditiveReport r;
  const double fa = phi.value(alpha);
  const double fb = phi.value(beta);
  r.lhs = phi.value(alpha + beta);
  r.rhs = fa + fb;
  if (mode == AdditivityMode::convex) {
    r.holds = r.lhs >= r.rhs - rel_tol(tol, r.rhs);
    const double lo = std::min(alpha, beta);
    const double hi = std::max(alpha, beta);
    r.intermediate = lo * phi.value(hi) - hi * phi.value(lo);
    r.intermediate_holds = *r.intermediate >= -rel_tol(tol, hi * phi.value(lo));
  } else {
    r.holds = r.lhs <= r.rhs + rel_tol(tol, r.rhs);
  }
  return r;
}

Vector hypercube_bound(const ConvexMap& f, const Vector& center, double half_width, int max_dim) {
  require_dim(center, f.domain_dim(), "hypercube_bound");
  if (!(half_width >= 0.0)) throw InputError("hypercube_bound: half_width must be nonnegative");
  const Eigen::Index n = f.domain_dim();
  if (n > max_dim || n > 62) throw ResourceError("hypercube_bound: 2^" + std::to_string(n) + " vertices exceed the cap");
  Vector best = Vector::Constant(f.target_dim(), -std::numeric_limits<double>::infinity());
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    Vector v = center;
    for (Eigen::Index i = 0; i < n; ++i) v[i] += ((mask >> i) & 1U) ? half_width : -half_width;
    if (!f.domain().contains(v)) throw InputError("hypercube_bound: cube leaves the domain");
    best = best.cwiseMax(f.evaluate_unchecked(v));
  }
  return best;
}

double hypercube_bound_scalar(const ConvexMap& f, const Vector& center, double half_width, int max_dim) {
  if (f.target_dim() != 1) throw InputError("hypercube_bound_scalar: map is vector-valued");
  return hypercube_bound(f, center, half_width, max_dim)[0];
}

EpigraphMembership epigraph_predicates(const ConvexMap& f, const Vector& x, double alpha) {
  const double v = f.scalar(x);
  return {v <= alpha, v < alpha};
}

SampleCheck convexity_check(const ConvexMap& f, std::size_t samples, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SampleCheck out;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector x1 = f.domain().sample(rng);
    const Vector x2 = f.domain().sample(rng);
    const double a = unit(rng);
    const Vector lhs = f((1.0 - a) * x1 + a * x2);
    const Vector rhs = (1.0 - a) * f(x1) + a * f(x2);
    const auto c = order_check(f.target_cone(), lhs, rhs, tol);
    ++out.samples;
    out.worst_residual = std::min(out.worst_residual, c.residual);
    if (!c.holds) {
      if (out.violations == 0) out.witness = (1.0 - a) * x1 + a * x2;
      ++out.violations;
    }
  }
  return out;
}

SampleCheck epigraph_midpoint_check(const ConvexMap& f, std::size_t samples, std::uint64_t seed, double tol) {
  if (f.target_dim() != 1) throw InputError("epigraph_midpoint_check: scalar map required");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution on_graph(0.5);
  std::exponential_distribution<double> lift(1.0);
  SampleCheck out;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector x1 = f.domain().sample(rng);
    const Vector x2 = f.domain().sample(rng);
    const double a1 = f.scalar(x1) + (on_graph(rng) ? 0.0 : lift(rng));
    const double a2 = f.scalar(x2) + (on_graph(rng) ? 0.0 : lift(rng));
    const Vector mid = 0.5 * (x1 + x2);
    const double amid = 0.5 * (a1 + a2);
    const double margin = amid - f.scalar(mid);
    ++out.samples;
    out.worst_residual = std::min(out.worst_residual, margin);
    if (margin < -rel_tol(tol, amid)) {
      if (out.violations == 0) out.witness = mid;
      ++out.violations;
    }
  }
  return out;
}

SampleCheck chord_suite(const ConvexMap& f, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SampleCheck out;
  while (out.samples < samples) {
    const Vector x = f.domain().sample(rng);
    const Vector y = f.domain().sample(rng);
    if (sup_norm(y - x) == 0.0) continue;
    double t[3] = {unit(rng), unit(rng), unit(rng)};
    std::sort(t, t + 3);
    if (t[1] - t[0] < 1e-6 || t[2] - t[1] < 1e-6) continue;
    // x + t (y - x) stays on the segment [x, y] for t in [0, 1].
    const Section phi([&f, x, y](double s) { return f.evaluate_unchecked(x + s * (y - x)); }, f.target_cone(), 0.0, 1.0);
    const auto rep = chord_slope_check(phi, t[0], t[1], t[2]);
    ++out.samples;
    for (const auto& c : rep.inequalities) out.worst_residual = std::min(out.worst_residual, c.residual);
    if (!rep.all_hold) {
      if (out.violations == 0) out.witness = x + t[1] * (y - x);
      ++out.violations;
    }
  }
  return out;
}

}  // namespace conelip
