#include "conelip/sampling.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "conelip/errors.hpp"

namespace conelip {

namespace {

constexpr int kRejectionAttempts = 256;

Vector random_direction(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector u(n);
  do {
    for (Eigen::Index i = 0; i < n; ++i) u[i] = gauss(rng);
  } while (u.norm() == 0.0);
  return u / u.norm();
}

// Largest tau with gauge(tau u) <= radius, for gauge nondecreasing along rays.
double ray_extent(const std::function<double(const Vector&)>& gauge, const Vector& u, double radius, double cap) {
  if (gauge(cap * u) <= radius) return cap;
  double lo = 0.0;
  double hi = cap;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gauge(mid * u) <= radius) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Vector radial(const Vector& center, double radius, const std::function<double(const Vector&)>& gauge, double cap,
              std::mt19937_64& rng) {
  const Eigen::Index n = center.size();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vector u = random_direction(n, rng);
  const double tmax = ray_extent(gauge, u, radius, cap);
  return center + tmax * std::pow(unit(rng), 1.0 / static_cast<double>(n)) * u;
}

double graduated_gauge(const std::vector<SeminormSpec>& family, const Vector& x) {
  double d = 0.0;
  double w = 0.5;
  for (const auto& p : family) {
    const double v = p(x);
    d += w * v / (1.0 + v);
    w *= 0.5;
  }
  return d;
}

}  // namespace

Vector unit_ball_halfwidths(const SeminormSpec& p, double kernel_extent) {
  const Eigen::Index n = p.dim();
  Vector h(n);
  switch (p.kind()) {
    case SeminormKind::weighted_sup:
    case SeminormKind::weighted_l1:
      for (Eigen::Index i = 0; i < n; ++i) h[i] = p.weights()[i] > 0.0 ? 1.0 / p.weights()[i] : kernel_extent;
      return h;
    case SeminormKind::minkowski_polytope:
      return p.vertices().cwiseAbs().rowwise().maxCoeff();
    case SeminormKind::max_of:
      h = Vector::Constant(n, std::numeric_limits<double>::infinity());
      for (const auto& part : p.parts()) h = h.cwiseMin(unit_ball_halfwidths(part, kernel_extent));
      return h;
  }
  return h;
}

std::vector<Eigen::Index> kernel_coordinates(const SeminormSpec& p) {
  std::vector<Eigen::Index> out;
  if (p.kind() != SeminormKind::weighted_sup && p.kind() != SeminormKind::weighted_l1) return out;
  for (Eigen::Index i = 0; i < p.dim(); ++i) {
    if (p.weights()[i] == 0.0) out.push_back(i);
  }
  return out;
}

Vector sample_region(const CertRegion& region, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (region.kind) {
    case RegionKind::interval:
      return Vector::Constant(1, region.lo + (region.hi - region.lo) * unit(rng));
    case RegionKind::point_cloud: {
      std::uniform_int_distribution<std::size_t> pick(0, region.points.size() - 1);
      return region.points[pick(rng)];
    }
    case RegionKind::seminorm_ball: {
      const SeminormSpec& p = *region.p;
      const Vector h = region.radius * unit_ball_halfwidths(p, 1.0);
      for (int a = 0; a < kRejectionAttempts; ++a) {
        Vector x = region.center;
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] += h[i] * (2.0 * unit(rng) - 1.0);
        if (p(x - region.center) <= region.radius) return x;
      }
      const double cap = h.maxCoeff() * std::sqrt(static_cast<double>(h.size())) + 1e-300;
      return radial(region.center, region.radius, [&](const Vector& v) { return p(v); }, cap, rng);
    }
    case RegionKind::lp_ball: {
      const Vector u = random_direction(region.center.size(), rng);
      const double s = u.cwiseAbs().array().pow(region.lp_exponent).sum();
      const double tmax = std::pow(region.radius / s, 1.0 / region.lp_exponent);
      const double tau = tmax * std::pow(unit(rng), 1.0 / static_cast<double>(u.size()));
      return region.center + tau * u;
    }
    case RegionKind::graduated_ball:
      return radial(
          region.center, region.radius, [&](const Vector& v) { return graduated_gauge(region.family, v); }, 10.0, rng);
  }
  throw InputError("sample_region: unknown region kind");
}

}  // namespace conelip
