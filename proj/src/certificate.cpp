#include "conelip/certificate.hpp"

#include <cmath>
#include <string>

#include "conelip/errors.hpp"

namespace conelip {

std::string_view to_string(Formula f) {
  switch (f) {
    case Formula::scalar_1d:
      return "scalar-1d";
    case Formula::ball_2beta:
      return "ball-2beta";
    case Formula::compact_cover:
      return "compact-cover";
    case Formula::o_lipschitz:
      return "o-lipschitz";
    case Formula::equi_family:
      return "equi-family";
    case Formula::lp_quasi:
      return "lp-quasi";
    case Formula::lcs_graduated:
      return "lcs-graduated";
  }
  return "unknown";
}

Formula formula_from_string(std::string_view name) {
  for (Formula f : {Formula::scalar_1d, Formula::ball_2beta, Formula::compact_cover, Formula::o_lipschitz,
                    Formula::equi_family, Formula::lp_quasi, Formula::lcs_graduated}) {
    if (to_string(f) == name) return f;
  }
  throw InputError("unknown certificate formula '" + std::string(name) + "'");
}

std::string_view to_string(RegionKind k) {
  switch (k) {
    case RegionKind::interval:
      return "interval";
    case RegionKind::seminorm_ball:
      return "seminorm-ball";
    case RegionKind::point_cloud:
      return "point-cloud";
    case RegionKind::lp_ball:
      return "lp-ball";
    case RegionKind::graduated_ball:
      return "graduated-ball";
  }
  return "unknown";
}

CertRegion CertRegion::interval(double lo, double hi) {
  if (!(lo <= hi)) throw InputError("interval region: lo exceeds hi");
  CertRegion r;
  r.kind = RegionKind::interval;
  r.lo = lo;
  r.hi = hi;
  return r;
}

CertRegion CertRegion::ball(Vector center, double radius, SeminormSpec p) {
  require_dim(center, p.dim(), "ball region");
  CertRegion r;
  r.kind = RegionKind::seminorm_ball;
  r.center = std::move(center);
  r.radius = radius;
  r.p = std::move(p);
  return r;
}

CertRegion CertRegion::cloud(std::vector<Vector> points, SeminormSpec p) {
  if (points.empty()) throw InputError("point-cloud region: no points");
  for (const auto& x : points) require_dim(x, p.dim(), "point-cloud region");
  CertRegion r;
  r.kind = RegionKind::point_cloud;
  r.points = std::move(points);
  r.p = std::move(p);
  return r;
}

CertRegion CertRegion::lp_ball(Vector center, double radius, double exponent) {
  if (!(exponent > 0.0 && exponent < 1.0)) throw InputError("lp-ball region: exponent must lie in (0, 1)");
  CertRegion r;
  r.kind = RegionKind::lp_ball;
  r.center = std::move(center);
  r.radius = radius;
  r.lp_exponent = exponent;
  return r;
}

CertRegion CertRegion::graduated_ball(Vector center, double radius, std::vector<SeminormSpec> family) {
  if (family.empty()) throw InputError("graduated-ball region: empty seminorm family");
  for (const auto& p : family) require_dim(center, p.dim(), "graduated-ball region");
  CertRegion r;
  r.kind = RegionKind::graduated_ball;
  r.center = std::move(center);
  r.radius = radius;
  r.family = std::move(family);
  return r;
}

Eigen::Index CertRegion::dim() const {
  switch (kind) {
    case RegionKind::interval:
      return 1;
    case RegionKind::point_cloud:
      return points.front().size();
    default:
      return center.size();
  }
}

bool CertRegion::contains(const Vector& x, double tol) const {
  if (x.size() != dim()) return false;
  const double slack = tol * (1.0 + std::abs(radius));
  switch (kind) {
    case RegionKind::interval:
      return x[0] >= lo - tol * (1.0 + std::abs(lo)) && x[0] <= hi + tol * (1.0 + std::abs(hi));
    case RegionKind::seminorm_ball:
      return (*p)(x - center) <= radius + slack;
    case RegionKind::point_cloud:
      for (const auto& y : points) {
        if ((x - y).cwiseAbs().maxCoeff() <= tol) return true;
      }
      return false;
    case RegionKind::lp_ball:
      return (x - center).cwiseAbs().array().pow(lp_exponent).sum() <= radius + slack;
    case RegionKind::graduated_ball: {
      double d = 0.0;
      double w = 0.5;
      for (const auto& p : family) {
        const double v = p(x - center);
        d += w * v / (1.0 + v);
        w *= 0.5;
      }
      return d <= radius + slack;
    }
  }
  return false;
}

const LipschitzCertificate& certificate(const CertifyResult& r) {
  if (const auto* refusal = std::get_if<Refusal>(&r)) throw InputError("certification refused: " + refusal->reason);
  return std::get<LipschitzCertificate>(r);
}

}  // namespace conelip
