#include "conelip/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <variant>

#include "conelip/certificate.hpp"
#include "conelip/errors.hpp"
#include "conelip/lp.hpp"
#include "conelip/normality.hpp"
#include "conelip/sampling.hpp"

namespace conelip {

namespace {

constexpr Eigen::Index kMaxVertexDim = 20;
constexpr std::size_t kMaxLpVertices = 4096;

// Box over the active coordinates, others held at x0.
std::optional<std::vector<Vector>> box_vertices(const Vector& x0, const Vector& half, const std::vector<Eigen::Index>& active) {
  const auto k = static_cast<Eigen::Index>(active.size());
  if (k > kMaxVertexDim) return std::nullopt;
  for (Eigen::Index i : active) {
    if (!std::isfinite(half[i])) return std::nullopt;
  }
  std::vector<Vector> out;
  const std::uint64_t count = std::uint64_t{1} << k;
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    Vector v = x0;
    for (Eigen::Index j = 0; j < k; ++j) v[active[j]] += ((mask >> j) & 1U) ? half[active[j]] : -half[active[j]];
    out.push_back(std::move(v));
  }
  return out;
}

bool all_weighted_sup(const SeminormSpec& p) {
  if (p.kind() == SeminormKind::weighted_sup) return true;
  if (p.kind() != SeminormKind::max_of) return false;
  for (const auto& part : p.parts()) {
    if (!all_weighted_sup(part)) return false;
  }
  return true;
}

// min over conv(vertices) of max_j (a_j . x + b_j).
std::optional<double> max_affine_min(const std::vector<AffinePiece>& pieces, const std::vector<Vector>& vertices) {
  const auto m = static_cast<Eigen::Index>(vertices.size());
  const auto k = static_cast<Eigen::Index>(pieces.size());
  // variables: lambda (m), t+, t-, slack (k)
  const Eigen::Index cols = m + 2 + k;
  Matrix A = Matrix::Zero(k + 1, cols);
  Vector b = Vector::Zero(k + 1);
  Vector c = Vector::Zero(cols);
  c[m] = 1.0;
  c[m + 1] = -1.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index v = 0; v < m; ++v) A(j, v) = pieces[static_cast<std::size_t>(j)].weight.dot(vertices[static_cast<std::size_t>(v)]);
    A(j, m) = -1.0;
    A(j, m + 1) = 1.0;
    A(j, m + 2 + j) = 1.0;
    b[j] = -pieces[static_cast<std::size_t>(j)].offset;
  }
  A.row(k).head(m).setOnes();
  b[k] = 1.0;
  const auto res = lp::solve_standard(A, b, c);
  if (res.status != lp::Status::optimal) return std::nullopt;
  return res.objective;
}

}  // namespace

std::optional<std::vector<Vector>> relevant_ball_vertices(const ConvexMap& f, const SeminormSpec& p, const Vector& x0,
                                                         double R) {
  require_dim(x0, f.domain_dim(), "ball vertices");
  if (p.dim() != f.domain_dim()) throw InputError("ball vertices: seminorm dimension differs from the domain");
  const auto inert = f.inert_coordinates();
  std::vector<Eigen::Index> active;
  for (Eigen::Index i = 0; i < f.domain_dim(); ++i) {
    if (!inert[static_cast<std::size_t>(i)]) active.push_back(i);
  }
  if (all_weighted_sup(p)) {
    const Vector half = R * unit_ball_halfwidths(p, std::numeric_limits<double>::infinity());
    return box_vertices(x0, half, active);
  }
  if (p.kind() == SeminormKind::weighted_l1) {
    std::vector<Vector> out{x0};
    for (Eigen::Index i : active) {
      if (p.weights()[i] == 0.0) return std::nullopt;
      for (double s : {1.0, -1.0}) {
        Vector v = x0;
        v[i] += s * R / p.weights()[i];
        out.push_back(std::move(v));
      }
    }
    return out;
  }
  if (p.kind() == SeminormKind::minkowski_polytope) return p.ball_vertices(x0, R);
  return std::nullopt;
}

bool is_solid(const SeminormSpec& q) {
  switch (q.kind()) {
    case SeminormKind::weighted_sup:
    case SeminormKind::weighted_l1:
      return true;
    case SeminormKind::minkowski_polytope: {
      const Matrix& V = q.vertices();
      for (Eigen::Index j = 0; j < V.cols(); ++j) {
        for (Eigen::Index i = 0; i < V.rows(); ++i) {
          Vector v = V.col(j);
          v[i] = -v[i];
          if (q(v) > 1.0 + 1e-9) return false;
        }
      }
      return true;
    }
    case SeminormKind::max_of:
      for (const auto& part : q.parts()) {
        if (!is_solid(part)) return false;
      }
      return true;
  }
  return false;
}

BetaBound beta_bound(const ConvexMap& f, const SeminormSpec& q, const SeminormSpec& p, const Vector& x0, double R,
                     std::size_t samples, std::uint64_t seed) {
  if (q.dim() != f.target_dim()) throw InputError("beta bound: q dimension differs from the target");
  if (!(R > 0.0)) throw InputError("beta bound: radius must be positive");
  const auto verts = relevant_ball_vertices(f, p, x0, R);
  const bool inside = verts && std::all_of(verts->begin(), verts->end(), [&](const Vector& v) { return f.domain().contains(v); });
  if (verts && inside && f.convexity_verified() && f.coordinate_target() && is_solid(q)) {
    const Eigen::Index m = f.target_dim();
    Vector top = Vector::Constant(m, -std::numeric_limits<double>::infinity());
    for (const auto& v : *verts) top = top.cwiseMax(f.evaluate_unchecked(v));
    Vector bottom = Vector::Constant(m, std::numeric_limits<double>::infinity());
    std::string method = "vertex-minorant";
    const auto* ma = std::get_if<MaxAffineBody>(&f.body());
    bool lp_done = false;
    if (ma != nullptr && verts->size() <= kMaxLpVertices) {
      lp_done = true;
      for (Eigen::Index i = 0; i < m; ++i) {
        const auto low = max_affine_min(ma->outputs[static_cast<std::size_t>(i)], *verts);
        if (!low) {
          lp_done = false;
          break;
        }
        bottom[i] = *low;
      }
      if (lp_done) method = "vertex-lp";
    }
    if (!lp_done) {
      const auto [val, J] = f.linearization(x0);
      for (const auto& v : *verts) bottom = bottom.cwiseMin(val + J * (v - x0));
    }
    Vector bound = top.cwiseAbs().cwiseMax(bottom.cwiseAbs());
    BetaBound out;
    out.value = q(bound);
    out.certified = true;
    out.method = method;
    out.coordinate_bound = bound;
    return out;
  }
  std::mt19937_64 rng(seed);
  const CertRegion ball = CertRegion::ball(x0, R, p);
  BetaBound out;
  out.method = "sampled";
  out.value = 0.0;
  std::size_t used = 0;
  if (verts) {
    for (const auto& v : *verts) {
      if (!f.domain().contains(v)) continue;
      out.value = std::max(out.value, q(f.evaluate_unchecked(v)));
      ++used;
    }
  }
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector x = sample_region(ball, rng);
    if (!f.domain().contains(x)) continue;
    out.value = std::max(out.value, q(f.evaluate_unchecked(x)));
    ++used;
  }
  if (used == 0) throw InputError("beta bound: no sampled ball point lies in the domain");
  return out;
}

FullnessCheck check_fullness(const SeminormSpec& q, const PolyCone& cone, std::size_t samples, std::uint64_t seed) {
  if (q.dim() != cone.dim()) throw InputError("fullness: seminorm and cone dimensions differ");
  FullnessCheck out;
  const Eigen::Index n = q.dim();
  if (n == 1) {
    out.full = true;
    out.exact = true;
    return out;
  }
  const bool coord = is_coordinate_cone(cone);
  if (coord && q.kind() == SeminormKind::weighted_sup) {
    out.full = true;
    out.exact = true;
    return out;
  }
  if (coord && q.kind() == SeminormKind::weighted_l1) {
    std::vector<Eigen::Index> pos;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (q.weights()[i] > 0.0) pos.push_back(i);
    }
    out.exact = true;
    out.full = pos.size() <= 1;
    if (!out.full) {
      Vector y = Vector::Zero(n);
      y[pos[0]] = 1.0 / q.weights()[pos[0]];
      y[pos[1]] = -1.0 / q.weights()[pos[1]];
      out.witness = y;
    }
    return out;
  }
  if (q.kind() == SeminormKind::max_of) {
    out.full = true;
    out.exact = true;
    for (const auto& part : q.parts()) {
      const auto sub = check_fullness(part, cone, samples, seed);
      out.exact = out.exact && sub.exact;
      if (!sub.full) {
        out.full = false;
        out.witness = sub.witness;
        return out;
      }
    }
    return out;
  }
  // Sampled: chains x <= y <= z near the unit ball, plus order intervals between ball vertices.
  out.full = true;
  out.exact = false;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const CertRegion ball = CertRegion::ball(Vector::Zero(n), 1.0, q);
  const Matrix& G = cone.generator_matrix();
  auto cone_step = [&](double scale) {
    Vector c = Vector::Zero(n);
    for (Eigen::Index j = 0; j < G.cols(); ++j) c += unit(rng) * G.col(j);
    const double s = c.cwiseAbs().maxCoeff();
    return s > 0.0 ? Vector(c * (scale / s)) : c;
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector x = sample_region(ball, rng);
    const double scale = std::pow(10.0, -3.0 * unit(rng));
    const Vector y = x + cone_step(scale);
    const Vector z = y + cone_step(scale);
    const double bound = std::max(q(x), q(z));
    if (q(y) > bound * (1.0 + 1e-9) + 1e-12) {
      out.full = false;
      out.witness = y;
      return out;
    }
  }
  if (const auto verts = q.ball_vertices(Vector::Zero(n), 1.0)) {
    for (const auto& lo : *verts) {
      for (const auto& hi : *verts) {
        if (&lo == &hi || !order_le(cone, lo, hi)) continue;
        const auto sup = o_bounded_sup(OrderInterval(cone, lo, hi), q, 512, seed);
        if (sup.value > 1.0 + 1e-9) {
          out.full = false;
          return out;
        }
      }
    }
  }
  return out;
}

ContainmentCheck ball_inside_domain(const Domain& domain, const SeminormSpec& p, const Vector& x0, double R,
                                    std::size_t samples, std::uint64_t seed) {
  require_dim(x0, domain.dim(), "ball containment");
  ContainmentCheck out;
  if (domain.kind() == Domain::Kind::whole) {
    out.inside = true;
    out.exact = true;
    return out;
  }
  const Vector half = R * unit_ball_halfwidths(p, std::numeric_limits<double>::infinity());
  if (domain.kind() == Domain::Kind::box) {
    bool ok = true;
    for (Eigen::Index i = 0; i < x0.size() && ok; ++i) {
      ok = domain.lo()[i] <= x0[i] - half[i] && x0[i] + half[i] <= domain.hi()[i];
    }
    if (ok) {
      out.inside = true;
      out.exact = true;
      return out;
    }
  }
  if (const auto verts = p.ball_vertices(x0, R)) {
    out.exact = true;
    out.inside = true;
    for (const auto& v : *verts) {
      if (!domain.contains(v)) {
        out.inside = false;
        out.witness = v;
        break;
      }
    }
    return out;
  }
  for (Eigen::Index i = 0; i < x0.size(); ++i) {
    if (!std::isfinite(half[i]) && domain.kind() != Domain::Kind::whole) {
      const auto [a, b] = domain.line_range(x0, Vector::Unit(x0.size(), i));
      if (std::isfinite(a) || std::isfinite(b)) {
        out.exact = true;
        out.inside = false;
        out.witness = x0 + (std::isfinite(b) ? 2.0 * b + 1.0 : 2.0 * a - 1.0) * Vector::Unit(x0.size(), i);
        return out;
      }
    }
  }
  std::mt19937_64 rng(seed);
  const CertRegion ball = CertRegion::ball(x0, R, p);
  out.inside = true;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector x = sample_region(ball, rng);
    if (!domain.contains(x)) {
      out.inside = false;
      out.witness = x;
      return out;
    }
  }
  return out;
}

}  // namespace conelip
