#include "conelip/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conelip/errors.hpp"
#include "conelip/lp.hpp"

namespace conelip {

struct SeminormSpec::Impl {
  SeminormKind kind = SeminormKind::weighted_sup;
  Eigen::Index dim = 0;
  Vector weights;
  Matrix vertices;
  std::vector<SeminormSpec> parts;
};

std::string_view to_string(SeminormKind kind) {
  switch (kind) {
    case SeminormKind::weighted_sup:
      return "weighted-sup";
    case SeminormKind::weighted_l1:
      return "weighted-l1";
    case SeminormKind::minkowski_polytope:
      return "minkowski-of-polytope";
    case SeminormKind::max_of:
      return "max-of";
  }
  return "unknown";
}

SeminormKind seminorm_kind_from_string(std::string_view name) {
  if (name == "weighted-sup") return SeminormKind::weighted_sup;
  if (name == "weighted-l1") return SeminormKind::weighted_l1;
  if (name == "minkowski-of-polytope") return SeminormKind::minkowski_polytope;
  if (name == "max-of") return SeminormKind::max_of;
  throw InputError("unknown seminorm kind '" + std::string(name) + "'");
}

namespace {

void check_weights(const Vector& w) {
  if (w.size() == 0) throw InputError("seminorm: empty weight vector");
  require_finite(w, "seminorm weights");
  if ((w.array() < 0.0).any()) throw InputError("seminorm: weights must be nonnegative");
}

// Gauge of conv(V) at y: min sum(l) s.t. V l = y, l >= 0.
double polytope_gauge(const Matrix& V, const Vector& y) {
  if (sup_norm(y) == 0.0) return 0.0;
  const auto res = lp::solve_standard(V, y, Vector::Ones(V.cols()));
  if (res.status != lp::Status::optimal) throw InputError("minkowski functional: point not absorbed by the polytope");
  return res.objective;
}

}  // namespace

SeminormSpec SeminormSpec::weighted_sup(Vector weights) {
  check_weights(weights);
  auto impl = std::make_shared<Impl>();
  impl->kind = SeminormKind::weighted_sup;
  impl->dim = weights.size();
  impl->weights = std::move(weights);
  return SeminormSpec(std::move(impl));
}

SeminormSpec SeminormSpec::weighted_l1(Vector weights) {
  check_weights(weights);
  auto impl = std::make_shared<Impl>();
  impl->kind = SeminormKind::weighted_l1;
  impl->dim = weights.size();
  impl->weights = std::move(weights);
  return SeminormSpec(std::move(impl));
}

SeminormSpec SeminormSpec::sup_norm(Eigen::Index dim) { return weighted_sup(Vector::Ones(dim)); }
SeminormSpec SeminormSpec::l1_norm(Eigen::Index dim) { return weighted_l1(Vector::Ones(dim)); }
SeminormSpec SeminormSpec::abs() { return weighted_sup(Vector::Ones(1)); }

SeminormSpec SeminormSpec::minkowski(Matrix vertices) {
  const Eigen::Index n = vertices.rows();
  if (n == 0 || vertices.cols() == 0) throw InputError("minkowski polytope: no vertices");
  if (!vertices.allFinite()) throw InputError("minkowski polytope: non-finite vertex");
  Eigen::FullPivLU<Matrix> lu(vertices);
  lu.setThreshold(1e-12);
  if (lu.rank() < n) throw InputError("minkowski polytope: 0 is not an interior point (vertices do not span)");
  // Symmetry: -v must lie in conv(V) for every vertex v.
  for (Eigen::Index j = 0; j < vertices.cols(); ++j) {
    Matrix A(n + 1, vertices.cols());
    A.topRows(n) = vertices;
    A.row(n).setOnes();
    Vector b(n + 1);
    b.head(n) = -vertices.col(j);
    b[n] = 1.0;
    const auto res = lp::solve_standard(A, b, Vector::Zero(vertices.cols()));
    if (res.status != lp::Status::optimal) {
      throw InputError("minkowski polytope: not symmetric (negated vertex " + std::to_string(j) + " lies outside)");
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = SeminormKind::minkowski_polytope;
  impl->dim = n;
  impl->vertices = std::move(vertices);
  return SeminormSpec(std::move(impl));
}

SeminormSpec SeminormSpec::sup_ball_gauge(Eigen::Index dim) {
  if (dim <= 0 || dim > 16) throw InputError("sup_ball_gauge: dimension must be in [1, 16]");
  const Eigen::Index m = Eigen::Index{1} << dim;
  Matrix V(dim, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) V(i, k) = ((k >> i) & 1) ? 1.0 : -1.0;
  }
  return minkowski(std::move(V));
}

SeminormSpec SeminormSpec::max_of(std::vector<SeminormSpec> parts) {
  if (parts.empty()) throw InputError("max-of seminorm: no parts");
  const Eigen::Index dim = parts.front().dim();
  for (const auto& p : parts) {
    if (p.dim() != dim) throw InputError("max-of seminorm: parts have different dimensions");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = SeminormKind::max_of;
  impl->dim = dim;
  impl->parts = std::move(parts);
  return SeminormSpec(std::move(impl));
}

SeminormKind SeminormSpec::kind() const { return impl_->kind; }
Eigen::Index SeminormSpec::dim() const { return impl_->dim; }
const Vector& SeminormSpec::weights() const { return impl_->weights; }
const Matrix& SeminormSpec::vertices() const { return impl_->vertices; }
const std::vector<SeminormSpec>& SeminormSpec::parts() const { return impl_->parts; }

double SeminormSpec::operator()(const Vector& x) const {
  require_dim(x, impl_->dim, "seminorm evaluation");
  switch (impl_->kind) {
    case SeminormKind::weighted_sup:
      return (impl_->weights.array() * x.array().abs()).maxCoeff();
    case SeminormKind::weighted_l1:
      return (impl_->weights.array() * x.array().abs()).sum();
    case SeminormKind::minkowski_polytope:
      return polytope_gauge(impl_->vertices, x);
    case SeminormKind::max_of: {
      double best = 0.0;
      for (const auto& p : impl_->parts) best = std::max(best, p(x));
      return best;
    }
  }
  return 0.0;
}

bool SeminormSpec::is_norm() const {
  switch (impl_->kind) {
    case SeminormKind::weighted_sup:
    case SeminormKind::weighted_l1:
      return (impl_->weights.array() > 0.0).all();
    case SeminormKind::minkowski_polytope:
      return true;
    case SeminormKind::max_of: {
      // A max of seminorms is a norm iff the kernels intersect trivially; for
      // weighted parts that means every coordinate is weighted by some part.
      Vector covered = Vector::Zero(impl_->dim);
      for (const auto& p : impl_->parts) {
        if (p.is_norm()) return true;
        if (p.kind() == SeminormKind::weighted_sup || p.kind() == SeminormKind::weighted_l1) covered += p.weights();
      }
      return (covered.array() > 0.0).all();
    }
  }
  return false;
}

std::optional<std::vector<Vector>> SeminormSpec::ball_vertices(const Vector& center, double radius) const {
  require_dim(center, impl_->dim, "seminorm ball");
  if (!(radius >= 0.0)) throw InputError("seminorm ball: negative radius");
  const Eigen::Index n = impl_->dim;
  std::vector<Vector> out;
  switch (impl_->kind) {
    case SeminormKind::weighted_sup: {
      if (!is_norm()) return std::nullopt;
      if (n > 20) throw ResourceError("seminorm ball: too many box vertices");
      const Eigen::Index m = Eigen::Index{1} << n;
      for (Eigen::Index k = 0; k < m; ++k) {
        Vector v = center;
        for (Eigen::Index i = 0; i < n; ++i) v[i] += (((k >> i) & 1) ? 1.0 : -1.0) * radius / impl_->weights[i];
        out.push_back(std::move(v));
      }
      return out;
    }
    case SeminormKind::weighted_l1: {
      if (!is_norm()) return std::nullopt;
      for (Eigen::Index i = 0; i < n; ++i) {
        for (double s : {1.0, -1.0}) {
          Vector v = center;
          v[i] += s * radius / impl_->weights[i];
          out.push_back(std::move(v));
        }
      }
      return out;
    }
    case SeminormKind::minkowski_polytope:
      for (Eigen::Index j = 0; j < impl_->vertices.cols(); ++j) out.push_back(center + radius * impl_->vertices.col(j));
      return out;
    case SeminormKind::max_of:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<std::vector<Vector>> SeminormSpec::dual_functionals() const {
  const Eigen::Index n = impl_->dim;
  std::vector<Vector> out;
  switch (impl_->kind) {
    case SeminormKind::weighted_sup:
      for (Eigen::Index i = 0; i < n; ++i) {
        out.push_back(impl_->weights[i] * Vector::Unit(n, i));
        out.push_back(-impl_->weights[i] * Vector::Unit(n, i));
      }
      return out;
    case SeminormKind::weighted_l1: {
      if (n > 20) return std::nullopt;
      const Eigen::Index m = Eigen::Index{1} << n;
      for (Eigen::Index k = 0; k < m; ++k) {
        Vector f(n);
        for (Eigen::Index i = 0; i < n; ++i) f[i] = (((k >> i) & 1) ? 1.0 : -1.0) * impl_->weights[i];
        out.push_back(std::move(f));
      }
      return out;
    }
    case SeminormKind::minkowski_polytope: {
      if (n != 2) return std::nullopt;
      // Facets of a symmetric planar polygon: sort vertices by angle, keep
      // edges of the hull; each edge {a, b} gives l with l.a = l.b = 1.
      std::vector<Vector> pts;
      for (Eigen::Index j = 0; j < impl_->vertices.cols(); ++j) pts.push_back(impl_->vertices.col(j));
      std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
        return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
      });
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vector& a = pts[i];
        const Vector& b = pts[(i + 1) % pts.size()];
        Matrix M(2, 2);
        M << a[0], a[1], b[0], b[1];
        if (std::abs(M.determinant()) < 1e-14) continue;
        const Vector l = M.fullPivLu().solve(Vector::Ones(2));
        out.push_back(l);
      }
      // Interior (non-extreme) points produce functionals that are dominated;
      // keep only those that never exceed 1 on the vertex set.
      std::vector<Vector> facets;
      for (const auto& l : out) {
        if ((impl_->vertices.transpose() * l).maxCoeff() <= 1.0 + 1e-12) facets.push_back(l);
      }
      return facets;
    }
    case SeminormKind::max_of: {
      for (const auto& p : impl_->parts) {
        auto d = p.dual_functionals();
        if (!d) return std::nullopt;
        out.insert(out.end(), d->begin(), d->end());
      }
      return out;
    }
  }
  return std::nullopt;
}

bool SeminormSpec::operator==(const SeminormSpec& other) const {
  if (impl_ == other.impl_) return true;
  if (kind() != other.kind() || dim() != other.dim()) return false;
  switch (kind()) {
    case SeminormKind::weighted_sup:
    case SeminormKind::weighted_l1:
      return weights() == other.weights();
    case SeminormKind::minkowski_polytope:
      return vertices() == other.vertices();
    case SeminormKind::max_of:
      return parts() == other.parts();
  }
  return false;
}

}  // namespace conelip
