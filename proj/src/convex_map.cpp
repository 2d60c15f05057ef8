#include "conelip/convex_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "conelip/errors.hpp"

namespace conelip {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Eigen::Index body_target_dim(const MapBody& body) {
  return std::visit(Overloaded{
                        [](const MaxAffineBody& b) { return static_cast<Eigen::Index>(b.outputs.size()); },
                        [](const QuadraticBody& b) { return static_cast<Eigen::Index>(b.outputs.size()); },
                        [](const PathBody& b) { return b.values.empty() ? Eigen::Index{0} : b.values.front().size(); },
                        [](const CompositeBody& b) {
                          Eigen::Index n = 0;
                          for (const auto& p : b.parts) n += p->target_dim();
                          return n;
                        },
                    },
                    body);
}

Vector path_eval(const PathBody& b, double t) {
  const Eigen::Index m = b.values.front().size();
  if (b.breakpoints.size() == 1) return b.values.front();
  auto it = std::upper_bound(b.breakpoints.begin(), b.breakpoints.end(), t);
  std::size_t k = it == b.breakpoints.begin() ? 0 : static_cast<std::size_t>(it - b.breakpoints.begin()) - 1;
  k = std::min(k, b.breakpoints.size() - 2);
  const double t0 = b.breakpoints[k];
  const double t1 = b.breakpoints[k + 1];
  // Exact at breakpoints.
  if (t == t0) return b.values[k];
  if (t == t1) return b.values[k + 1];
  const double s = (t - t0) / (t1 - t0);
  Vector out(m);
  out = (1.0 - s) * b.values[k] + s * b.values[k + 1];
  return out;
}

// Slope of the segment used for evaluation at t (right segment at breakpoints).
Vector path_slope(const PathBody& b, double t) {
  const Eigen::Index m = b.values.front().size();
  if (b.breakpoints.size() == 1) return Vector::Zero(m);
  auto it = std::upper_bound(b.breakpoints.begin(), b.breakpoints.end(), t);
  std::size_t k = it == b.breakpoints.begin() ? 0 : static_cast<std::size_t>(it - b.breakpoints.begin()) - 1;
  k = std::min(k, b.breakpoints.size() - 2);
  return (b.values[k + 1] - b.values[k]) / (b.breakpoints[k + 1] - b.breakpoints[k]);
}

Matrix symmetrized(const Matrix& Q) { return 0.5 * (Q + Q.transpose()); }

void validate_quadratic(std::vector<QuadraticOutput>& outputs, Eigen::Index dim, bool require_psd) {
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    auto& o = outputs[i];
    if (o.Q.rows() != dim || o.Q.cols() != dim) throw InputError("psd-quadratic: Q has wrong shape in output " + std::to_string(i));
    if (o.c.size() == 0) o.c = Vector::Zero(dim);
    require_dim(o.c, dim, "psd-quadratic linear term");
    if (!o.Q.allFinite() || !o.c.allFinite() || !std::isfinite(o.d)) throw InputError("psd-quadratic: non-finite coefficient");
    o.Q = symmetrized(o.Q);
    if (require_psd) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(o.Q, Eigen::EigenvaluesOnly);
      const double scale = std::max(1.0, o.Q.cwiseAbs().maxCoeff());
      if (es.eigenvalues().minCoeff() < -1e-10 * scale) {
        throw InputError("psd-quadratic: matrix of output " + std::to_string(i) + " is not positive semidefinite");
      }
    }
  }
}

}  // namespace

bool is_coordinate_cone(const PolyCone& cone) {
  for (const auto& g : cone.generators()) {
    if ((g.array() < 0.0).any()) return false;
  }
  for (Eigen::Index i = 0; i < cone.dim(); ++i) {
    if (!cone_member(cone, Vector::Unit(cone.dim(), i))) return false;
  }
  return true;
}

PathSlopeCheck check_path_slopes(const std::vector<double>& ts, const std::vector<Vector>& vs, const PolyCone& cone) {
  PathSlopeCheck out;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) out.slopes.push_back((vs[k + 1] - vs[k]) / (ts[k + 1] - ts[k]));
  for (std::size_t k = 0; k + 1 < out.slopes.size(); ++k) {
    out.steps.push_back(cone_membership(cone, out.slopes[k + 1] - out.slopes[k]));
    if (!out.steps.back().member) out.monotone = false;
  }
  return out;
}

ConvexMap::ConvexMap(MapBody body, Domain domain, std::optional<PolyCone> target_cone)
    : body_(std::move(body)),
      domain_(std::move(domain)),
      cone_(target_cone ? *target_cone : PolyCone::orthant(std::max<Eigen::Index>(1, body_target_dim(body_)))) {
  target_dim_ = body_target_dim(body_);
  if (target_dim_ <= 0) throw InputError("ConvexMap: body has no outputs");
  const Eigen::Index n = domain_.dim();

  std::visit(Overloaded{
                 [&](MaxAffineBody& b) {
                   for (std::size_t i = 0; i < b.outputs.size(); ++i) {
                     if (b.outputs[i].empty()) throw InputError("max-affine: output " + std::to_string(i) + " has no pieces");
                     for (auto& piece : b.outputs[i]) {
                       require_dim(piece.weight, n, "max-affine weight");
                       require_finite(piece.weight, "max-affine weight");
                       if (!std::isfinite(piece.offset)) throw InputError("max-affine: non-finite offset");
                     }
                   }
                 },
                 [&](QuadraticBody& b) { validate_quadratic(b.outputs, n, true); },
                 [&](PathBody& b) {
                   if (b.breakpoints.empty() || b.breakpoints.size() != b.values.size()) {
                     throw InputError("pw-path: breakpoints and values must be nonempty and of equal length");
                   }
                   for (std::size_t k = 0; k + 1 < b.breakpoints.size(); ++k) {
                     if (!(b.breakpoints[k] < b.breakpoints[k + 1])) throw InputError("pw-path: breakpoints must increase strictly");
                   }
                   for (const auto& v : b.values) {
                     require_dim(v, b.values.front().size(), "pw-path value");
                     require_finite(v, "pw-path value");
                   }
                   if (b.functional.size() == 0) {
                     if (n != 1) throw InputError("pw-path: a functional is required when the domain is not one-dimensional");
                     b.functional = Vector::Ones(1);
                   }
                   require_dim(b.functional, n, "pw-path functional");
                 },
                 [&](CompositeBody& b) {
                   if (b.parts.empty()) throw InputError("composite: no parts");
                   for (const auto& p : b.parts) {
                     if (p->domain_dim() != n) throw InputError("composite: part domain dimension differs");
                   }
                 },
             },
             body_);

  if (cone_.dim() != target_dim_) throw InputError("ConvexMap: target cone dimension differs from the number of outputs");
  coordinate_target_ = is_coordinate_cone(cone_);

  if (const auto* path = std::get_if<PathBody>(&body_)) {
    convex_ = check_path_slopes(path->breakpoints, path->values, cone_).monotone;
  } else if (const auto* comp = std::get_if<CompositeBody>(&body_)) {
    convex_ = std::all_of(comp->parts.begin(), comp->parts.end(), [](const auto& p) { return p->convexity_verified(); });
  } else {
    convex_ = coordinate_target_;
  }
}

ConvexMap ConvexMap::max_affine(std::vector<std::vector<AffinePiece>> outputs, Domain domain) {
  return ConvexMap(MaxAffineBody{std::move(outputs)}, std::move(domain));
}

ConvexMap ConvexMap::quadratic(std::vector<QuadraticOutput> outputs, Domain domain) {
  return ConvexMap(QuadraticBody{std::move(outputs)}, std::move(domain));
}

ConvexMap ConvexMap::path(std::vector<double> breakpoints, std::vector<Vector> values, Domain domain,
                          std::optional<PolyCone> target_cone, std::optional<Vector> functional) {
  PathBody body{functional ? *functional : Vector(), std::move(breakpoints), std::move(values)};
  return ConvexMap(std::move(body), std::move(domain), std::move(target_cone));
}

ConvexMap ConvexMap::composite(std::vector<ConvexMap> parts) {
  if (parts.empty()) throw InputError("composite: no parts");
  std::vector<PolyCone> cones;
  CompositeBody body;
  for (auto& p : parts) {
    cones.push_back(p.target_cone());
    body.parts.push_back(std::make_shared<const ConvexMap>(std::move(p)));
  }
  Domain domain = body.parts.front()->domain();
  return ConvexMap(std::move(body), std::move(domain), PolyCone::product(cones));
}

ConvexMap ConvexMap::nonconvex_control(std::vector<QuadraticOutput> outputs, Domain domain) {
  validate_quadratic(outputs, domain.dim(), true);
  for (auto& o : outputs) {
    o.Q = -o.Q;
    o.c = -o.c;
    o.d = -o.d;
  }
  return ConvexMap(QuadraticBody{std::move(outputs)}, std::move(domain), UncheckedTag{});
}

ConvexMap::ConvexMap(QuadraticBody body, Domain domain, UncheckedTag)
    : body_(std::move(body)),
      domain_(std::move(domain)),
      cone_(PolyCone::orthant(static_cast<Eigen::Index>(std::get<QuadraticBody>(body_).outputs.size()))),
      target_dim_(cone_.dim()),
      convex_(false) {}

Vector ConvexMap::operator()(const Vector& x) const {
  require_dim(x, domain_dim(), "ConvexMap evaluation");
  if (!domain_.contains(x)) throw InputError("ConvexMap evaluation: point outside the domain");
  return evaluate_unchecked(x);
}

double ConvexMap::scalar(const Vector& x) const {
  if (target_dim_ != 1) throw InputError("ConvexMap::scalar: map is vector-valued");
  return (*this)(x)[0];
}

Vector ConvexMap::evaluate_unchecked(const Vector& x) const {
  return std::visit(Overloaded{
                        [&](const MaxAffineBody& b) {
                          Vector out(static_cast<Eigen::Index>(b.outputs.size()));
                          for (std::size_t i = 0; i < b.outputs.size(); ++i) {
                            double best = -std::numeric_limits<double>::infinity();
                            for (const auto& p : b.outputs[i]) best = std::max(best, p.weight.dot(x) + p.offset);
                            out[static_cast<Eigen::Index>(i)] = best;
                          }
                          return out;
                        },
                        [&](const QuadraticBody& b) {
                          Vector out(static_cast<Eigen::Index>(b.outputs.size()));
                          for (std::size_t i = 0; i < b.outputs.size(); ++i) {
                            const auto& o = b.outputs[i];
                            out[static_cast<Eigen::Index>(i)] = x.dot(o.Q * x) + o.c.dot(x) + o.d;
                          }
                          return out;
                        },
                        [&](const PathBody& b) { return path_eval(b, b.functional.dot(x)); },
                        [&](const CompositeBody& b) {
                          Vector out(target_dim_);
                          Eigen::Index offset = 0;
                          for (const auto& p : b.parts) {
                            out.segment(offset, p->target_dim()) = p->evaluate_unchecked(x);
                            offset += p->target_dim();
                          }
                          return out;
                        },
                    },
                    body_);
}

std::pair<Vector, Matrix> ConvexMap::linearization(const Vector& x) const {
  require_dim(x, domain_dim(), "linearization");
  const Eigen::Index n = domain_dim();
  Matrix J(target_dim_, n);
  std::visit(Overloaded{
                 [&](const MaxAffineBody& b) {
                   for (std::size_t i = 0; i < b.outputs.size(); ++i) {
                     const AffinePiece* best = &b.outputs[i].front();
                     double val = best->weight.dot(x) + best->offset;
                     for (const auto& p : b.outputs[i]) {
                       const double v = p.weight.dot(x) + p.offset;
                       if (v > val) {
                         val = v;
                         best = &p;
                       }
                     }
                     J.row(static_cast<Eigen::Index>(i)) = best->weight.transpose();
                   }
                 },
                 [&](const QuadraticBody& b) {
                   for (std::size_t i = 0; i < b.outputs.size(); ++i) {
                     const auto& o = b.outputs[i];
                     J.row(static_cast<Eigen::Index>(i)) = (2.0 * o.Q * x + o.c).transpose();
                   }
                 },
                 [&](const PathBody& b) {
                   const Vector slope = path_slope(b, b.functional.dot(x));
                   J = slope * b.functional.transpose();
                 },
                 [&](const CompositeBody& b) {
                   Eigen::Index offset = 0;
                   for (const auto& p : b.parts) {
                     J.middleRows(offset, p->target_dim()) = p->linearization(x).second;
                     offset += p->target_dim();
                   }
                 },
             },
             body_);
  return {evaluate_unchecked(x), J};
}

std::vector<bool> ConvexMap::inert_coordinates() const {
  const Eigen::Index n = domain_dim();
  std::vector<bool> inert(static_cast<std::size_t>(n), true);
  auto mark = [&](const Vector& used) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[j] != 0.0) inert[static_cast<std::size_t>(j)] = false;
    }
  };
  std::visit(Overloaded{
                 [&](const MaxAffineBody& b) {
                   for (const auto& out : b.outputs)
                     for (const auto& p : out) mark(p.weight);
                 },
                 [&](const QuadraticBody& b) {
                   for (const auto& o : b.outputs) {
                     mark(o.c);
                     mark(o.Q.cwiseAbs().colwise().sum().transpose());
                   }
                 },
                 [&](const PathBody& b) { mark(b.functional); },
                 [&](const CompositeBody& b) {
                   for (const auto& p : b.parts) {
                     const auto sub = p->inert_coordinates();
                     for (std::size_t j = 0; j < sub.size(); ++j) inert[j] = inert[j] && sub[j];
                   }
                 },
             },
             body_);
  return inert;
}

bool ConvexMap::is_affine() const {
  return std::visit(Overloaded{
                        [](const MaxAffineBody& b) {
                          return std::all_of(b.outputs.begin(), b.outputs.end(), [](const auto& o) { return o.size() == 1; });
                        },
                        [](const QuadraticBody& b) {
                          return std::all_of(b.outputs.begin(), b.outputs.end(),
                                             [](const auto& o) { return o.Q.cwiseAbs().maxCoeff() == 0.0; });
                        },
                        [](const PathBody& b) { return b.breakpoints.size() <= 2; },
                        [](const CompositeBody& b) {
                          return std::all_of(b.parts.begin(), b.parts.end(), [](const auto& p) { return p->is_affine(); });
                        },
                    },
                    body_);
}

}  // namespace conelip
