#include "conelip/domain.hpp"

#include <cmath>
#include <limits>

#include "conelip/errors.hpp"

namespace conelip {

Domain Domain::whole(Eigen::Index dim) {
  if (dim <= 0) throw InputError("domain: dimension must be positive");
  Domain d;
  d.kind_ = Kind::whole;
  d.dim_ = dim;
  return d;
}

Domain Domain::box(Vector lo, Vector hi) {
  require_same_dim(lo, hi, "box domain");
  if (lo.size() == 0) throw InputError("box domain: empty bounds");
  if ((lo.array() > hi.array()).any()) throw InputError("box domain: lo exceeds hi");
  if (lo.array().isNaN().any() || hi.array().isNaN().any()) throw InputError("box domain: NaN bound");
  Domain d;
  d.kind_ = Kind::box;
  d.dim_ = lo.size();
  d.lo_ = std::move(lo);
  d.hi_ = std::move(hi);
  return d;
}

Domain Domain::ball(Vector center, double radius, SeminormSpec p) {
  require_dim(center, p.dim(), "ball domain");
  require_finite(center, "ball domain center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InputError("ball domain: radius must be positive and finite");
  Domain d;
  d.kind_ = Kind::ball;
  d.dim_ = center.size();
  d.center_ = std::move(center);
  d.radius_ = radius;
  d.p_ = std::move(p);
  return d;
}

bool Domain::contains(const Vector& x, double tol) const {
  if (x.size() != dim_) return false;
  if (!x.allFinite()) return false;
  switch (kind_) {
    case Kind::whole:
      return true;
    case Kind::box:
      for (Eigen::Index i = 0; i < dim_; ++i) {
        const double slack = tol * (1.0 + std::abs(x[i]));
        if (x[i] < lo_[i] - slack || x[i] > hi_[i] + slack) return false;
      }
      return true;
    case Kind::ball:
      return (*p_)(x - center_) <= radius_ * (1.0 + tol) + tol;
  }
  return false;
}

Vector Domain::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vector x(dim_);
  switch (kind_) {
    case Kind::whole:
      for (Eigen::Index i = 0; i < dim_; ++i) x[i] = unit(rng);
      return x;
    case Kind::box:
      for (Eigen::Index i = 0; i < dim_; ++i) {
        const double lo = std::isfinite(lo_[i]) ? lo_[i] : (std::isfinite(hi_[i]) ? hi_[i] - 2.0 : -1.0);
        const double hi = std::isfinite(hi_[i]) ? hi_[i] : lo + 2.0;
        x[i] = lo + (hi - lo) * 0.5 * (unit(rng) + 1.0);
      }
      return x;
    case Kind::ball: {
      // Rejection from the bounding box of the ball.
      Vector half(dim_);
      if (p_->kind() == SeminormKind::weighted_sup || p_->kind() == SeminormKind::weighted_l1) {
        for (Eigen::Index i = 0; i < dim_; ++i) {
          const double w = p_->weights()[i];
          half[i] = w > 0.0 ? radius_ / w : radius_;
        }
      } else if (p_->kind() == SeminormKind::minkowski_polytope) {
        half = radius_ * p_->vertices().cwiseAbs().rowwise().maxCoeff();
      } else {
        half = Vector::Constant(dim_, radius_);
      }
      for (int attempt = 0; attempt < 100000; ++attempt) {
        for (Eigen::Index i = 0; i < dim_; ++i) x[i] = center_[i] + half[i] * unit(rng);
        if (contains(x)) return x;
      }
      return center_;
    }
  }
  return x;
}

std::pair<double, double> Domain::line_range(const Vector& base, const Vector& dir) const {
  require_dim(base, dim_, "line_range");
  require_dim(dir, dim_, "line_range");
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case Kind::whole:
      return {-inf, inf};
    case Kind::box: {
      double tmin = -inf;
      double tmax = inf;
      for (Eigen::Index i = 0; i < dim_; ++i) {
        if (dir[i] == 0.0) {
          if (base[i] < lo_[i] || base[i] > hi_[i]) return {1.0, 0.0};
          continue;
        }
        double a = (lo_[i] - base[i]) / dir[i];
        double b = (hi_[i] - base[i]) / dir[i];
        if (a > b) std::swap(a, b);
        tmin = std::max(tmin, a);
        tmax = std::min(tmax, b);
      }
      return {tmin, tmax};
    }
    case Kind::ball: {
      // t -> p(base + t dir - center) is convex; locate the sublevel set by bisection.
      auto g = [&](double t) { return (*p_)(base + t * dir - center_); };
      if (g(0.0) > radius_ * (1.0 + 1e-12)) return {1.0, 0.0};
      if ((*p_)(dir) == 0.0) return {-inf, inf};
      auto edge = [&](double sign) {
        double inside = 0.0;
        double outside = 1.0;
        while (g(sign * outside) <= radius_) outside *= 2.0;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (inside + outside);
          (g(sign * mid) <= radius_ ? inside : outside) = mid;
        }
        return sign * inside;
      };
      return {edge(-1.0), edge(1.0)};
    }
  }
  return {-inf, inf};
}

}  // namespace conelip
