#include "conelip/cone.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <Eigen/LU>

#include "conelip/errors.hpp"
#include "conelip/lp.hpp"

namespace conelip {

PolyCone::PolyCone(Eigen::Index dim, std::vector<Vector> generators)
    : dim_(dim), generators_(std::move(generators)) {
  if (dim_ <= 0) throw InputError("PolyCone: dimension must be positive");
  if (generators_.empty()) throw InputError("PolyCone: at least one generator is required");
  columns_.resize(dim_, static_cast<Eigen::Index>(generators_.size()));
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const Vector& g = generators_[i];
    require_dim(g, dim_, "PolyCone generator");
    require_finite(g, "PolyCone generator");
    const double scale = sup_norm(g);
    if (scale == 0.0) throw InputError("PolyCone: generator " + std::to_string(i) + " is zero");
    columns_.col(static_cast<Eigen::Index>(i)) = g / scale;
  }
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(dim_));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto root = [&](Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    return i;
  };
  for (const auto& g : generators_) {
    Eigen::Index first = -1;
    for (Eigen::Index k = 0; k < dim_; ++k) {
      if (g[k] == 0.0) continue;
      if (first < 0) {
        first = root(k);
      } else {
        parent[static_cast<std::size_t>(root(k))] = first;
      }
    }
  }
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(dim_), -1);
  for (Eigen::Index k = 0; k < dim_; ++k) {
    const auto r = static_cast<std::size_t>(root(k));
    if (slot[r] < 0) {
      slot[r] = static_cast<Eigen::Index>(blocks_.size());
      blocks_.emplace_back();
    }
    blocks_[static_cast<std::size_t>(slot[r])].coords.push_back(k);
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    Eigen::Index k = 0;
    while (generators_[i][k] == 0.0) ++k;
    blocks_[static_cast<std::size_t>(slot[static_cast<std::size_t>(root(k))])].gens.push_back(static_cast<Eigen::Index>(i));
  }
}

PolyCone PolyCone::orthant(Eigen::Index dim) {
  std::vector<Vector> gens;
  for (Eigen::Index i = 0; i < dim; ++i) gens.push_back(Vector::Unit(dim, i));
  return PolyCone(dim, std::move(gens));
}

PolyCone PolyCone::sector(double eps) {
  if (!(eps > 0.0)) throw InputError("PolyCone::sector: eps must be positive");
  return PolyCone(2, {make_vector({1.0, eps}), make_vector({-1.0, eps})});
}

PolyCone PolyCone::product(std::span<const PolyCone> factors) {
  if (factors.empty()) throw InputError("PolyCone::product: no factors");
  Eigen::Index total = 0;
  for (const auto& f : factors) total += f.dim();
  std::vector<Vector> gens;
  Eigen::Index offset = 0;
  for (const auto& f : factors) {
    for (const auto& g : f.generators()) {
      Vector lifted = Vector::Zero(total);
      lifted.segment(offset, f.dim()) = g;
      gens.push_back(std::move(lifted));
    }
    offset += f.dim();
  }
  return PolyCone(total, std::move(gens));
}

Matrix PolyCone::generator_matrix() const {
  Matrix m(dim_, static_cast<Eigen::Index>(generators_.size()));
  for (std::size_t i = 0; i < generators_.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = generators_[i];
  return m;
}

bool PolyCone::operator==(const PolyCone& other) const {
  return dim_ == other.dim_ && generators_.size() == other.generators_.size() &&
         generator_matrix() == other.generator_matrix();
}

MembershipResult cone_membership(const PolyCone& cone, const Vector& v, double tol) {
  require_dim(v, cone.dim(), "cone_member");
  require_finite(v, "cone_member");
  MembershipResult out;
  out.threshold = tol * (1.0 + sup_norm(v));
  if (sup_norm(v) == 0.0) {
    out.member = true;
    out.coefficients = Vector::Zero(static_cast<Eigen::Index>(cone.generators().size()));
    return out;
  }
  const Matrix& G = cone.normalized_matrix();
  out.coefficients = Vector::Zero(G.cols());
  for (const auto& block : cone.blocks()) {
    const auto rows = static_cast<Eigen::Index>(block.coords.size());
    const auto cols = static_cast<Eigen::Index>(block.gens.size());
    Vector vb(rows);
    for (Eigen::Index i = 0; i < rows; ++i) vb[i] = v[block.coords[static_cast<std::size_t>(i)]];
    if (vb.cwiseAbs().maxCoeff() == 0.0) continue;
    if (cols == 0) {
      out.residual = std::max(out.residual, vb.cwiseAbs().maxCoeff());
      continue;
    }
    Matrix Gb(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) Gb(i, j) = G(block.coords[static_cast<std::size_t>(i)], block.gens[static_cast<std::size_t>(j)]);
    Vector lam;
    bool direct = false;
    if (rows == cols) {
      Eigen::FullPivLU<Matrix> lu(Gb);
      if (lu.isInvertible()) {
        lam = lu.solve(vb).cwiseMax(0.0);
        direct = true;
      }
    }
    if (!direct) lam = lp::nnls(Gb, vb).x;
    out.residual = std::max(out.residual, (Gb * lam - vb).cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < cols; ++j) out.coefficients[block.gens[static_cast<std::size_t>(j)]] = lam[j];
  }
  out.member = out.residual <= out.threshold;
  return out;
}

bool cone_member(const PolyCone& cone, const Vector& v, double tol) { return cone_membership(cone, v, tol).member; }

bool order_le(const PolyCone& cone, const Vector& x, const Vector& y, double tol) {
  require_same_dim(x, y, "order_le");
  return cone_member(cone, y - x, tol);
}

OrderCheck order_check(const PolyCone& cone, const Vector& lhs, const Vector& rhs, double tol) {
  require_same_dim(lhs, rhs, "order_check");
  const Vector diff = rhs - lhs;
  const auto m = cone_membership(cone, diff, tol);
  OrderCheck out;
  out.holds = m.member;
  bool coordinate = cone.generators().size() == static_cast<std::size_t>(cone.dim());
  for (std::size_t i = 0; coordinate && i < cone.generators().size(); ++i) {
    coordinate = cone.normalized_matrix().col(static_cast<Eigen::Index>(i)) == Vector::Unit(cone.dim(), static_cast<Eigen::Index>(i));
  }
  out.residual = coordinate ? diff.minCoeff() : -m.residual;
  return out;
}

bool is_pointed(const PolyCone& cone, double tol) {
  for (const auto& g : cone.generators()) {
    if (cone_member(cone, -g, tol)) return false;
  }
  // Cancellation among several generators: is there l >= 0, sum l = 1, G l = 0?
  const Matrix& G = cone.normalized_matrix();
  const Eigen::Index m = G.cols();
  Matrix A(G.rows() + 1, m);
  A.topRows(G.rows()) = G;
  A.row(G.rows()).setOnes();
  Vector b = Vector::Zero(G.rows() + 1);
  b[G.rows()] = 1.0;
  const auto res = lp::solve_standard(A, b, Vector::Zero(m));
  if (res.status != lp::Status::optimal) return true;
  return (G * res.x).cwiseAbs().maxCoeff() > tol;
}

OrderInterval::OrderInterval(PolyCone cone, Vector lo, Vector hi)
    : cone_(std::move(cone)), lo_(std::move(lo)), hi_(std::move(hi)) {
  require_dim(lo_, cone_.dim(), "OrderInterval lo");
  require_dim(hi_, cone_.dim(), "OrderInterval hi");
}

bool OrderInterval::nonempty(double tol) const { return order_le(cone_, lo_, hi_, tol); }

bool OrderInterval::contains(const Vector& z, double tol) const {
  return order_le(cone_, lo_, z, tol) && order_le(cone_, z, hi_, tol);
}

bool full_hull_member(const PolyCone& cone, std::span<const Vector> points, const Vector& z, double tol) {
  if (points.empty()) throw InputError("full_hull_member: empty point set");
  require_dim(z, cone.dim(), "full_hull_member");
  bool below = false;
  bool above = false;
  for (const auto& a : points) {
    require_dim(a, cone.dim(), "full_hull_member");
    if (!below && cone_member(cone, z - a, tol)) below = true;
    if (!above && cone_member(cone, a - z, tol)) above = true;
    if (below && above) return true;
  }
  return false;
}

}  // namespace conelip
