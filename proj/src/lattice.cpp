#include "conelip/lattice.hpp"

#include <algorithm>

namespace conelip {
namespace {

Vector vmax(const Vector& a, const Vector& b) { return a.cwiseMax(b); }
Vector vmin(const Vector& a, const Vector& b) { return a.cwiseMin(b); }
Vector vabs(const Vector& a) { return vmax(a, -a); }
double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }
// Largest amount by which lhs exceeds rhs.
double violation(const Vector& lhs, const Vector& rhs) { return std::max(0.0, (lhs - rhs).maxCoeff()); }

}  // namespace

LatticeOps lattice_ops(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "lattice_ops");
  const Vector zero = Vector::Zero(x.size());
  return LatticeOps{vmax(x, y), vmin(x, y), vmax(x, zero), vmax(-x, zero), vabs(x)};
}

LatticeIdentityResiduals lattice_identity_residuals(const Vector& x, const Vector& y, const Vector& z) {
  require_same_dim(x, y, "lattice identities");
  require_same_dim(x, z, "lattice identities");
  LatticeIdentityResiduals r;
  const auto ox = lattice_ops(x, y);
  const Vector zero = Vector::Zero(x.size());

  r.decomposition = std::max({max_abs(x - (ox.pos_part - ox.neg_part)), max_abs(vmin(ox.pos_part, ox.neg_part)),
                              max_abs(ox.abs - (ox.pos_part + ox.neg_part)), max_abs(vabs(-x) - ox.abs)});

  const Vector ax = vabs(x);
  const Vector ay = vabs(y);
  const Vector sum = vabs(x + y);
  const Vector diff = vabs(x - y);
  r.triangle = std::max(violation(vabs(ax - ay), sum), violation(sum, ax + ay));

  const Vector a = vabs(z);
  const bool lhs = (ax.array() <= a.array()).all();
  const bool rhs = (x.array() <= a.array()).all() && ((-x).array() <= a.array()).all();
  r.abs_bound_equivalence = lhs == rhs;
  r.abs_bound = std::max(violation(ax, vmax(x, -x)), violation(vmax(x, -x), ax));

  r.sup_inf_abs = std::max(max_abs(vmax(ax, ay) - 0.5 * (sum + diff)), max_abs(vmin(ax, ay) - 0.5 * vabs(sum - diff)));

  Vector lo(x.size()), mid(x.size()), hi(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double v[3] = {x[i], y[i], z[i]};
    std::sort(v, v + 3);
    lo[i] = v[0];
    mid[i] = v[1];
    hi[i] = v[2];
  }
  r.sandwich = violation(vabs(mid), vmax(vabs(lo), vabs(hi)));
  return r;
}

}  // namespace conelip
