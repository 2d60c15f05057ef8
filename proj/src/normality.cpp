#include "conelip/normality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "conelip/errors.hpp"

namespace conelip {
namespace {

constexpr Eigen::Index kMaxEnumeratedGenerators = 12;

// Extreme rays of a pointed planar cone.
std::pair<Vector, Vector> planar_extreme_rays(const PolyCone& cone) {
  const auto& gens = cone.generators();
  if (gens.size() == 1) return {gens[0], gens[0]};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Matrix M(2, 2);
      M.col(0) = gens[i];
      M.col(1) = gens[j];
      if (std::abs(M.determinant()) < 1e-300) continue;
      const PolyCone pair(2, {gens[i], gens[j]});
      bool spans = true;
      for (const auto& g : gens) {
        if (!cone_member(pair, g)) {
          spans = false;
          break;
        }
      }
      if (spans) return {gens[i], gens[j]};
    }
  }
  // All generators collinear and pointed: a single ray.
  return {gens[0], gens[0]};
}

double ratio_at(const SeminormSpec& q, const Vector& u, const Vector& v, double theta) {
  const Vector y = (1.0 - theta) * u + theta * v;
  const double qy = q(y);
  const double num = std::max({(1.0 - theta) * q(u), theta * q(v), qy});
  if (qy == 0.0) return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return num / qy;
}

double exact_planar_gamma(const PolyCone& cone, const SeminormSpec& q) {
  if (cone.dim() != 2 || q.dim() != 2) throw InputError("normality_gamma exact-2d: planar cone and seminorm required");
  if (!q.is_norm()) throw InputError("normality_gamma exact-2d: seminorm must be a norm");
  const auto functionals = q.dual_functionals();
  if (!functionals) throw InputError("normality_gamma exact-2d: seminorm is not planar polyhedral");
  const auto [u, v] = planar_extreme_rays(cone);

  // On y(theta) = (1-theta) u + theta v every vertex value of [0, y]_o and
  // q(y) are piecewise linear in theta; the ratio is linear-fractional
  // between breakpoints, so its sup is attained at one of them.
  std::vector<double> thetas = {0.0, 1.0};
  const double qu = q(u);
  const double qv = q(v);
  if (qu + qv > 0.0) thetas.push_back(qu / (qu + qv));
  const auto& ls = *functionals;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      const double a = ls[i].dot(u) - ls[j].dot(u);
      const double b = ls[i].dot(v) - ls[j].dot(v);
      if (a - b != 0.0) {
        const double t = a / (a - b);
        if (t > 0.0 && t < 1.0) thetas.push_back(t);
      }
    }
  }
  double best = 0.0;
  for (double t : thetas) best = std::max(best, ratio_at(q, u, v, t));
  return best;
}

// max over subsets S of q(sum_{i in S} c_i g_i), and whether every subset was visited.
double box_vertex_max(const Matrix& G, const Vector& offset, const Vector& coeffs, const SeminormSpec& q,
                      std::size_t random_subsets, std::mt19937_64& rng, std::size_t& evaluated) {
  const Eigen::Index m = G.cols();
  double best = 0.0;
  if (m <= kMaxEnumeratedGenerators) {
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      Vector x = offset;
      for (Eigen::Index i = 0; i < m; ++i) {
        if ((mask >> i) & 1U) x += coeffs[i] * G.col(i);
      }
      best = std::max(best, q(x));
      ++evaluated;
    }
    return best;
  }
  std::bernoulli_distribution coin(0.5);
  for (std::size_t s = 0; s < random_subsets; ++s) {
    Vector x = offset;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (coin(rng)) x += coeffs[i] * G.col(i);
    }
    best = std::max(best, q(x));
    ++evaluated;
  }
  return best;
}

}  // namespace

NormalityGamma normality_gamma(const PolyCone& cone, const SeminormSpec& q, GammaMode mode, std::size_t samples,
                               std::uint64_t seed) {
  if (q.dim() != cone.dim()) throw InputError("normality_gamma: seminorm and cone dimensions differ");
  if (!is_pointed(cone)) throw InputError("normality_gamma: cone is not pointed");
  NormalityGamma out;
  if (mode == GammaMode::exact_2d) {
    const double g = exact_planar_gamma(cone, q);
    out.gamma_exact = g;
    out.gamma_lower = g;
    out.intervals_examined = 1;
    return out;
  }
  const Matrix& G = cone.normalized_matrix();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vector zero = Vector::Zero(cone.dim());
  double best = 0.0;
  auto consider = [&](const Vector& coeffs) {
    const Vector y = G * coeffs;
    const double qy = q(y);
    std::size_t evaluated = 0;
    const double top = box_vertex_max(G, zero, coeffs, q, 64, rng, evaluated);
    out.intervals_examined += 1;
    if (qy == 0.0) {
      if (top > 0.0) best = std::numeric_limits<double>::infinity();
      return;
    }
    best = std::max(best, top / qy);
  };
  consider(Vector::Ones(G.cols()));
  for (std::size_t s = 0; s < samples; ++s) {
    Vector c(G.cols());
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = unit(rng);
    consider(c);
  }
  out.gamma_lower = best;
  return out;
}

OrderBoundedSup o_bounded_sup(const OrderInterval& interval, const SeminormSpec& q, std::size_t samples,
                              std::uint64_t seed) {
  const PolyCone& cone = interval.cone();
  if (q.dim() != cone.dim()) throw InputError("o_bounded_sup: seminorm and cone dimensions differ");
  const Vector diff = interval.hi() - interval.lo();
  const auto membership = cone_membership(cone, diff);
  if (!membership.member) throw InputError("o_bounded_sup: empty interval (endpoints are incomparable)");

  const Matrix& G = cone.normalized_matrix();
  Eigen::FullPivLU<Matrix> lu(G);
  lu.setThreshold(1e-12);
  const bool simplicial = lu.rank() == G.cols();

  OrderBoundedSup out;
  std::mt19937_64 rng(seed);
  if (simplicial && G.cols() <= kMaxEnumeratedGenerators) {
    out.value = box_vertex_max(G, interval.lo(), membership.coefficients, q, 0, rng, out.points_evaluated);
    out.certified = true;
    return out;
  }
  // Points lo + sum mu_i g_i with 0 <= mu <= coefficients all lie in the
  // interval, so the sampled value is a valid lower estimate.
  out.value = box_vertex_max(G, interval.lo(), membership.coefficients, q, samples, rng, out.points_evaluated);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    Vector x = interval.lo();
    for (Eigen::Index i = 0; i < G.cols(); ++i) x += unit(rng) * membership.coefficients[i] * G.col(i);
    out.value = std::max(out.value, q(x));
    ++out.points_evaluated;
  }
  out.certified = false;
  return out;
}

}  // namespace conelip
