#include "conelip/pathology.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "conelip/errors.hpp"

namespace conelip {

namespace {

PolyCone product_cone(int N) {
  std::vector<PolyCone> factors;
  for (int k = 1; k <= N; ++k) factors.push_back(PolyCone::sector(std::pow(3.0, -k) / 2.0));
  return PolyCone::product(factors);
}

}  // namespace

BlockConeSpace::BlockConeSpace(int N) : N_(N), cone_(N >= 1 && N <= 30 ? product_cone(N) : PolyCone::orthant(1)) {
  if (N < 1 || N > 30) throw InputError("block space: block count must lie in 1..30");
}

double BlockConeSpace::eps(int k) const {
  if (k < 1 || k > N_) throw InputError("block space: block index out of range");
  return std::pow(3.0, -k) / 2.0;
}

PolyCone BlockConeSpace::block_cone(int k) const { return PolyCone::sector(eps(k)); }

Vector BlockConeSpace::embed(int k, const Vector& block) const {
  if (k < 1 || k > N_) throw InputError("block space: block index out of range");
  require_dim(block, 2, "block space");
  Vector out = Vector::Zero(dim());
  out.segment(2 * (k - 1), 2) = block;
  return out;
}

BlockPairs build_block_pairs(int N) {
  BlockPairs out{BlockConeSpace(N), {}};
  for (int k = 1; k <= N; ++k) {
    out.pairs.push_back({out.space.embed(k, make_vector({std::pow(3.0, k), 0.5})), out.space.embed(k, make_vector({0.0, 1.0}))});
  }
  return out;
}

Step1Report vesely_step1(const BlockPairs& bp, int n) {
  const int N = bp.space.blocks();
  if (n < 1 || n > N) throw InputError("vesely_step1: n must lie in 1..N");
  Step1Report out;
  out.w = Vector::Zero(bp.space.dim());
  for (int k = 1; k <= N; ++k) out.w += std::ldexp(1.0, -k) * bp.pairs[static_cast<std::size_t>(k - 1)].y;
  Vector tail = out.w;
  for (int k = 1; k < n; ++k) tail -= std::ldexp(1.0, -k) * bp.pairs[static_cast<std::size_t>(k - 1)].y;
  out.z_n = tail - std::ldexp(1.0, -n) * bp.pairs[static_cast<std::size_t>(n - 1)].x;
  const SeminormSpec norm = bp.space.norm();
  out.norm_z_n = norm(out.z_n);
  out.tail_norm = norm(tail);
  out.lower_bound = std::pow(1.5, n) - out.tail_norm;
  const Vector zero = Vector::Zero(bp.space.dim());
  out.order_ok = order_le(bp.space.cone(), zero, out.z_n) && order_le(bp.space.cone(), out.z_n, out.w);
  return out;
}

Step2Report vesely_step2(double lambda, double alpha, const BlockPairs& bp, int n_max) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("vesely_step2: lambda must lie in (0, 1)");
  const double bound = (1.0 - lambda + lambda * lambda) / lambda;
  if (!(alpha > 1.0 && alpha < bound)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "vesely_step2: alpha must satisfy 1 < alpha < (1 - lambda + lambda^2) / lambda = " << bound;
    throw InputError(msg.str());
  }
  const int N = bp.space.blocks();
  if (n_max < 1 || n_max > N) throw InputError("vesely_step2: n_max must lie in 1..N");
  const SeminormSpec norm = bp.space.norm();
  const PolyCone& C = bp.space.cone();
  Vector w = Vector::Zero(bp.space.dim());
  for (int k = 1; k <= N; ++k) w += std::ldexp(1.0, -k) * bp.pairs[static_cast<std::size_t>(k - 1)].y;

  std::vector<Vector> ws;
  std::vector<int> ks;
  std::vector<double> norms;
  for (int n = 0; n <= n_max; ++n) {
    const double scale = std::pow(lambda, 2 * n);
    int chosen = 0;
    Vector wn;
    for (int k = 1; k <= N; ++k) {
      wn = scale * (w + (alpha - 1.0) * std::ldexp(1.0, -k) * bp.pairs[static_cast<std::size_t>(k - 1)].x);
      if (norm(wn) > n) {
        chosen = k;
        break;
      }
    }
    if (chosen == 0) {
      throw InputError("vesely_step2: no block k <= " + std::to_string(N) + " gives ||w_" + std::to_string(n) +
                       "|| > " + std::to_string(n) + "; use more blocks");
    }
    ws.push_back(wn);
    ks.push_back(chosen);
    norms.push_back(norm(wn));
  }

  std::vector<double> bps{-1.0, 0.0};
  std::vector<Vector> vals{Vector::Zero(w.size()), Vector::Zero(w.size())};
  for (int n = n_max; n >= 0; --n) {
    bps.push_back(std::pow(lambda, n));
    vals.push_back(ws[static_cast<std::size_t>(n)]);
  }
  std::vector<Vector> mu;
  for (int n = 0; n < n_max; ++n) {
    const double ln = std::pow(lambda, n);
    mu.push_back((ws[static_cast<std::size_t>(n)] - ws[static_cast<std::size_t>(n + 1)]) / (ln - lambda * ln));
  }
  const auto slopes = check_path_slopes(bps, vals, C);
  bool bounded = true;
  const Vector zero = Vector::Zero(w.size());
  for (const auto& v : ws) bounded = bounded && order_le(C, zero, v) && order_le(C, v, alpha * w);
  bool exceed = true;
  for (int n = 0; n <= n_max; ++n) exceed = exceed && norms[static_cast<std::size_t>(n)] > n;

  Step2Report out{ConvexMap::path(bps, vals, Domain::whole(1), C), lambda, alpha, bound, std::move(ws), std::move(ks),
                  std::move(norms), std::move(mu), alpha * lambda * lambda < 1.0, slopes.monotone, exceed, bounded};
  return out;
}

ConvexMap vesely_step3(const ConvexMap& phi, const Vector& x_star, const Vector& v, Eigen::Index d) {
  const auto* path = std::get_if<PathBody>(&phi.body());
  if (path == nullptr || phi.domain_dim() != 1) throw InputError("vesely_step3: phi must be a path on the real line");
  require_dim(x_star, d, "vesely_step3");
  require_dim(v, d, "vesely_step3");
  const double pairing = x_star.dot(v);
  if (std::abs(pairing - 1.0) > 1e-12) throw InputError("vesely_step3: <x_star, v> must equal 1");
  const Vector scaled = path->functional[0] * x_star;
  return ConvexMap::path(path->breakpoints, path->values, Domain::whole(d), phi.target_cone(), scaled);
}

SlabCheck slab_order_bound(const ConvexMap& f, const Vector& x_star, double eps, const Vector& upper,
                           std::size_t samples, std::uint64_t seed) {
  require_dim(x_star, f.domain_dim(), "slab check");
  if (!(eps > 0.0)) throw InputError("slab check: eps must be positive");
  const double xs2 = x_star.squaredNorm();
  if (xs2 == 0.0) throw InputError("slab check: zero functional");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  SlabCheck out;
  const Vector zero = Vector::Zero(f.target_dim());
  for (std::size_t s = 0; s < samples; ++s) {
    Vector x(f.domain_dim());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = unit(rng);
    // move x onto the slab: replace its x_star component by a value in (-eps, eps)
    x += ((eps * unit(rng) * (1.0 - 1e-12)) - x_star.dot(x)) / xs2 * x_star;
    const Vector y = f(x);
    ++out.samples;
    if (!order_le(f.target_cone(), zero, y) || !order_le(f.target_cone(), y, upper)) {
      if (!out.witness) out.witness = x;
      ++out.violations;
    }
  }
  return out;
}

double poly_eval(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double poly_derivative_at(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * coeffs[k];
  return acc;
}

double poly_sup_sampled(const std::vector<double>& coeffs, std::size_t sample_count) {
  if (sample_count < 2) throw InputError("poly_sup_sampled: need at least two samples");
  double best = 0.0;
  for (std::size_t i = 0; i < sample_count; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(sample_count - 1);
    best = std::max(best, std::abs(poly_eval(coeffs, x)));
  }
  return best;
}

PolynomialReport polynomial_example(int n, std::size_t sample_count) {
  if (n < 1) throw InputError("polynomial_example: n must be at least 1");
  std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
  const double root = std::sqrt(static_cast<double>(n));
  coeffs.back() = 1.0 / root;
  PolynomialReport out;
  out.norm_Pn = 1.0 / root;
  out.sampled_norm = poly_sup_sampled(coeffs, sample_count);
  out.f_Pn = root;
  out.ratio = out.f_Pn / out.norm_Pn;
  return out;
}

}  // namespace conelip
