#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "conelip/convex_map.hpp"
#include "conelip/seminorm.hpp"

namespace conelip {

/// R^{2N} with the sup norm, ordered by C_1 x ... x C_N where
/// C_k = cone{(1, e_k), (-1, e_k)} and e_k = 3^-k / 2. Blocks are 1-based.
class BlockConeSpace {
 public:
  explicit BlockConeSpace(int N);

  int blocks() const { return N_; }
  Eigen::Index dim() const { return 2 * static_cast<Eigen::Index>(N_); }
  double eps(int k) const;
  PolyCone block_cone(int k) const;
  const PolyCone& cone() const { return cone_; }
  SeminormSpec norm() const { return SeminormSpec::sup_norm(dim()); }
  /// The ambient vector carrying `block` (length 2) in block k.
  Vector embed(int k, const Vector& block) const;

 private:
  int N_;
  PolyCone cone_;
};

struct BlockPair {
  Vector x;  ///< (3^k, 1/2) in block k
  Vector y;  ///< (0, 1) in block k
};

struct BlockPairs {
  BlockConeSpace space;
  std::vector<BlockPair> pairs;  ///< pairs[k - 1] lives in block k
};

/// InputError unless 1 <= N <= 30.
BlockPairs build_block_pairs(int N);

struct Step1Report {
  Vector w;
  Vector z_n;
  double norm_z_n = 0.0;
  double tail_norm = 0.0;    ///< ||w - sum_{k<n} 2^-k y_k||
  double lower_bound = 0.0;  ///< (3/2)^n - tail_norm
  bool order_ok = false;     ///< 0 <= z_n <= w
};

/// InputError unless 1 <= n <= N.
Step1Report vesely_step1(const BlockPairs& bp, int n);

struct Step2Report {
  ConvexMap phi;
  double lambda = 0.0;
  double alpha = 0.0;
  double alpha_bound = 0.0;          ///< (1 - lambda + lambda^2) / lambda
  std::vector<Vector> w;             ///< w_0 .. w_{n_max}
  std::vector<int> k;                ///< selected block per n
  std::vector<double> norms;         ///< ||w_n||
  std::vector<Vector> mu;            ///< mu_0 .. mu_{n_max - 1}
  bool disjoint = false;             ///< alpha lambda^2 < 1
  bool mu_monotone = false;          ///< consecutive path slopes C-increasing
  bool norms_exceed = false;         ///< ||w_n|| > n for every n
  bool values_bounded = false;       ///< 0 <= w_n <= alpha w
};

/// The piecewise-affine path with phi = 0 on (-inf, 0], phi(lambda^n) = w_n
/// for n <= n_max, affine in between and on [1, inf) (continuing the segment
/// [lambda, 1]). The block rule w_n = lambda^{2n} (w + (alpha - 1) 2^-k x_k)
/// takes the smallest k with ||w_n|| > n; InputError when alpha is outside
/// (1, (1 - lambda + lambda^2) / lambda), lambda is outside (0, 1), or no
/// block is deep enough.
Step2Report vesely_step2(double lambda, double alpha, const BlockPairs& bp, int n_max);

/// f(x) = phi(<x_star, x>) on R^d for a path phi. InputError unless
/// <x_star, v> = 1.
ConvexMap vesely_step3(const ConvexMap& phi, const Vector& x_star, const Vector& v, Eigen::Index d);

struct SlabCheck {
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::optional<Vector> witness;
};

/// Samples x with |<x_star, x>| < eps (other directions in [-1, 1]) and tests
/// 0 <= f(x) <= upper in the target order.
SlabCheck slab_order_bound(const ConvexMap& f, const Vector& x_star, double eps, const Vector& upper,
                           std::size_t samples = 1000, std::uint64_t seed = 1);

struct PolynomialReport {
  double norm_Pn = 0.0;      ///< closed form 1/sqrt(n)
  double sampled_norm = 0.0;
  double f_Pn = 0.0;         ///< P_n'(1) = sqrt(n)
  double ratio = 0.0;        ///< f_Pn / norm_Pn
};

/// P_n(x) = x^n / sqrt(n) with the sup norm on [-1, 1] and f(P) = P'(1).
PolynomialReport polynomial_example(int n, std::size_t sample_count = 100000);

/// Coefficients c_0, c_1, ... in increasing degree.
double poly_eval(const std::vector<double>& coeffs, double x);
double poly_derivative_at(const std::vector<double>& coeffs, double x);
/// max |P| over an evenly spaced grid of [-1, 1] including both ends.
double poly_sup_sampled(const std::vector<double>& coeffs, std::size_t sample_count = 100000);

}  // namespace conelip
