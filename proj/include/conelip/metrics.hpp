#pragma once

#include <cstdint>
#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "conelip/certify.hpp"

namespace conelip {

/// d(x, y) = sum_{k <= N} |y_k - x_k|^p on R^N, 0 < p < 1.
struct LpQuasiMetric {
  double p = 0.5;
  Eigen::Index N = 8;

  LpQuasiMetric(double p, Eigen::Index N = 8);
  double operator()(const Vector& x, const Vector& y) const;
};

/// d(x, y) = sum_n 2^-n p_n(x - y) / (1 + p_n(x - y)), n = 1..N.
struct GraduatedMetric {
  std::vector<SeminormSpec> family;

  explicit GraduatedMetric(std::vector<SeminormSpec> family);
  Eigen::Index dim() const { return family.front().dim(); }
  double operator()(const Vector& x, const Vector& y) const;
};

/// d(x, y) = |x^3 - y^3| on R (vectors of length one).
struct CubeMetric {
  double operator()(const Vector& x, const Vector& y) const;
};

using Metric = std::variant<LpQuasiMetric, GraduatedMetric, CubeMetric>;

double metric_eval(const Metric& m, const Vector& x, const Vector& y);
Eigen::Index metric_dim(const Metric& m);

struct TranslationCheck {
  std::size_t triples = 0;
  double max_deviation = 0.0;  ///< max |d(x+z, y+z) - d(x, y)|
  std::optional<std::array<Vector, 3>> witness;  ///< (x, y, z) at the first deviation
  bool invariant() const { return max_deviation == 0.0; }
};

/// Compares d(x+z, y+z) with d(x, y) on random triples. Coordinates are
/// dyadic rationals k / 2^20 with |k| <= 2^22 so that the translated
/// differences are computed without rounding.
TranslationCheck translation_invariance(const Metric& m, std::size_t triples = 10000, std::uint64_t seed = 1);

/// L = 4a/r on {d(x0, x) <= r/4}, given |f| <= a on {d(x0, x) <= r}. A
/// supplied a is checked at the cross-polytope vertices x0 +- r^(1/p) e_k and
/// sampled points (refusal with witness on violation); when omitted it is
/// computed from those vertices (top) and the affine minorant at x0 (bottom).
CertifyResult lp_certify(const ConvexMap& f, const LpQuasiMetric& m, const Vector& x0, double r,
                         std::optional<double> a = std::nullopt, const CertifyOptions& opt = {});

/// L = 3 L_m 2^m from a prior ball certificate |f(x) - f(y)| <= L_m p_m(x - y)
/// on B_{p_m}[c, rho], index m counted from 1. The region is the metric ball
/// about x0 of radius 2^-m s / (1 + s), s = min(1, rho - p_m(x0 - c)), on
/// which p_m(x - x0) <= s. InputError when the prior is missing, stated for a
/// different seminorm, or x0 is not interior to its ball.
CertifyResult lcs_certify(const ConvexMap& f, const GraduatedMetric& m, const Vector& x0,
                          const std::optional<LipschitzCertificate>& prior, int index);

struct NonLipschitzWitness {
  double x = 0.0;
  double y = 0.0;
  double ratio = 0.0;  ///< |x - y| / |x^3 - y^3|
};

/// Points near 0 where t -> t has slope above M for the cube metric.
NonLipschitzWitness nonlipschitz_witness(double M);

}  // namespace conelip
