#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "conelip/bounds.hpp"
#include "conelip/certificate.hpp"
#include "conelip/convex_map.hpp"
#include "conelip/section.hpp"

namespace conelip {

using Evaluator = std::function<Vector(const Vector&)>;
using Distance = std::function<double(const Vector&, const Vector&)>;

Evaluator evaluator_of(const ConvexMap& f);
/// x -> phi(x[0]).
Evaluator evaluator_of(const Section& phi);

struct CertifyOptions {
  std::size_t precondition_samples = 4096;  ///< sampled checks of beta / z / a bounds
  std::uint64_t seed = 1;
};

/// L = max(|A|, |B|) from the outer chord slopes of a convex scalar section.
/// InputError unless a < alpha < beta < b inside the section range; refusal
/// when a chord check on [a, b] shows the section is not convex.
CertifyResult certify_1d(const Section& phi, double a, double alpha, double beta, double b);

/// L = 2 beta / (R - r) on B_p[x0, r]. beta is computed by beta_bound when
/// omitted; a supplied beta is checked on sampled ball points (refusal with
/// witness on violation). InputError when r >= R, q is not C-full, or the
/// ball leaves the domain.
CertifyResult certify_ball(const ConvexMap& f, const SeminormSpec& q, const SeminormSpec& p, const Vector& x0, double R,
                           double r, std::optional<double> beta = std::nullopt, const CertifyOptions& opt = {});

/// L = max L_i with p = max of the local p_i, valid on the point cloud. Every
/// point must lie in an open local ball p_i(k - x_i) < r_i; InputError lists
/// the uncovered points otherwise.
CertifyResult certify_compact(const ConvexMap& f, const std::vector<Vector>& cloud,
                              const std::vector<LipschitzCertificate>& locals);

/// Lattice constant 2 z / (R - r) for a coordinate target, sup-norm balls.
CertifyResult certify_o_lipschitz(const ConvexMap& f, const Vector& x0, double R, double r, const Vector& z,
                                  const CertifyOptions& opt = {});

/// Uniform L = 2 beta / (R - r) with beta the largest member bound. Members
/// are bounded concurrently; the reduction runs in member order. Refusal
/// names the first failing member.
CertifyResult certify_equi(const std::vector<ConvexMap>& family, const SeminormSpec& q, const SeminormSpec& p,
                           const Vector& x0, double R, double r, const CertifyOptions& opt = {});

struct EmpiricalResult {
  double max_ratio = 0.0;
  std::size_t pairs = 0;             ///< pairs with positive distance
  std::size_t degenerate_pairs = 0;  ///< pairs with zero distance (skipped)
  double degenerate_max_gap = 0.0;   ///< max q(f(x) - f(y)) over skipped pairs
  std::optional<Vector> argmax_x;
  std::optional<Vector> argmax_y;
};

/// Max of q(f(x) - f(y)) / d(x, y) over sampled pairs of region points. Half
/// the pairs are independent, the rest are local perturbations (some along a
/// single coordinate); for balls of
/// weighted seminorms with a kernel every eighth pair moves only along the
/// kernel.
EmpiricalResult empirical_lipschitz(const Evaluator& f, const CertRegion& region, const SeminormSpec& q,
                                    const Distance& d, std::size_t pairs = 10000, std::uint64_t seed = 1);
EmpiricalResult empirical_lipschitz(const ConvexMap& f, const CertRegion& region, const SeminormSpec& q,
                                    const SeminormSpec& p, std::size_t pairs = 10000, std::uint64_t seed = 1);

/// The distance a certificate is stated in (p, |.|, the l^p metric, ...).
Distance certificate_distance(const LipschitzCertificate& cert);

/// Runs the oracle on the certified region and records the summary. For
/// o-certificates q is the sup norm and the constant is the sup of the
/// lattice constant. Families pass one evaluator per member.
OracleSummary run_oracle(const LipschitzCertificate& cert, const std::vector<Evaluator>& members,
                         std::size_t pairs = 10000, std::uint64_t seed = 1);
LipschitzCertificate attach_oracle(LipschitzCertificate cert, const std::vector<Evaluator>& members,
                                   std::size_t pairs = 10000, std::uint64_t seed = 1);

/// max over pairs and coordinates of |f_i(x) - f_i(y)| / (c_i ||x - y||_inf)
/// for an o-certificate with lattice constant c (0/0 counts as 0).
double o_lipschitz_coordinate_ratio(const LipschitzCertificate& cert, const Evaluator& f, std::size_t pairs = 10000,
                                    std::uint64_t seed = 1);

}  // namespace conelip
