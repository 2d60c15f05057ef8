#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "conelip/seminorm.hpp"
#include "conelip/vector.hpp"

namespace conelip {

enum class Formula { scalar_1d, ball_2beta, compact_cover, o_lipschitz, equi_family, lp_quasi, lcs_graduated };

std::string_view to_string(Formula f);
Formula formula_from_string(std::string_view name);

enum class RegionKind { interval, seminorm_ball, point_cloud, lp_ball, graduated_ball };

std::string_view to_string(RegionKind k);

/// The set on which a certificate holds.
struct CertRegion {
  RegionKind kind = RegionKind::seminorm_ball;
  Vector center;                   ///< balls
  double radius = 0.0;             ///< balls
  std::optional<SeminormSpec> p;   ///< seminorm_ball, point_cloud (dominating seminorm)
  double lo = 0.0;                 ///< interval
  double hi = 0.0;                 ///< interval
  std::vector<Vector> points;      ///< point_cloud
  double lp_exponent = 0.0;        ///< lp_ball
  std::vector<SeminormSpec> family;  ///< graduated_ball

  static CertRegion interval(double lo, double hi);
  static CertRegion ball(Vector center, double radius, SeminormSpec p);
  static CertRegion cloud(std::vector<Vector> points, SeminormSpec p);
  static CertRegion lp_ball(Vector center, double radius, double exponent);
  static CertRegion graduated_ball(Vector center, double radius, std::vector<SeminormSpec> family);

  Eigen::Index dim() const;
  bool contains(const Vector& x, double tol = 1e-12) const;
};

struct CertInputs {
  std::optional<double> R;
  std::optional<double> r;
  std::optional<double> beta;
  bool beta_certified = true;
  std::string beta_method;     ///< "given", "vertex-minorant", "sampled", ...
  std::optional<double> a;     ///< lp bound |f| <= a
  std::optional<Vector> z;     ///< o-bound |f| <= z
  std::optional<int> m;        ///< graduated-metric index
  std::optional<double> L_m;
  std::optional<double> A;     ///< scalar-1d left slope
  std::optional<double> B;     ///< scalar-1d right slope
  std::vector<double> interval;          ///< scalar-1d (a, alpha, beta, b)
  std::vector<double> piece_constants;   ///< compact-cover L_i, equi-family per-member beta
};

struct OracleSummary {
  std::size_t pairs = 0;
  double max_ratio = 0.0;
  std::uint64_t seed = 0;
  std::size_t degenerate_pairs = 0;
  double degenerate_max_gap = 0.0;
  bool dominated = false;  ///< max_ratio <= constant * (1 + 1e-9)
};

/// q(f(x) - f(y)) <= constant * p(x - y) on the region (or |f(x)-f(y)| <=
/// lattice_constant * ||x - y|| coordinatewise for o-certificates, or with the
/// region's metric in place of p for the metric formulas).
struct LipschitzCertificate {
  Formula formula = Formula::ball_2beta;
  CertRegion region;
  std::optional<SeminormSpec> q;
  double constant = 0.0;
  std::optional<Vector> lattice_constant;
  CertInputs inputs;
  std::optional<OracleSummary> oracle;
};

/// A certification that was declined because a precondition failed.
struct Refusal {
  std::string reason;
  std::optional<Vector> witness;
  double observed = 0.0;
  double bound = 0.0;
  std::optional<std::size_t> member;
};

using CertifyResult = std::variant<LipschitzCertificate, Refusal>;

inline bool refused(const CertifyResult& r) { return std::holds_alternative<Refusal>(r); }
/// Throws InputError carrying the refusal reason when refused.
const LipschitzCertificate& certificate(const CertifyResult& r);

/// Relative slack used when comparing empirical slopes to certified constants.
inline constexpr double kSoundnessSlack = 1e-9;

}  // namespace conelip
