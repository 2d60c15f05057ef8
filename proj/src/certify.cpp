#include "conelip/certify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "conelip/errors.hpp"
#include "conelip/sampling.hpp"

namespace conelip {

namespace {

constexpr int kConvexityGrid = 257;

Refusal refuse(std::string reason, std::optional<Vector> witness = std::nullopt, double observed = 0.0, double bound = 0.0) {
  Refusal r;
  r.reason = std::move(reason);
  r.witness = std::move(witness);
  r.observed = observed;
  r.bound = bound;
  return r;
}

void require_radii(double R, double r, const char* what) {
  if (!std::isfinite(R) || !std::isfinite(r)) throw InputError(std::string(what) + ": radii must be finite");
  if (!(r > 0.0)) throw InputError(std::string(what) + ": r must be positive");
  if (!(r < R)) throw InputError(std::string(what) + ": r must be smaller than R");
}

// Relevant ball vertices that lie in the domain, then sampled ball points.
template <class Visit>
void visit_ball_points(const ConvexMap& f, const SeminormSpec& p, const Vector& x0, double R, std::size_t samples,
                       std::uint64_t seed, Visit&& visit) {
  if (const auto verts = relevant_ball_vertices(f, p, x0, R)) {
    for (const auto& v : *verts) {
      if (f.domain().contains(v) && !visit(v)) return;
    }
  }
  std::mt19937_64 rng(seed);
  const CertRegion ball = CertRegion::ball(x0, R, p);
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector x = sample_region(ball, rng);
    if (f.domain().contains(x) && !visit(x)) return;
  }
}

double region_scale(const CertRegion& region) {
  switch (region.kind) {
    case RegionKind::interval:
      return region.hi - region.lo;
    case RegionKind::seminorm_ball:
      return region.radius * unit_ball_halfwidths(*region.p, 1.0).maxCoeff();
    case RegionKind::point_cloud:
      return 0.0;
    case RegionKind::lp_ball:
      return std::pow(region.radius, 1.0 / region.lp_exponent);
    case RegionKind::graduated_ball:
      return 1.0;
  }
  return 1.0;
}

// The ball-type certificate shared by certify_ball and certify_equi.
LipschitzCertificate ball_certificate(Formula formula, const SeminormSpec& q, const SeminormSpec& p, const Vector& x0,
                                      double R, double r, double beta) {
  LipschitzCertificate cert;
  cert.formula = formula;
  cert.region = CertRegion::ball(x0, r, p);
  cert.q = q;
  cert.constant = 2.0 * beta / (R - r);
  cert.inputs.R = R;
  cert.inputs.r = r;
  cert.inputs.beta = beta;
  return cert;
}

void require_ball_preconditions(const ConvexMap& f, const SeminormSpec& q, const SeminormSpec& p, const Vector& x0,
                                double R, const CertifyOptions& opt, const char* what) {
  require_dim(x0, f.domain_dim(), what);
  if (p.dim() != f.domain_dim()) throw InputError(std::string(what) + ": p dimension differs from the domain");
  if (q.dim() != f.target_dim()) throw InputError(std::string(what) + ": q dimension differs from the target");
  const auto full = check_fullness(q, f.target_cone(), 2000, opt.seed);
  if (!full.full) throw InputError(std::string(what) + ": the unit ball of q is not full for the target cone");
  const auto inside = ball_inside_domain(f.domain(), p, x0, R, 2000, opt.seed);
  if (!inside.inside) throw InputError(std::string(what) + ": B_p[x0, R] is not contained in the domain");
}

// A convex function bounded on a line is constant there, so a map that moves
// along a kernel coordinate of p is unbounded on every B_p ball.
std::optional<Refusal> kernel_unbounded(const ConvexMap& f, const SeminormSpec& q, const SeminormSpec& p,
                                        const Vector& x0, double R, double bound) {
  const auto inert = f.inert_coordinates();
  const Vector f0 = f.evaluate_unchecked(x0);
  for (Eigen::Index k : kernel_coordinates(p)) {
    if (inert[static_cast<std::size_t>(k)]) continue;
    std::optional<Vector> worst;
    double worst_q = -1.0;
    bool moves = false;
    for (int j = 0; j <= 6; ++j) {
      for (double sign : {1.0, -1.0}) {
        Vector x = x0;
        x[k] += sign * (1.0 + R) * std::pow(10.0, j);
        const Vector fx = f.evaluate_unchecked(x);
        if (q(fx - f0) > 1e-9 * (1.0 + q(f0))) moves = true;
        if (q(fx) > worst_q) {
          worst_q = q(fx);
          worst = x;
        }
      }
    }
    if (moves) {
      return refuse("f varies along kernel coordinate " + std::to_string(k) +
                        " of p, so q(f) is unbounded on B_p[x0, R]",
                    worst, worst_q, bound);
    }
  }
  return std::nullopt;
}

}  // namespace

Evaluator evaluator_of(const ConvexMap& f) {
  return [f](const Vector& x) { return f(x); };
}

Evaluator evaluator_of(const Section& phi) {
  return [phi](const Vector& x) { return phi(x[0]); };
}

CertifyResult certify_1d(const Section& phi, double a, double alpha, double beta, double b) {
  if (phi.target_dim() != 1) throw InputError("certify_1d: scalar section required");
  if (!(a < alpha && alpha < beta && beta < b)) throw InputError("certify_1d: need a < alpha < beta < b");
  if (!phi.in_range(a) || !phi.in_range(b)) throw InputError("certify_1d: [a, b] leaves the section range");
  std::vector<double> vals(kConvexityGrid);
  const double h = (b - a) / (kConvexityGrid - 1);
  for (int k = 0; k < kConvexityGrid; ++k) vals[static_cast<std::size_t>(k)] = phi.value(k + 1 == kConvexityGrid ? b : a + k * h);
  for (int k = 1; k + 1 < kConvexityGrid; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const double left = (vals[i] - vals[i - 1]) / h;
    const double right = (vals[i + 1] - vals[i]) / h;
    if (right < left - 1e-9 * (1.0 + std::abs(left) + std::abs(right))) {
      return refuse("section is not convex on [a, b]", Vector::Constant(1, a + k * h), right - left, 0.0);
    }
  }
  const double fa = phi.value(a);
  const double fal = phi.value(alpha);
  const double fbe = phi.value(beta);
  const double fb = phi.value(b);
  const double A = (fal - fa) / (alpha - a);
  const double B = (fb - fbe) / (b - beta);
  LipschitzCertificate cert;
  cert.formula = Formula::scalar_1d;
  cert.region = CertRegion::interval(alpha, beta);
  cert.q = SeminormSpec::abs();
  cert.constant = std::max(std::abs(A), std::abs(B));
  cert.inputs.A = A;
  cert.inputs.B = B;
  cert.inputs.interval = {a, alpha, beta, b};
  cert.inputs.beta_method = "chord";
  return cert;
}

CertifyResult certify_ball(const ConvexMap& f, const SeminormSpec& q, const SeminormSpec& p, const Vector& x0, double R,
                           double r, std::optional<double> beta, const CertifyOptions& opt) {
  require_radii(R, r, "certify_ball");
  require_ball_preconditions(f, q, p, x0, R, opt, "certify_ball");
  if (!f.convexity_verified()) return refuse("map is not convex for its target cone");
  if (auto unbounded = kernel_unbounded(f, q, p, x0, R, beta.value_or(std::numeric_limits<double>::infinity()))) {
    return *unbounded;
  }
  if (beta) {
    if (!(*beta >= 0.0) || !std::isfinite(*beta)) throw InputError("certify_ball: beta must be finite and nonnegative");
    std::optional<Refusal> violation;
    visit_ball_points(f, p, x0, R, opt.precondition_samples, opt.seed, [&](const Vector& x) {
      const double v = q(f.evaluate_unchecked(x));
      if (v > *beta * (1.0 + kSoundnessSlack) + 1e-300) {
        violation = refuse("q(f(x)) exceeds beta on B_p[x0, R]", x, v, *beta);
        return false;
      }
      return true;
    });
    if (violation) return *violation;
    auto cert = ball_certificate(Formula::ball_2beta, q, p, x0, R, r, *beta);
    const auto computed = beta_bound(f, q, p, x0, R, 0, opt.seed);
    cert.inputs.beta_method = "given";
    cert.inputs.beta_certified = computed.certified && computed.value <= *beta * (1.0 + kSoundnessSlack);
    return cert;
  }
  const auto bound = beta_bound(f, q, p, x0, R, opt.precondition_samples, opt.seed);
  auto cert = ball_certificate(Formula::ball_2beta, q, p, x0, R, r, bound.value);
  cert.inputs.beta_method = bound.method;
  cert.inputs.beta_certified = bound.certified;
  return cert;
}

CertifyResult certify_compact(const ConvexMap& f, const std::vector<Vector>& cloud,
                              const std::vector<LipschitzCertificate>& locals) {
  if (cloud.empty()) throw InputError("certify_compact: empty point cloud");
  if (locals.empty()) throw InputError("certify_compact: no local certificates");
  const SeminormSpec& q = *locals.front().q;
  std::vector<SeminormSpec> ps;
  for (const auto& c : locals) {
    if (c.region.kind != RegionKind::seminorm_ball || !c.q) {
      throw InputError("certify_compact: local certificates must be seminorm-ball certificates");
    }
    if (!(*c.q == q)) throw InputError("certify_compact: local certificates use different target seminorms");
    require_dim(c.region.center, f.domain_dim(), "certify_compact");
    if (std::none_of(ps.begin(), ps.end(), [&](const SeminormSpec& s) { return s == *c.region.p; })) ps.push_back(*c.region.p);
  }
  std::vector<std::size_t> uncovered;
  for (std::size_t k = 0; k < cloud.size(); ++k) {
    require_dim(cloud[k], f.domain_dim(), "certify_compact");
    const bool hit = std::any_of(locals.begin(), locals.end(), [&](const LipschitzCertificate& c) {
      return (*c.region.p)(cloud[k] - c.region.center) < c.region.radius;
    });
    if (!hit) uncovered.push_back(k);
  }
  if (!uncovered.empty()) {
    std::ostringstream msg;
    msg << "certify_compact: points not covered by any open local ball:";
    for (std::size_t i = 0; i < uncovered.size() && i < 20; ++i) msg << ' ' << uncovered[i];
    if (uncovered.size() > 20) msg << " ... (" << uncovered.size() << " total)";
    throw InputError(msg.str());
  }
  if (!f.convexity_verified()) return refuse("map is not convex for its target cone");
  LipschitzCertificate cert;
  cert.formula = Formula::compact_cover;
  const SeminormSpec p = ps.size() == 1 ? ps.front() : SeminormSpec::max_of(ps);
  cert.region = CertRegion::cloud(cloud, p);
  cert.q = q;
  cert.inputs.beta_certified = true;
  for (const auto& c : locals) {
    cert.inputs.piece_constants.push_back(c.constant);
    cert.inputs.beta_certified = cert.inputs.beta_certified && c.inputs.beta_certified;
    cert.constant = std::max(cert.constant, c.constant);
  }
  cert.inputs.beta_method = "local";
  return cert;
}

CertifyResult certify_o_lipschitz(const ConvexMap& f, const Vector& x0, double R, double r, const Vector& z,
                                  const CertifyOptions& opt) {
  require_radii(R, r, "certify_o_lipschitz");
  require_dim(x0, f.domain_dim(), "certify_o_lipschitz");
  require_dim(z, f.target_dim(), "certify_o_lipschitz");
  if ((z.array() < 0.0).any() || !z.allFinite()) throw InputError("certify_o_lipschitz: z must be finite and nonnegative");
  if (!f.coordinate_target()) throw InputError("certify_o_lipschitz: target must be ordered by the coordinate cone");
  const SeminormSpec p = SeminormSpec::sup_norm(f.domain_dim());
  if (!ball_inside_domain(f.domain(), p, x0, R, 2000, opt.seed).inside) {
    throw InputError("certify_o_lipschitz: B[x0, R] is not contained in the domain");
  }
  if (!f.convexity_verified()) return refuse("map is not convex for its target cone");
  std::optional<Refusal> violation;
  visit_ball_points(f, p, x0, R, opt.precondition_samples, opt.seed, [&](const Vector& x) {
    const Vector v = f.evaluate_unchecked(x).cwiseAbs();
    Eigen::Index i = 0;
    const double excess = (v - z).maxCoeff(&i);
    if (excess > kSoundnessSlack * (1.0 + z[i])) {
      violation = refuse("|f(x)| exceeds z on B[x0, R] in coordinate " + std::to_string(i), x, v[i], z[i]);
      return false;
    }
    return true;
  });
  if (violation) return *violation;
  LipschitzCertificate cert;
  cert.formula = Formula::o_lipschitz;
  cert.region = CertRegion::ball(x0, r, p);
  cert.lattice_constant = (2.0 / (R - r)) * z;
  cert.constant = cert.lattice_constant->maxCoeff();
  cert.q = SeminormSpec::sup_norm(f.target_dim());
  cert.inputs.R = R;
  cert.inputs.r = r;
  cert.inputs.z = z;
  const auto bound = beta_bound(f, SeminormSpec::sup_norm(f.target_dim()), p, x0, R, 0, opt.seed);
  cert.inputs.beta_method = "given";
  cert.inputs.beta_certified = bound.certified && bound.coordinate_bound &&
                               ((bound.coordinate_bound->array() - z.array()) <= kSoundnessSlack * (1.0 + z.array())).all();
  return cert;
}

CertifyResult certify_equi(const std::vector<ConvexMap>& family, const SeminormSpec& q, const SeminormSpec& p,
                           const Vector& x0, double R, double r, const CertifyOptions& opt) {
  if (family.empty()) throw InputError("certify_equi: empty family");
  require_radii(R, r, "certify_equi");
  struct MemberOutcome {
    std::optional<BetaBound> bound;
    std::string error;
    std::optional<Refusal> refusal;
  };
  std::vector<std::future<MemberOutcome>> jobs;
  jobs.reserve(family.size());
  for (const auto& f : family) {
    jobs.push_back(std::async(std::launch::async, [&f, &q, &p, &x0, R, &opt]() {
      MemberOutcome out;
      try {
        require_ball_preconditions(f, q, p, x0, R, opt, "certify_equi");
        if (!f.convexity_verified()) {
          out.error = "map is not convex for its target cone";
        } else if (auto unbounded = kernel_unbounded(f, q, p, x0, R, std::numeric_limits<double>::infinity())) {
          out.refusal = std::move(unbounded);
          out.error = out.refusal->reason;
        } else {
          out.bound = beta_bound(f, q, p, x0, R, opt.precondition_samples, opt.seed);
        }
      } catch (const std::exception& e) {
        out.error = e.what();
      }
      return out;
    }));
  }
  std::vector<MemberOutcome> outcomes;
  outcomes.reserve(jobs.size());
  for (auto& j : jobs) outcomes.push_back(j.get());
  double beta = 0.0;
  bool certified = true;
  std::vector<double> betas;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (!outcomes[k].bound) {
      Refusal ref = outcomes[k].refusal ? *outcomes[k].refusal : refuse(outcomes[k].error);
      ref.reason = "member " + std::to_string(k) + ": " + outcomes[k].error;
      ref.member = k;
      return ref;
    }
    betas.push_back(outcomes[k].bound->value);
    beta = std::max(beta, outcomes[k].bound->value);
    certified = certified && outcomes[k].bound->certified;
  }
  auto cert = ball_certificate(Formula::equi_family, q, p, x0, R, r, beta);
  cert.inputs.piece_constants = std::move(betas);
  cert.inputs.beta_certified = certified;
  cert.inputs.beta_method = certified ? "member-bounds" : "member-bounds-sampled";
  return cert;
}

EmpiricalResult empirical_lipschitz(const Evaluator& f, const CertRegion& region, const SeminormSpec& q,
                                    const Distance& d, std::size_t pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::Index> kernel;
  if (region.kind == RegionKind::seminorm_ball) kernel = kernel_coordinates(*region.p);
  const double scale = region_scale(region);
  EmpiricalResult out;
  for (std::size_t s = 0; s < pairs; ++s) {
    const Vector x = sample_region(region, rng);
    Vector y;
    if (!kernel.empty() && s % 8 == 7) {
      y = x;
      for (Eigen::Index i : kernel) y[i] = region.center[i] + region.radius * (2.0 * unit(rng) - 1.0);
    } else if (s % 2 == 1 && scale > 0.0) {
      Vector u(x.size());
      if (s % 4 == 3) {
        u = Vector::Unit(x.size(), std::uniform_int_distribution<Eigen::Index>(0, x.size() - 1)(rng));
      } else {
        for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = gauss(rng);
      }
      y = x + scale * std::pow(10.0, -4.0 * unit(rng)) * u / std::max(u.norm(), 1e-300);
      if (!region.contains(y)) y = sample_region(region, rng);
    } else {
      y = sample_region(region, rng);
    }
    const double gap = q(f(x) - f(y));
    const double dist = d(x, y);
    if (dist == 0.0) {
      ++out.degenerate_pairs;
      out.degenerate_max_gap = std::max(out.degenerate_max_gap, gap);
      continue;
    }
    ++out.pairs;
    const double ratio = gap / dist;
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.argmax_x = x;
      out.argmax_y = y;
    }
  }
  return out;
}

EmpiricalResult empirical_lipschitz(const ConvexMap& f, const CertRegion& region, const SeminormSpec& q,
                                    const SeminormSpec& p, std::size_t pairs, std::uint64_t seed) {
  return empirical_lipschitz(evaluator_of(f), region, q, [p](const Vector& x, const Vector& y) { return p(x - y); },
                             pairs, seed);
}

Distance certificate_distance(const LipschitzCertificate& cert) {
  const CertRegion& reg = cert.region;
  switch (reg.kind) {
    case RegionKind::interval:
      return [](const Vector& x, const Vector& y) { return std::abs(x[0] - y[0]); };
    case RegionKind::seminorm_ball:
    case RegionKind::point_cloud: {
      const SeminormSpec p = *reg.p;
      return [p](const Vector& x, const Vector& y) { return p(x - y); };
    }
    case RegionKind::lp_ball: {
      const double e = reg.lp_exponent;
      return [e](const Vector& x, const Vector& y) { return (x - y).cwiseAbs().array().pow(e).sum(); };
    }
    case RegionKind::graduated_ball: {
      const auto family = reg.family;
      return [family](const Vector& x, const Vector& y) {
        double d = 0.0;
        double w = 0.5;
        for (const auto& p : family) {
          const double v = p(x - y);
          d += w * v / (1.0 + v);
          w *= 0.5;
        }
        return d;
      };
    }
  }
  throw InputError("certificate_distance: unknown region kind");
}

OracleSummary run_oracle(const LipschitzCertificate& cert, const std::vector<Evaluator>& members, std::size_t pairs,
                         std::uint64_t seed) {
  if (members.empty()) throw InputError("run_oracle: no evaluators");
  const Distance d = certificate_distance(cert);
  const SeminormSpec q = cert.q ? *cert.q : SeminormSpec::abs();
  OracleSummary out;
  out.seed = seed;
  for (const auto& f : members) {
    const auto e = empirical_lipschitz(f, cert.region, q, d, pairs, seed);
    out.pairs += e.pairs;
    out.degenerate_pairs += e.degenerate_pairs;
    out.max_ratio = std::max(out.max_ratio, e.max_ratio);
    out.degenerate_max_gap = std::max(out.degenerate_max_gap, e.degenerate_max_gap);
  }
  out.dominated = out.max_ratio <= cert.constant * (1.0 + kSoundnessSlack) && out.degenerate_max_gap <= 1e-9;
  return out;
}

LipschitzCertificate attach_oracle(LipschitzCertificate cert, const std::vector<Evaluator>& members, std::size_t pairs,
                                   std::uint64_t seed) {
  cert.oracle = run_oracle(cert, members, pairs, seed);
  return cert;
}

double o_lipschitz_coordinate_ratio(const LipschitzCertificate& cert, const Evaluator& f, std::size_t pairs,
                                    std::uint64_t seed) {
  if (!cert.lattice_constant) throw InputError("o_lipschitz_coordinate_ratio: not an o-certificate");
  const Vector& c = *cert.lattice_constant;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t s = 0; s < pairs; ++s) {
    const Vector x = sample_region(cert.region, rng);
    const Vector y = sample_region(cert.region, rng);
    const double dist = (x - y).cwiseAbs().maxCoeff();
    const Vector gap = (f(x) - f(y)).cwiseAbs();
    for (Eigen::Index i = 0; i < gap.size(); ++i) {
      if (gap[i] == 0.0) continue;
      const double denom = c[i] * dist;
      worst = std::max(worst, denom > 0.0 ? gap[i] / denom : std::numeric_limits<double>::infinity());
    }
  }
  return worst;
}

}  // namespace conelip
