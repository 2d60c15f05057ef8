#include "conelip/metrics.hpp"

#include <array>
#include <cmath>
#include <random>

#include "conelip/errors.hpp"
#include "conelip/sampling.hpp"

namespace conelip {

LpQuasiMetric::LpQuasiMetric(double p_, Eigen::Index N_) : p(p_), N(N_) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("lp metric: exponent must lie in (0, 1)");
  if (N < 1) throw InputError("lp metric: truncation length must be positive");
}

double LpQuasiMetric::operator()(const Vector& x, const Vector& y) const {
  require_dim(x, N, "lp metric");
  require_dim(y, N, "lp metric");
  return (y - x).cwiseAbs().array().pow(p).sum();
}

GraduatedMetric::GraduatedMetric(std::vector<SeminormSpec> fam) : family(std::move(fam)) {
  if (family.empty()) throw InputError("graduated metric: empty seminorm family");
  for (const auto& p : family) {
    if (p.dim() != family.front().dim()) throw InputError("graduated metric: seminorm dimensions differ");
  }
}

double GraduatedMetric::operator()(const Vector& x, const Vector& y) const {
  require_dim(x, dim(), "graduated metric");
  require_dim(y, dim(), "graduated metric");
  const Vector diff = x - y;
  double d = 0.0;
  double w = 0.5;
  for (const auto& p : family) {
    const double v = p(diff);
    d += w * v / (1.0 + v);
    w *= 0.5;
  }
  return d;
}

double CubeMetric::operator()(const Vector& x, const Vector& y) const {
  require_dim(x, 1, "cube metric");
  require_dim(y, 1, "cube metric");
  return std::abs(x[0] * x[0] * x[0] - y[0] * y[0] * y[0]);
}

double metric_eval(const Metric& m, const Vector& x, const Vector& y) {
  return std::visit([&](const auto& d) { return d(x, y); }, m);
}

Eigen::Index metric_dim(const Metric& m) {
  if (const auto* lp = std::get_if<LpQuasiMetric>(&m)) return lp->N;
  if (const auto* g = std::get_if<GraduatedMetric>(&m)) return g->dim();
  return 1;
}

TranslationCheck translation_invariance(const Metric& m, std::size_t triples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> k(-(1L << 22), 1L << 22);
  const Eigen::Index n = metric_dim(m);
  auto draw = [&] {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = std::ldexp(static_cast<double>(k(rng)), -20);
    return v;
  };
  TranslationCheck out;
  for (std::size_t s = 0; s < triples; ++s) {
    const Vector x = draw();
    const Vector y = draw();
    const Vector z = draw();
    const double dev = std::abs(metric_eval(m, x + z, y + z) - metric_eval(m, x, y));
    ++out.triples;
    if (dev > out.max_deviation) {
      if (!out.witness) out.witness = std::array<Vector, 3>{x, y, z};
      out.max_deviation = dev;
    }
  }
  return out;
}

CertifyResult lp_certify(const ConvexMap& f, const LpQuasiMetric& m, const Vector& x0, double r, std::optional<double> a,
                         const CertifyOptions& opt) {
  require_dim(x0, m.N, "lp_certify");
  if (f.domain_dim() != m.N) throw InputError("lp_certify: map dimension differs from the truncation length");
  if (f.target_dim() != 1) throw InputError("lp_certify: scalar map required");
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("lp_certify: r must be positive and finite");
  if (a && (!(*a >= 0.0) || !std::isfinite(*a))) throw InputError("lp_certify: a must be finite and nonnegative");
  // conv{d(x0, .) <= r} is the l1 ball of radius r^(1/p) about x0.
  const double reach = std::pow(r, 1.0 / m.p);
  std::vector<Vector> verts;
  for (Eigen::Index k = 0; k < m.N; ++k) {
    for (double s : {1.0, -1.0}) verts.push_back(x0 + s * reach * Vector::Unit(m.N, k));
  }
  for (const auto& v : verts) {
    if (!f.domain().contains(v)) throw InputError("lp_certify: the metric ball leaves the domain");
  }
  if (!f.convexity_verified()) return Refusal{"map is not convex", std::nullopt, 0.0, 0.0, std::nullopt};
  const auto [val, J] = f.linearization(x0);
  double top = -std::numeric_limits<double>::infinity();
  double bottom = std::numeric_limits<double>::infinity();
  for (const auto& v : verts) {
    top = std::max(top, f.scalar(v));
    bottom = std::min(bottom, val[0] + J.row(0).dot(v - x0));
  }
  const double computed = std::max(std::abs(top), std::abs(bottom));
  LipschitzCertificate cert;
  cert.formula = Formula::lp_quasi;
  cert.q = SeminormSpec::abs();
  cert.inputs.r = r;
  if (a) {
    const CertRegion big = CertRegion::lp_ball(x0, r, m.p);
    std::mt19937_64 rng(opt.seed);
    auto check = [&](const Vector& x) -> std::optional<Refusal> {
      const double v = std::abs(f.scalar(x));
      if (v > *a * (1.0 + kSoundnessSlack) + 1e-300) return Refusal{"|f(x)| exceeds a on the metric ball", x, v, *a, std::nullopt};
      return std::nullopt;
    };
    for (const auto& v : verts) {
      if (auto ref = check(v)) return *ref;
    }
    for (std::size_t s = 0; s < opt.precondition_samples; ++s) {
      if (auto ref = check(sample_region(big, rng))) return *ref;
    }
    cert.inputs.a = *a;
    cert.inputs.beta_method = "given";
    cert.inputs.beta_certified = computed <= *a * (1.0 + kSoundnessSlack);
  } else {
    cert.inputs.a = computed;
    cert.inputs.beta_method = "vertex-minorant";
    cert.inputs.beta_certified = true;
  }
  cert.constant = 4.0 * *cert.inputs.a / r;
  cert.region = CertRegion::lp_ball(x0, r / 4.0, m.p);
  return cert;
}

CertifyResult lcs_certify(const ConvexMap& f, const GraduatedMetric& m, const Vector& x0,
                          const std::optional<LipschitzCertificate>& prior, int index) {
  if (!prior) throw InputError("lcs_certify: a prior seminorm certificate is required");
  if (index < 1 || static_cast<std::size_t>(index) > m.family.size()) {
    throw InputError("lcs_certify: index m must lie in 1.." + std::to_string(m.family.size()));
  }
  if (index > 60) throw InputError("lcs_certify: index too large");
  require_dim(x0, m.dim(), "lcs_certify");
  if (f.target_dim() != 1) throw InputError("lcs_certify: scalar map required");
  const SeminormSpec& pm = m.family[static_cast<std::size_t>(index - 1)];
  const auto& reg = prior->region;
  if (reg.kind != RegionKind::seminorm_ball || !reg.p || !(*reg.p == pm)) {
    throw InputError("lcs_certify: prior certificate is not a ball certificate for p_m");
  }
  if (!prior->q || prior->q->dim() != 1) throw InputError("lcs_certify: prior certificate must be scalar");
  const double s = std::min(1.0, reg.radius - pm(x0 - reg.center));
  if (!(s > 0.0)) throw InputError("lcs_certify: x0 is not interior to the prior certificate's ball");
  const double scale = std::ldexp(1.0, index);
  LipschitzCertificate cert;
  cert.formula = Formula::lcs_graduated;
  cert.q = SeminormSpec::abs();
  cert.region = CertRegion::graduated_ball(x0, s / (1.0 + s) / scale, m.family);
  cert.constant = 3.0 * prior->constant * scale;
  cert.inputs.m = index;
  cert.inputs.L_m = prior->constant;
  cert.inputs.r = cert.region.radius;
  cert.inputs.beta_certified = prior->inputs.beta_certified;
  cert.inputs.beta_method = "prior";
  return cert;
}

NonLipschitzWitness nonlipschitz_witness(double M) {
  if (!(M > 0.0) || !std::isfinite(M)) throw InputError("nonlipschitz_witness: M must be positive and finite");
  NonLipschitzWitness w;
  w.x = std::min(1.0, 1.0 / std::sqrt(2.0 * M));
  auto ratio = [](double x, double y) { return 1.0 / (x * x + x * y + y * y); };
  while (!(ratio(w.x, w.y) > M)) w.x *= 0.5;
  w.ratio = ratio(w.x, w.y);
  return w;
}

}  // namespace conelip
