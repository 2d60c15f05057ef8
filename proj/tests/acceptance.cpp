// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "conelip/bounds.hpp"
#include "conelip/certify.hpp"
#include "conelip/convex_checks.hpp"
#include "conelip/lattice.hpp"
#include "conelip/metrics.hpp"
#include "conelip/normality.hpp"
#include "conelip/pathology.hpp"

using namespace conelip;

namespace {

// tolerances
constexpr double kChordResidual = -1e-9;
constexpr double kComposedTol = 1e-12;
constexpr double kGridSlopeTol = 1e-6;
constexpr double kGammaTol = 1e-12;
constexpr double kStep1Tol = 1e-12;
constexpr double kSampledSupRel = 1e-6;
constexpr std::size_t kPairs = 10000;
constexpr int kInstances = 50;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector gauss(std::mt19937_64& rng, Eigen::Index n, double s = 1.0) {
  std::normal_distribution<double> g(0.0, s);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

// inert_first: the map ignores x_0 (needed when p has x_0 in its kernel)
ConvexMap random_max_affine(std::mt19937_64& rng, Eigen::Index n, int outputs = 1, bool inert_first = false) {
  std::uniform_int_distribution<int> pieces(1, 6);
  std::vector<std::vector<AffinePiece>> out(static_cast<std::size_t>(outputs));
  for (auto& o : out) {
    int m = pieces(rng);
    for (int j = 0; j < m; ++j) {
      o.push_back({gauss(rng, n), gauss(rng, 1)[0]});
      if (inert_first) o.back().weight[0] = 0.0;
    }
  }
  return ConvexMap::max_affine(std::move(out), Domain::whole(n));
}

QuadraticOutput random_psd(std::mt19937_64& rng, Eigen::Index n, bool nonnegative, bool inert_first = false) {
  Matrix A(n, n);
  for (Eigen::Index j = 0; j < n; ++j) A.col(j) = gauss(rng, n);
  if (inert_first) A.col(0).setZero();
  QuadraticOutput q{A.transpose() * A / double(n), Vector::Zero(n), 0.0};
  if (!nonnegative) {
    q.c = gauss(rng, n);
    q.d = gauss(rng, 1)[0];
    if (inert_first) q.c[0] = 0.0;
  }
  return q;
}

ConvexMap random_quadratic(std::mt19937_64& rng, Eigen::Index n, int outputs = 1, bool nonnegative = false,
                           bool inert_first = false) {
  std::vector<QuadraticOutput> out;
  for (int i = 0; i < outputs; ++i) out.push_back(random_psd(rng, n, nonnegative, inert_first));
  return ConvexMap::quadratic(std::move(out), Domain::whole(n));
}

SeminormSpec random_seminorm(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> w(0.25, 2.0);
  Vector weights(n);
  for (Eigen::Index i = 0; i < n; ++i) weights[i] = w(rng);
  switch (kind(rng)) {
    case 0:
      return SeminormSpec::sup_norm(n);
    case 1:
      return SeminormSpec::l1_norm(n);
    case 2:
      return SeminormSpec::weighted_sup(weights);
    default:
      weights[0] = 0.0;  // kernel along the first coordinate
      return SeminormSpec::weighted_sup(weights);
  }
}

// ---------------------------------------------------------------------------

void chord_suite_criterion() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<int> dim(1, 4);
  double worst = 0.0;
  int checked = 0;
  bool identity = true;
  for (int i = 0; i < 10000; ++i) {
    Eigen::Index n = dim(rng);
    ConvexMap f = (i % 2) ? random_max_affine(rng, n) : random_quadratic(rng, n);
    Vector x = gauss(rng, n), y = gauss(rng, n);
    auto phi = Section::through(f, x, y, Eigen::Index{0});
    double t[3] = {u(rng), u(rng), u(rng)};
    std::sort(t, t + 3);
    if (!(t[0] < t[1] && t[1] < t[2])) continue;
    auto rep = chord_slope_check(phi, t[0], t[1], t[2]);
    identity = identity && rep.identity_ok;
    for (const auto& c : rep.inequalities) worst = std::min(worst, c.residual);
    ++checked;
  }
  double secs = seconds_since(t0);
  report(1, "chord-inequality suite", checked >= 9990 && identity && worst >= kChordResidual && secs < 10.0,
         fmt("%d sections, min residual %.3g (>= %.0e), %.2f s", checked, worst, kChordResidual, secs));
}

void lattice_criterion() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<long> k(-(1L << 20), 1L << 20);
  auto dyadic = [&] {
    Vector v(8);
    for (int i = 0; i < 8; ++i) v[i] = std::ldexp(double(k(rng)), -20);
    return v;
  };
  LatticeIdentityResiduals worst;
  bool equiv = true;
  for (int i = 0; i < 10000; ++i) {
    auto r = lattice_identity_residuals(dyadic(), dyadic(), dyadic());
    worst.decomposition = std::max(worst.decomposition, r.decomposition);
    worst.triangle = std::max(worst.triangle, r.triangle);
    worst.abs_bound = std::max(worst.abs_bound, r.abs_bound);
    worst.sup_inf_abs = std::max(worst.sup_inf_abs, r.sup_inf_abs);
    worst.sandwich = std::max(worst.sandwich, r.sandwich);
    equiv = equiv && r.abs_bound_equivalence;
  }
  bool ok = worst.decomposition == 0.0 && worst.sup_inf_abs == 0.0 && worst.triangle <= kComposedTol &&
            worst.abs_bound <= kComposedTol && worst.sandwich <= kComposedTol && equiv;
  report(2, "lattice-identity suite", ok,
         fmt("10000 triples in R^8, residuals (i) %g (ii) %g (iii) %g (iv) %g (v) %g", worst.decomposition,
             worst.triangle, worst.abs_bound, worst.sup_inf_abs, worst.sandwich));
}

struct SoundnessTally {
  int issued = 0;
  int refusals = 0;
  int dominated = 0;
  double worst_ratio = 0.0;  // max_ratio / constant
  std::string first_bad;

  void add(const CertifyResult& res, const std::vector<Evaluator>& members, std::uint64_t seed, int instance) {
    if (conelip::refused(res)) {
      ++refusals;
      if (first_bad.empty()) first_bad = fmt("instance %d refused: %s", instance, std::get<Refusal>(res).reason.c_str());
      return;
    }
    ++issued;
    auto o = run_oracle(certificate(res), members, kPairs, seed);
    double c = certificate(res).constant;
    if (c > 0) worst_ratio = std::max(worst_ratio, o.max_ratio / c);
    if (o.dominated) {
      ++dominated;
    } else if (first_bad.empty()) {
      first_bad = fmt("instance %d: ratio %.17g vs L %.17g", instance, o.max_ratio, c);
    }
  }
  bool ok() const { return issued == kInstances && dominated == kInstances; }
  std::string line(const char* name) const {
    auto s = fmt("%s %d/%d dominated (max ratio/L %.3f)", name, dominated, kInstances, worst_ratio);
    return first_bad.empty() ? s : s + " [" + first_bad + "]";
  }
};

void soundness_criterion() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::string> lines;
  bool all = true;

  SoundnessTally ball;
  for (int i = 0; i < kInstances; ++i) {
    Eigen::Index n = 2 + i % 2;
    auto p = random_seminorm(rng, n);
    bool kernel = p.weights().size() > 0 && p.weights()[0] == 0.0;
    ConvexMap f = (i % 2) ? random_max_affine(rng, n, 1, kernel) : random_quadratic(rng, n, 1, false, kernel);
    double R = 0.5 + 1.5 * u(rng), r = R * (0.1 + 0.8 * u(rng));
    ball.add(certify_ball(f, SeminormSpec::abs(), p, gauss(rng, n), R, r), {evaluator_of(f)}, 1000 + i, i);
  }
  all = all && ball.ok();
  lines.push_back(ball.line("ball"));

  SoundnessTally one;
  for (int i = 0; i < kInstances; ++i) {
    ConvexMap f = (i % 2) ? random_max_affine(rng, 1) : random_quadratic(rng, 1);
    auto phi = Section::along(f, make_vector({0}), make_vector({1}), Eigen::Index{0});
    // gaps below 0.05 let rounding in the difference quotients reach the 1e-9 slack
    double t[4];
    do {
      for (double& v : t) v = 4 * u(rng) - 2;
      std::sort(t, t + 4);
    } while (t[1] - t[0] < 0.05 || t[2] - t[1] < 0.05 || t[3] - t[2] < 0.05);
    one.add(certify_1d(phi, t[0], t[1], t[2], t[3]), {evaluator_of(phi)}, 2000 + i, i);
  }
  all = all && one.ok();
  lines.push_back(one.line("1d"));

  SoundnessTally olip;
  for (int i = 0; i < kInstances; ++i) {
    Eigen::Index n = 2 + i % 2;
    ConvexMap f = random_quadratic(rng, n, 2, true);  // nonnegative: the box vertices bound |f_i|
    Vector x0 = gauss(rng, n, 0.5);
    double R = 0.5 + u(rng), r = R * (0.1 + 0.8 * u(rng));
    Vector z = hypercube_bound(f, x0, R);
    olip.add(certify_o_lipschitz(f, x0, R, r, z), {evaluator_of(f)}, 3000 + i, i);
  }
  all = all && olip.ok();
  lines.push_back(olip.line("o-lipschitz"));

  SoundnessTally equi;
  for (int i = 0; i < kInstances; ++i) {
    Eigen::Index n = 2;
    std::vector<ConvexMap> fam;
    std::vector<Evaluator> evs;
    auto p = random_seminorm(rng, n);
    bool kernel = p.weights().size() > 0 && p.weights()[0] == 0.0;
    for (int k = 0; k < 4; ++k) {
      fam.push_back((k % 2) ? random_max_affine(rng, n, 1, kernel) : random_quadratic(rng, n, 1, false, kernel));
      evs.push_back(evaluator_of(fam.back()));
    }
    double R = 0.5 + u(rng), r = R * (0.1 + 0.8 * u(rng));
    equi.add(certify_equi(fam, SeminormSpec::abs(), p, gauss(rng, n), R, r), evs, 4000 + i, i);
  }
  all = all && equi.ok();
  lines.push_back(equi.line("equi"));

  SoundnessTally lp;
  for (int i = 0; i < kInstances; ++i) {
    Eigen::Index n = 4;
    LpQuasiMetric m(0.3 + 0.6 * u(rng), n);
    ConvexMap f = random_max_affine(rng, n);
    lp.add(lp_certify(f, m, gauss(rng, n, 0.5), 0.2 + u(rng)), {evaluator_of(f)}, 5000 + i, i);
  }
  all = all && lp.ok();
  lines.push_back(lp.line("lp"));

  SoundnessTally lcs;
  for (int i = 0; i < kInstances; ++i) {
    Eigen::Index n = 3;
    std::vector<SeminormSpec> fam{SeminormSpec::sup_norm(n), random_seminorm(rng, n), random_seminorm(rng, n)};
    GraduatedMetric g(fam);
    int m = 1 + i % 3;
    const auto& pm = fam[static_cast<std::size_t>(m - 1)];
    bool kernel = pm.kind() == SeminormKind::weighted_sup && pm.weights()[0] == 0.0;
    ConvexMap f = (i % 2) ? random_max_affine(rng, n, 1, kernel) : random_quadratic(rng, n, 1, false, kernel);
    Vector x0 = gauss(rng, n, 0.5);
    double R = 0.5 + u(rng), r = R * (0.3 + 0.6 * u(rng));
    auto prior = certify_ball(f, SeminormSpec::abs(), fam[static_cast<std::size_t>(m - 1)], x0, R, r);
    if (refused(prior)) {
      lcs.add(prior, {evaluator_of(f)}, 6000 + i, i);
      continue;
    }
    lcs.add(lcs_certify(f, g, x0, certificate(prior), m), {evaluator_of(f)}, 6000 + i, i);
  }
  all = all && lcs.ok();
  lines.push_back(lcs.line("lcs"));

  std::string detail = fmt("%zu pairs each; ", kPairs);
  for (std::size_t i = 0; i < lines.size(); ++i) detail += (i ? "; " : "") + lines[i];
  report(3, "certificate soundness", all, detail);
}

void scalar_constant_criterion() {
  auto phi = Section::scalar([](double t) { return t * t; });
  auto res = certify_1d(phi, -2, -1, 1, 2);
  double L = refused(res) ? -1.0 : certificate(res).constant;
  // dense grid on [-1, 1], max slope over neighbouring points is 2 - h
  const long n = 20000000;
  const double h = 2.0 / double(n);
  double grid = 0.0;
  double prev = -1.0, fprev = 1.0;
  for (long i = 1; i <= n; ++i) {
    double t = -1.0 + double(i) * h, ft = t * t;
    grid = std::max(grid, std::abs(ft - fprev) / (t - prev));
    prev = t;
    fprev = ft;
  }
  bool ok = L == 3.0 && std::abs(grid - 2.0) <= kGridSlopeTol && grid <= L;
  report(4, "scalar constant reproduction", ok, fmt("L = %.17g, grid slope max = %.12f", L, grid));
}

void normality_criterion() {
  double eps = 0.005;
  auto thin = normality_gamma(PolyCone::sector(eps), SeminormSpec::sup_norm(2), GammaMode::exact_2d);
  double g_thin = thin.gamma_exact.value_or(thin.gamma_lower);
  auto orth = normality_gamma(PolyCone::orthant(8), SeminormSpec::sup_norm(8), GammaMode::sampled, 256, 1);
  bool ok = g_thin >= 100.0 && std::abs(orth.gamma_lower - 1.0) <= kGammaTol;
  report(5, "normality blow-up", ok,
         fmt("gamma(C_0.005) = %.17g, gamma(R^8_+) = %.17g", g_thin, orth.gamma_lower));
}

void step1_criterion() {
  auto t0 = std::chrono::steady_clock::now();
  auto bp = build_block_pairs(8);
  auto r3 = vesely_step1(bp, 3);
  bool ok = std::abs(r3.norm_z_n - 3.375) <= kStep1Tol && std::abs(r3.lower_bound - 3.25) <= kStep1Tol && r3.order_ok;
  std::string bound;
  for (int n = 1; n <= 6; ++n) {
    auto r = vesely_step1(bp, n);
    bool b = r.norm_z_n >= std::pow(1.5, n) - std::ldexp(1.0, -n) && r.order_ok;
    ok = ok && b;
    if (!b) bound += fmt(" n=%d fails", n);
  }
  double secs = seconds_since(t0);
  ok = ok && secs < 1.0;
  report(6, "step 1 reproduction", ok,
         fmt("norm_z_3 = %.17g, lower_bound = %.17g, n=1..6 bound %s, %.3f s", r3.norm_z_n, r3.lower_bound,
             bound.empty() ? "holds" : bound.c_str(), secs));
}

void step2_criterion() {
  auto bp = build_block_pairs(30);
  auto r = vesely_step2(0.5, 1.25, bp, 6);
  std::string norms;
  for (double v : r.norms) norms += fmt(" %.4g", v);
  bool ok = r.disjoint && r.mu_monotone && r.norms_exceed;
  report(7, "step 2 construction", ok,
         fmt("alpha lambda^2 = %.4g, mu monotone %s, norms%s", r.alpha * r.lambda * r.lambda,
             r.mu_monotone ? "yes" : "no", norms.c_str()));
}

void polynomial_criterion() {
  bool ok = true;
  std::string detail;
  for (int n : {1, 4, 100}) {
    auto r = polynomial_example(n);
    double norm = 1.0 / std::sqrt(double(n)), val = std::sqrt(double(n));
    bool b = r.norm_Pn == norm && r.f_Pn == val && std::abs(r.sampled_norm - norm) <= kSampledSupRel * norm;
    ok = ok && b;
    detail += fmt("%sn=%d (%.17g, %.17g)", detail.empty() ? "" : ", ", n, r.norm_Pn, r.f_Pn);
  }
  report(8, "polynomial example", ok, detail);
}

void metric_criterion() {
  auto lp = translation_invariance(LpQuasiMetric(0.5, 8), 10000, 1);
  std::vector<SeminormSpec> fam;
  for (int k = 0; k < 4; ++k) {
    Vector w = Vector::Zero(4);
    w[k] = 1.0;
    fam.push_back(SeminormSpec::weighted_sup(w));
  }
  auto gr = translation_invariance(GraduatedMetric(fam), 10000, 1);
  bool witness = true;
  for (double M : {1.0, 1e2, 1e6}) witness = witness && nonlipschitz_witness(M).ratio > M;
  Vector w = Vector::Zero(8);
  w[0] = 1.0;
  auto f = ConvexMap::max_affine({{{w, 0.0}}}, Domain::whole(8));
  auto res = lp_certify(f, LpQuasiMetric(0.5, 8), Vector::Zero(8), 1.0, 1.0);
  double L = -1, ratio = 0;
  bool dominated = false;
  if (!refused(res)) {
    L = certificate(res).constant;
    auto o = run_oracle(certificate(res), {evaluator_of(f)}, kPairs, 1);
    ratio = o.max_ratio;
    dominated = o.dominated;
  }
  bool ok = lp.invariant() && gr.invariant() && witness && L == 4.0 && dominated;
  report(9, "metric suite", ok,
         fmt("translation deviation lp %g graduated %g; witnesses %s; lp x1 L = %g, sampled max %.6g", lp.max_deviation,
             gr.max_deviation, witness ? "ok" : "bad", L, ratio));
}

void epigraph_criterion() {
  std::mt19937_64 rng(1010);
  std::vector<ConvexMap> convex;
  convex.push_back(ConvexMap::max_affine(
      {{{make_vector({1, 0}), 0}, {make_vector({-1, 0}), 0}, {make_vector({0, 1}), 0}, {make_vector({0, -1}), 0}}},
      Domain::whole(2)));
  convex.push_back(ConvexMap::quadratic({{Matrix::Identity(2, 2), Vector::Zero(2), 0.0}}, Domain::whole(2)));
  convex.push_back(ConvexMap::path({-1, 0, 1}, {make_vector({1}), make_vector({0}), make_vector({2})}, Domain::whole(1)));
  for (int i = 0; i < 5; ++i) convex.push_back(random_max_affine(rng, 3));
  for (int i = 0; i < 5; ++i) convex.push_back(random_quadratic(rng, 3));
  int pass = 0;
  for (std::size_t i = 0; i < convex.size(); ++i)
    if (epigraph_midpoint_check(convex[i], 10000, i + 1).holds() && convexity_check(convex[i], 10000, i + 1).holds())
      ++pass;
  auto control = ConvexMap::nonconvex_control({{Matrix::Identity(2, 2), Vector::Zero(2), 0.0}}, Domain::whole(2));
  bool control_epi = epigraph_midpoint_check(control, 10000, 1).holds();
  bool control_e1 = convexity_check(control, 10000, 1).holds();
  bool ok = pass == int(convex.size()) && !control_epi && !control_e1;
  report(10, "epigraph equivalence", ok,
         fmt("%d/%zu convex fixtures pass; control: epigraph %s, convexity %s", pass, convex.size(),
             control_epi ? "passes" : "fails", control_e1 ? "passes" : "fails"));
}

}  // namespace

int main() {
  chord_suite_criterion();
  lattice_criterion();
  soundness_criterion();
  scalar_constant_criterion();
  normality_criterion();
  step1_criterion();
  step2_criterion();
  polynomial_criterion();
  metric_criterion();
  epigraph_criterion();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
