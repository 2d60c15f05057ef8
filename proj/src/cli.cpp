#include "conelip/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "conelip/certify.hpp"
#include "conelip/convex_checks.hpp"
#include "conelip/json_io.hpp"
#include "conelip/lattice.hpp"
#include "conelip/metrics.hpp"
#include "conelip/pathology.hpp"

namespace conelip::cli {

namespace {

using io::Json;
using io::SchemaError;

struct Outcome {
  Json report;
  bool passed = false;
  std::string csv;
};

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("/") + key, "missing field");
  return j.at(key);
}

double num(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number()) throw SchemaError(std::string("/") + key, "expected a number");
  return v.get<double>();
}

std::optional<double> opt_num(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return num(j, key);
}

Vector vec(const Json& j, const char* key) { return io::vector_from(need(j, key), std::string("/") + key); }
SeminormSpec semi(const Json& j, const char* key) { return io::seminorm_from(need(j, key), std::string("/") + key); }
ConvexMap map_at(const Json& j, const char* key) { return io::map_from(need(j, key), std::string("/") + key); }

Outcome finish_certificate(const CertifyResult& result, const std::vector<Evaluator>& members, const RunConfig& cfg) {
  Outcome out;
  if (refused(result)) {
    out.report = io::to_json(result);
    return out;
  }
  LipschitzCertificate cert = attach_oracle(std::get<LipschitzCertificate>(result), members, cfg.pairs, cfg.seed);
  out.report = io::to_json(cert);
  out.passed = cert.oracle->dominated;
  if (cert.formula == Formula::o_lipschitz) {
    const double ratio = o_lipschitz_coordinate_ratio(cert, members.front(), cfg.pairs, cfg.seed);
    out.report["oracle"]["coordinate_ratio"] = ratio;
    out.passed = out.passed && ratio <= 1.0 + kSoundnessSlack;
  }
  return out;
}

Outcome run_certify(const Json& doc, const RunConfig& cfg) {
  const Json& kind_json = need(doc, "certify");
  if (!kind_json.is_string()) throw SchemaError("/certify", "expected a string");
  const std::string kind = kind_json.get<std::string>();
  CertifyOptions opt;
  opt.seed = cfg.seed;
  if (kind == "scalar-1d") {
    const ConvexMap f = map_at(doc, "map");
    const Vector base = doc.contains("base") ? vec(doc, "base") : Vector::Zero(f.domain_dim());
    const Vector dir = doc.contains("direction") ? vec(doc, "direction") : Vector::Ones(f.domain_dim());
    const Section phi = Section::along(f, base, dir);
    return finish_certificate(certify_1d(phi, num(doc, "a"), num(doc, "alpha"), num(doc, "beta"), num(doc, "b")),
                              {evaluator_of(phi)}, cfg);
  }
  if (kind == "ball-2beta") {
    const ConvexMap f = map_at(doc, "map");
    const auto res = certify_ball(f, semi(doc, "q"), semi(doc, "p"), vec(doc, "x0"), num(doc, "R"), num(doc, "r"),
                                  opt_num(doc, "beta"), opt);
    return finish_certificate(res, {evaluator_of(f)}, cfg);
  }
  if (kind == "compact-cover") {
    const ConvexMap f = map_at(doc, "map");
    const SeminormSpec q = semi(doc, "q");
    const Json& cloud_json = need(doc, "cloud");
    const Matrix rows = io::rows_from(cloud_json, "/cloud");
    std::vector<Vector> cloud;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) cloud.emplace_back(rows.row(i).transpose());
    std::vector<LipschitzCertificate> locals;
    const Json& balls = need(doc, "balls");
    if (!balls.is_array()) throw SchemaError("/balls", "expected an array");
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const Json& b = balls[i];
      const std::string w = "/balls/" + std::to_string(i);
      const SeminormSpec p = io::seminorm_from(need(b, "p"), w + "/p");
      const auto local = certify_ball(f, q, p, io::vector_from(need(b, "center"), w + "/center"), num(b, "R"),
                                      num(b, "r"), opt_num(b, "beta"), opt);
      if (refused(local)) {
        Outcome out;
        out.report = io::to_json(local);
        out.report["ball"] = i;
        return out;
      }
      locals.push_back(std::get<LipschitzCertificate>(local));
    }
    return finish_certificate(certify_compact(f, cloud, locals), {evaluator_of(f)}, cfg);
  }
  if (kind == "o-lipschitz") {
    const ConvexMap f = map_at(doc, "map");
    return finish_certificate(certify_o_lipschitz(f, vec(doc, "x0"), num(doc, "R"), num(doc, "r"), vec(doc, "z"), opt),
                              {evaluator_of(f)}, cfg);
  }
  if (kind == "equi-family") {
    const Json& fam = need(doc, "family");
    if (!fam.is_array()) throw SchemaError("/family", "expected an array");
    std::vector<ConvexMap> family;
    std::vector<Evaluator> evals;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      family.push_back(io::map_from(fam[i], "/family/" + std::to_string(i)));
      evals.push_back(evaluator_of(family.back()));
    }
    return finish_certificate(
        certify_equi(family, semi(doc, "q"), semi(doc, "p"), vec(doc, "x0"), num(doc, "R"), num(doc, "r"), opt), evals, cfg);
  }
  if (kind == "lp-quasi") {
    const ConvexMap f = map_at(doc, "map");
    const Metric m = io::metric_from(need(doc, "metric"), "/metric");
    const auto* lp = std::get_if<LpQuasiMetric>(&m);
    if (lp == nullptr) throw SchemaError("/metric/kind", "lp-quasi certification needs an lp-quasi metric");
    return finish_certificate(lp_certify(f, *lp, vec(doc, "x0"), num(doc, "r"), opt_num(doc, "a"), opt), {evaluator_of(f)}, cfg);
  }
  if (kind == "lcs-graduated") {
    const ConvexMap f = map_at(doc, "map");
    const Metric m = io::metric_from(need(doc, "metric"), "/metric");
    const auto* g = std::get_if<GraduatedMetric>(&m);
    if (g == nullptr) throw SchemaError("/metric/kind", "lcs-graduated certification needs a graduated metric");
    const Json& mj = need(doc, "m");
    if (!mj.is_number_integer()) throw SchemaError("/m", "expected an integer");
    const int index = mj.get<int>();
    std::optional<LipschitzCertificate> prior;
    if (doc.contains("prior")) {
      const Json& pj = doc.at("prior");
      if (index < 1 || static_cast<std::size_t>(index) > g->family.size()) throw SchemaError("/m", "index out of range");
      const auto res = certify_ball(f, SeminormSpec::abs(), g->family[static_cast<std::size_t>(index - 1)],
                                    io::vector_from(need(pj, "center"), "/prior/center"), num(pj, "R"), num(pj, "r"),
                                    opt_num(pj, "beta"), opt);
      if (refused(res)) {
        Outcome out;
        out.report = io::to_json(res);
        return out;
      }
      prior = std::get<LipschitzCertificate>(res);
    }
    return finish_certificate(lcs_certify(f, *g, vec(doc, "x0"), prior, index), {evaluator_of(f)}, cfg);
  }
  throw SchemaError("/certify", "unknown certification '" + kind + "'");
}

Json sample_check_json(const SampleCheck& c, bool expect_hold) {
  return Json{{"samples", c.samples},
              {"violations", c.violations},
              {"worst_residual", c.worst_residual},
              {"passed", c.holds() == expect_hold}};
}

Outcome run_verify(const Json& doc, const RunConfig& cfg) {
  std::vector<std::pair<std::string, Json>> entries;
  if (doc.contains("maps")) {
    const Json& maps = doc.at("maps");
    if (!maps.is_array()) throw SchemaError("/maps", "expected an array");
    for (std::size_t i = 0; i < maps.size(); ++i) entries.emplace_back("/maps/" + std::to_string(i), maps[i]);
  } else {
    entries.emplace_back("", Json{{"name", "map"}, {"map", doc}});
  }
  const double tol = cfg.tolerance.value_or(kResidualTol);
  const std::size_t samples = std::max<std::size_t>(cfg.pairs / 10, 100);
  Outcome out;
  out.passed = true;
  Json rows = Json::array();
  for (const auto& [where, entry] : entries) {
    const ConvexMap f = io::map_from(need(entry, "map"), where + "/map");
    bool expect_convex = true;
    if (entry.contains("expect")) {
      const std::string e = entry.at("expect").get<std::string>();
      if (e != "convex" && e != "nonconvex") throw SchemaError(where + "/expect", "expected 'convex' or 'nonconvex'");
      expect_convex = e == "convex";
    }
    Json checks = Json::object();
    checks["construction"] = Json{{"convexity_verified", f.convexity_verified()},
                                  {"passed", f.convexity_verified() == expect_convex}};
    checks["convexity"] = sample_check_json(convexity_check(f, samples, cfg.seed, tol), expect_convex);
    checks["chord"] = sample_check_json(chord_suite(f, samples, cfg.seed), expect_convex);
    if (f.target_dim() == 1) {
      checks["epigraph_midpoint"] = sample_check_json(epigraph_midpoint_check(f, samples, cfg.seed, tol), expect_convex);
    }
    bool all = true;
    for (const auto& c : checks) all = all && c.at("passed").get<bool>();
    out.passed = out.passed && all;
    const std::string name = entry.contains("name") ? entry.at("name").get<std::string>() : where;
    rows.push_back(Json{{"name", name}, {"expect", expect_convex ? "convex" : "nonconvex"}, {"checks", checks}, {"passed", all}});
  }
  out.report = Json{{"maps", rows}, {"all_passed", out.passed}};
  return out;
}

Outcome run_pathology(const Json& doc, const RunConfig& cfg) {
  RunConfig c = cfg;
  auto pick_int = [&](const char* key, int& dst) {
    if (doc.contains(key)) dst = doc.at(key).get<int>();
  };
  auto pick_num = [&](const char* key, double& dst) {
    if (doc.contains(key)) dst = doc.at(key).get<double>();
  };
  pick_int("n", c.n);
  pick_int("blocks", c.blocks);
  pick_num("lambda", c.lambda);
  pick_num("alpha", c.alpha);
  if (doc.contains("report")) {
    const std::string r = doc.at("report").get<std::string>();
    c.vesely = r == "vesely";
    c.polynomial = r == "polynomial";
  }
  if (c.vesely == c.polynomial) throw InputError("pathology: choose exactly one of --vesely or --polynomial");
  Outcome out;
  std::ostringstream csv;
  if (c.polynomial) {
    const auto rep = polynomial_example(c.n, c.samples);
    const double rel = std::abs(rep.sampled_norm - rep.norm_Pn) / rep.norm_Pn;
    out.passed = rel <= cfg.tolerance.value_or(1e-6) && rep.ratio > 0.0;
    out.report = Json{{"report", "polynomial"},
                      {"n", c.n},
                      {"norm_Pn", rep.norm_Pn},
                      {"f_Pn", rep.f_Pn},
                      {"ratio", rep.ratio},
                      {"sampled_norm", rep.sampled_norm},
                      {"samples", c.samples},
                      {"sampled_relative_error", rel},
                      {"passed", out.passed}};
    csv << "n,norm_Pn,f_Pn,ratio\n";
    char line[160];
    for (int k = 1; k <= c.n; ++k) {
      const double root = std::sqrt(static_cast<double>(k));
      std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", k, 1.0 / root, root, root * root);
      csv << line;
    }
    out.csv = csv.str();
    return out;
  }
  const BlockPairs bp = build_block_pairs(c.blocks);
  Json step1 = Json::array();
  bool ok1 = true;
  csv << "n,norm_z_n,lower_bound,tail_norm\n";
  char line[200];
  for (int n = 1; n <= c.blocks; ++n) {
    const auto r = vesely_step1(bp, n);
    const bool pass = r.order_ok && r.norm_z_n >= r.lower_bound;
    ok1 = ok1 && pass;
    step1.push_back(Json{{"n", n}, {"norm_z_n", r.norm_z_n}, {"tail_norm", r.tail_norm}, {"lower_bound", r.lower_bound},
                         {"order_ok", r.order_ok}, {"passed", pass}});
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", n, r.norm_z_n, r.lower_bound, r.tail_norm);
    csv << line;
  }
  const auto s2 = vesely_step2(c.lambda, c.alpha, bp, c.n);
  Json ws = Json::array();
  for (std::size_t n = 0; n < s2.w.size(); ++n) {
    ws.push_back(Json{{"n", n}, {"block", s2.k[n]}, {"norm", s2.norms[n]}});
  }
  const bool ok2 = s2.disjoint && s2.mu_monotone && s2.norms_exceed && s2.values_bounded;
  const Eigen::Index d = 2;
  const Vector xs = Vector::Unit(d, 0);
  const ConvexMap f = vesely_step3(s2.phi, xs, xs, d);
  Vector w = Vector::Zero(bp.space.dim());
  for (int k = 1; k <= c.blocks; ++k) w += std::ldexp(1.0, -k) * bp.pairs[static_cast<std::size_t>(k - 1)].y;
  bool along_ok = true;
  Json along = Json::array();
  for (int n = 0; n <= c.n; ++n) {
    const double norm = bp.space.norm()(f(std::pow(c.lambda, n) * xs));
    along_ok = along_ok && norm > n;
    along.push_back(Json{{"n", n}, {"norm", norm}});
  }
  const auto slab = slab_order_bound(f, xs, c.lambda, w, 1000, cfg.seed);
  const bool left_zero = f(-xs).cwiseAbs().maxCoeff() == 0.0;
  const bool ok3 = along_ok && slab.violations == 0 && left_zero;
  out.passed = ok1 && ok2 && ok3;
  out.report = Json{{"report", "vesely"},
                    {"blocks", c.blocks},
                    {"step1", step1},
                    {"step2", Json{{"lambda", s2.lambda}, {"alpha", s2.alpha}, {"alpha_bound", s2.alpha_bound},
                                   {"n_max", c.n}, {"disjoint", s2.disjoint}, {"mu_monotone", s2.mu_monotone},
                                   {"norms_exceed", s2.norms_exceed}, {"values_bounded", s2.values_bounded},
                                   {"selections", ws}, {"passed", ok2}}},
                    {"step3", Json{{"dim", d}, {"norms_along_v", along}, {"slab_eps", c.lambda}, {"slab_samples", slab.samples},
                                   {"slab_violations", slab.violations}, {"zero_left_of_slab", left_zero}, {"passed", ok3}}},
                    {"passed", out.passed}};
  out.csv = csv.str();
  return out;
}

Outcome run_lattice(const Json& doc, const RunConfig& cfg) {
  std::vector<std::array<Vector, 3>> triples;
  if (doc.contains("triples")) {
    const Json& ts = doc.at("triples");
    if (!ts.is_array()) throw SchemaError("/triples", "expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string w = "/triples/" + std::to_string(i);
      if (!ts[i].is_array() || ts[i].size() != 3) throw SchemaError(w, "expected [x, y, z]");
      triples.push_back({io::vector_from(ts[i][0], w + "/0"), io::vector_from(ts[i][1], w + "/1"),
                         io::vector_from(ts[i][2], w + "/2")});
      require_same_dim(triples.back()[0], triples.back()[1], "lattice-check");
      require_same_dim(triples.back()[0], triples.back()[2], "lattice-check");
    }
  } else {
    if (cfg.dim < 1) throw InputError("lattice-check: dimension must be positive");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long> k(-(1L << 20), 1L << 20);
    auto draw = [&] {
      Vector v(cfg.dim);
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = std::ldexp(static_cast<double>(k(rng)), -20);
      return v;
    };
    for (std::size_t s = 0; s < cfg.pairs; ++s) triples.push_back({draw(), draw(), draw()});
  }
  const double composed = cfg.tolerance.value_or(1e-12);
  LatticeIdentityResiduals worst;
  for (const auto& t : triples) {
    const auto r = lattice_identity_residuals(t[0], t[1], t[2]);
    worst.decomposition = std::max(worst.decomposition, r.decomposition);
    worst.triangle = std::max(worst.triangle, r.triangle);
    worst.abs_bound = std::max(worst.abs_bound, r.abs_bound);
    worst.sup_inf_abs = std::max(worst.sup_inf_abs, r.sup_inf_abs);
    worst.sandwich = std::max(worst.sandwich, r.sandwich);
    worst.abs_bound_equivalence = worst.abs_bound_equivalence && r.abs_bound_equivalence;
  }
  struct Row {
    const char* id;
    const char* name;
    double residual;
    double tol;
  };
  const Row rows[] = {{"i", "decomposition", worst.decomposition, 0.0},
                      {"ii", "triangle", worst.triangle, composed},
                      {"iii", "abs_bound", worst.abs_bound, composed},
                      {"iv", "sup_inf_abs", worst.sup_inf_abs, 0.0},
                      {"v", "sandwich", worst.sandwich, composed}};
  Outcome out;
  out.passed = worst.abs_bound_equivalence;
  Json table = Json::array();
  std::ostringstream csv;
  csv << "identity,name,max_residual,tolerance,passed\n";
  for (const auto& r : rows) {
    const bool pass = r.residual <= r.tol;
    out.passed = out.passed && pass;
    table.push_back(Json{{"identity", r.id}, {"name", r.name}, {"max_residual", r.residual}, {"tolerance", r.tol}, {"passed", pass}});
    char line[160];
    std::snprintf(line, sizeof line, "%s,%s,%.17g,%.17g,%d\n", r.id, r.name, r.residual, r.tol, pass ? 1 : 0);
    csv << line;
  }
  out.report = Json{{"samples", triples.size()},
                    {"seed", cfg.seed},
                    {"identities", table},
                    {"abs_bound_equivalence", worst.abs_bound_equivalence},
                    {"all_passed", out.passed}};
  out.csv = csv.str();
  return out;
}

bool write_text(const std::string& path, const std::string& body, std::ostream& err) {
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  f << body;
  return static_cast<bool>(f);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Outcome result;
  try {
    Json doc = Json::object();
    if (!cfg.input.empty()) {
      doc = io::read_file(cfg.input);
    } else if (cfg.command == Command::certify || cfg.command == Command::verify) {
      err << "error: --input is required for this command\n";
      return 2;
    }
    switch (cfg.command) {
      case Command::certify:
        result = run_certify(doc, cfg);
        break;
      case Command::verify:
        result = run_verify(doc, cfg);
        break;
      case Command::pathology:
        result = run_pathology(doc, cfg);
        break;
      case Command::lattice_check:
        result = run_lattice(doc, cfg);
        break;
    }
  } catch (const SchemaError& e) {
    err << "error: " << (cfg.input.empty() ? "<flags>" : cfg.input) << ": " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    err << "error: " << (cfg.input.empty() ? "<flags>" : cfg.input) << ": " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  const std::string text = io::dump(result.report) + "\n";
  if (cfg.output.empty()) {
    out << text;
  } else if (!write_text(cfg.output, text, err)) {
    return 1;
  }
  if (!cfg.csv.empty() && !result.csv.empty() && !write_text(cfg.csv, result.csv, err)) return 1;
  if (result.report.contains("refused")) {
    err << "refused: " << result.report.at("reason").get<std::string>() << '\n';
  }
  return result.passed ? 0 : 1;
}

}  // namespace conelip::cli
