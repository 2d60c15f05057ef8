#include "conelip/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace conelip::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + "/" + key, "missing field");
  return *it;
}

bool has(const Json& j, const char* key) { return j.is_object() && j.contains(key) && !j.at(key).is_null(); }

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where, "expected a number");
  return j.get<double>();
}

double number_field(const Json& j, const char* key, const std::string& where) {
  return number(field(j, key, where), where + "/" + key);
}

long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where, "expected an integer");
  return j.get<long>();
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where, "expected a string");
  return j.get<std::string>();
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected an array");
  return j;
}

std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

// Library input errors raised while building a value are reported at `where`.
template <class F>
auto located(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const SchemaError&) {
    throw;
  } catch (const InputError& e) {
    throw SchemaError(where, e.what());
  }
}

void write(std::ostringstream& os, const Json& j, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent >= 0) os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        pad(depth + 1);
        os << Json(it.key()).dump() << (indent >= 0 ? ": " : ":");
        write(os, it.value(), indent, depth + 1);
      }
      pad(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      os << '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) os << (flat && indent >= 0 ? ", " : ",");
        first = false;
        if (!flat) pad(depth + 1);
        write(os, e, indent, depth + 1);
      }
      if (!flat) pad(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

Json bound_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json parse_text(const std::string& input) {
  try {
    return Json::parse(input);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < input.size(); ++i) {
      if (input[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SchemaError("line " + std::to_string(line) + ", column " + std::to_string(col), "JSON syntax error");
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

std::string dump(const Json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

Vector vector_from(const Json& j, const std::string& where) {
  array(j, where);
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number(j[i], at(where, i));
  return v;
}

Matrix rows_from(const Json& j, const std::string& where) {
  array(j, where);
  if (j.empty()) throw SchemaError(where, "expected a nonempty array of rows");
  const Vector first = vector_from(j[0], at(where, 0));
  Matrix M(static_cast<Eigen::Index>(j.size()), first.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector row = vector_from(j[i], at(where, i));
    if (row.size() != first.size()) throw SchemaError(at(where, i), "row length differs from the first row");
    M.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return M;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

PolyCone cone_from(const Json& j, const std::string& where) {
  if (has(j, "generators")) {
    const Eigen::Index dim = integer(field(j, "dim", where), where + "/dim");
    const Json& gens = array(field(j, "generators", where), where + "/generators");
    std::vector<Vector> g;
    for (std::size_t i = 0; i < gens.size(); ++i) g.push_back(vector_from(gens[i], at(where + "/generators", i)));
    return located(where, [&] { return PolyCone(dim, std::move(g)); });
  }
  const std::string kind = text(field(j, "kind", where), where + "/kind");
  if (kind == "orthant") {
    const long dim = integer(field(j, "dim", where), where + "/dim");
    return located(where, [&] { return PolyCone::orthant(dim); });
  }
  if (kind == "sector") {
    const double eps = number_field(j, "eps", where);
    return located(where, [&] { return PolyCone::sector(eps); });
  }
  if (kind == "product") {
    const Json& fs = array(field(j, "factors", where), where + "/factors");
    std::vector<PolyCone> factors;
    for (std::size_t i = 0; i < fs.size(); ++i) factors.push_back(cone_from(fs[i], at(where + "/factors", i)));
    return located(where, [&] { return PolyCone::product(factors); });
  }
  throw SchemaError(where + "/kind", "unknown cone kind '" + kind + "'");
}

Json to_json(const PolyCone& c) {
  Json gens = Json::array();
  for (const auto& g : c.generators()) gens.push_back(to_json(g));
  return Json{{"dim", c.dim()}, {"generators", gens}};
}

SeminormSpec seminorm_from(const Json& j, const std::string& where) {
  const std::string kind = text(field(j, "kind", where), where + "/kind");
  const SeminormKind k = located(where + "/kind", [&] { return seminorm_kind_from_string(kind); });
  const Json& params = field(j, "params", where);
  const std::string pw = where + "/params";
  switch (k) {
    case SeminormKind::weighted_sup:
    case SeminormKind::weighted_l1: {
      const Vector w = vector_from(field(params, "weights", pw), pw + "/weights");
      return located(pw, [&] {
        return k == SeminormKind::weighted_sup ? SeminormSpec::weighted_sup(w) : SeminormSpec::weighted_l1(w);
      });
    }
    case SeminormKind::minkowski_polytope: {
      const Matrix rows = rows_from(field(params, "vertices", pw), pw + "/vertices");
      return located(pw, [&] { return SeminormSpec::minkowski(rows.transpose()); });
    }
    case SeminormKind::max_of: {
      const Json& parts = array(field(params, "parts", pw), pw + "/parts");
      std::vector<SeminormSpec> ps;
      for (std::size_t i = 0; i < parts.size(); ++i) ps.push_back(seminorm_from(parts[i], at(pw + "/parts", i)));
      return located(pw, [&] { return SeminormSpec::max_of(ps); });
    }
  }
  throw SchemaError(where, "unknown seminorm kind");
}

Json to_json(const SeminormSpec& p) {
  Json params;
  switch (p.kind()) {
    case SeminormKind::weighted_sup:
    case SeminormKind::weighted_l1:
      params = Json{{"weights", to_json(p.weights())}};
      break;
    case SeminormKind::minkowski_polytope: {
      Json verts = Json::array();
      for (Eigen::Index c = 0; c < p.vertices().cols(); ++c) verts.push_back(to_json(Vector(p.vertices().col(c))));
      params = Json{{"vertices", verts}};
      break;
    }
    case SeminormKind::max_of: {
      Json parts = Json::array();
      for (const auto& q : p.parts()) parts.push_back(to_json(q));
      params = Json{{"parts", parts}};
      break;
    }
  }
  return Json{{"kind", std::string(to_string(p.kind()))}, {"params", params}};
}

Domain domain_from(const Json& j, const std::string& where) {
  const std::string kind = text(field(j, "kind", where), where + "/kind");
  if (kind == "whole") {
    const long dim = integer(field(j, "dim", where), where + "/dim");
    return located(where, [&] { return Domain::whole(dim); });
  }
  if (kind == "box") {
    auto bounds = [&](const char* key, double inf) {
      const Json& a = array(field(j, key, where), where + "/" + key);
      Vector v(static_cast<Eigen::Index>(a.size()));
      for (std::size_t i = 0; i < a.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = a[i].is_null() ? inf : number(a[i], at(where + "/" + key, i));
      }
      return v;
    };
    const Vector lo = bounds("lo", -std::numeric_limits<double>::infinity());
    const Vector hi = bounds("hi", std::numeric_limits<double>::infinity());
    return located(where, [&] { return Domain::box(lo, hi); });
  }
  if (kind == "ball") {
    const Vector c = vector_from(field(j, "center", where), where + "/center");
    const double r = number_field(j, "radius", where);
    const SeminormSpec p = seminorm_from(field(j, "seminorm", where), where + "/seminorm");
    return located(where, [&] { return Domain::ball(c, r, p); });
  }
  throw SchemaError(where + "/kind", "unknown domain kind '" + kind + "'");
}

Json to_json(const Domain& d) {
  switch (d.kind()) {
    case Domain::Kind::whole:
      return Json{{"kind", "whole"}, {"dim", d.dim()}};
    case Domain::Kind::box: {
      Json lo = Json::array();
      Json hi = Json::array();
      for (Eigen::Index i = 0; i < d.dim(); ++i) {
        lo.push_back(bound_json(d.lo()[i]));
        hi.push_back(bound_json(d.hi()[i]));
      }
      return Json{{"kind", "box"}, {"lo", lo}, {"hi", hi}};
    }
    case Domain::Kind::ball:
      return Json{{"kind", "ball"}, {"center", to_json(d.center())}, {"radius", d.radius()}, {"seminorm", to_json(*d.seminorm())}};
  }
  return Json();
}

namespace {

std::vector<QuadraticOutput> quadratic_outputs(const Json& outs, const std::string& where) {
  array(outs, where);
  std::vector<QuadraticOutput> out;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const std::string w = at(where, i);
    QuadraticOutput q;
    q.Q = rows_from(field(outs[i], "Q", w), w + "/Q");
    q.c = has(outs[i], "c") ? vector_from(outs[i]["c"], w + "/c") : Vector::Zero(q.Q.cols());
    q.d = has(outs[i], "d") ? number(outs[i]["d"], w + "/d") : 0.0;
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace

ConvexMap map_from(const Json& j, const std::string& where) {
  const Json& body = field(j, "body", where);
  const std::string bw = where + "/body";
  const std::string kind = text(field(body, "kind", bw), bw + "/kind");
  if (kind == "composite") {
    const Json& parts = array(field(body, "parts", bw), bw + "/parts");
    std::vector<ConvexMap> ps;
    for (std::size_t i = 0; i < parts.size(); ++i) ps.push_back(map_from(parts[i], at(bw + "/parts", i)));
    return located(where, [&] { return ConvexMap::composite(ps); });
  }
  const Domain domain = domain_from(field(j, "domain", where), where + "/domain");
  std::optional<PolyCone> cone;
  if (has(j, "target_cone")) cone = cone_from(j["target_cone"], where + "/target_cone");
  if (kind == "max-affine") {
    const Json& outs = array(field(body, "outputs", bw), bw + "/outputs");
    std::vector<std::vector<AffinePiece>> outputs;
    for (std::size_t i = 0; i < outs.size(); ++i) {
      const std::string ow = at(bw + "/outputs", i);
      std::vector<AffinePiece> pieces;
      for (std::size_t k = 0; k < array(outs[i], ow).size(); ++k) {
        const std::string pw = at(ow, k);
        pieces.push_back({vector_from(field(outs[i][k], "weight", pw), pw + "/weight"),
                          has(outs[i][k], "offset") ? number(outs[i][k]["offset"], pw + "/offset") : 0.0});
      }
      outputs.push_back(std::move(pieces));
    }
    return located(where, [&] { return ConvexMap(MaxAffineBody{outputs}, domain, cone); });
  }
  if (kind == "psd-quadratic") {
    auto outs = quadratic_outputs(field(body, "outputs", bw), bw + "/outputs");
    return located(where, [&] { return ConvexMap(QuadraticBody{outs}, domain, cone); });
  }
  if (kind == "negated-quadratic") {
    auto outs = quadratic_outputs(field(body, "outputs", bw), bw + "/outputs");
    return located(where, [&] { return ConvexMap::nonconvex_control(outs, domain); });
  }
  if (kind == "pw-path") {
    const Json& bps = array(field(body, "breakpoints", bw), bw + "/breakpoints");
    std::vector<double> t;
    for (std::size_t i = 0; i < bps.size(); ++i) t.push_back(number(bps[i], at(bw + "/breakpoints", i)));
    const Json& vals = array(field(body, "values", bw), bw + "/values");
    std::vector<Vector> v;
    for (std::size_t i = 0; i < vals.size(); ++i) v.push_back(vector_from(vals[i], at(bw + "/values", i)));
    std::optional<Vector> functional;
    if (has(body, "functional")) functional = vector_from(body["functional"], bw + "/functional");
    return located(where, [&] { return ConvexMap::path(t, v, domain, cone, functional); });
  }
  throw SchemaError(bw + "/kind", "unknown map kind '" + kind + "'");
}

Json to_json(const ConvexMap& f) {
  Json body = std::visit(
      [](const auto& b) -> Json {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, MaxAffineBody>) {
          Json outs = Json::array();
          for (const auto& o : b.outputs) {
            Json pieces = Json::array();
            for (const auto& p : o) pieces.push_back(Json{{"weight", to_json(p.weight)}, {"offset", p.offset}});
            outs.push_back(pieces);
          }
          return Json{{"kind", "max-affine"}, {"outputs", outs}};
        } else if constexpr (std::is_same_v<B, QuadraticBody>) {
          Json outs = Json::array();
          for (const auto& o : b.outputs) {
            Json Q = Json::array();
            for (Eigen::Index r = 0; r < o.Q.rows(); ++r) Q.push_back(to_json(Vector(o.Q.row(r).transpose())));
            outs.push_back(Json{{"Q", Q}, {"c", to_json(o.c)}, {"d", o.d}});
          }
          return Json{{"kind", "psd-quadratic"}, {"outputs", outs}};
        } else if constexpr (std::is_same_v<B, PathBody>) {
          Json vals = Json::array();
          for (const auto& v : b.values) vals.push_back(to_json(v));
          return Json{{"kind", "pw-path"}, {"functional", to_json(b.functional)}, {"breakpoints", b.breakpoints}, {"values", vals}};
        } else {
          Json parts = Json::array();
          for (const auto& p : b.parts) parts.push_back(to_json(*p));
          return Json{{"kind", "composite"}, {"parts", parts}};
        }
      },
      f.body());
  if (!f.convexity_verified() && std::holds_alternative<QuadraticBody>(f.body())) {
    // the control stores its negated outputs
    body["kind"] = "negated-quadratic";
    for (auto& o : body["outputs"]) {
      for (auto& row : o["Q"])
        for (auto& v : row) v = -v.get<double>();
      for (auto& v : o["c"]) v = -v.get<double>();
      o["d"] = -o["d"].get<double>();
    }
  }
  return Json{{"body", body}, {"domain", to_json(f.domain())}, {"target_cone", to_json(f.target_cone())}};
}

Metric metric_from(const Json& j, const std::string& where) {
  const std::string kind = text(field(j, "kind", where), where + "/kind");
  if (kind == "lp-quasi") {
    const double p = number_field(j, "p", where);
    const long N = has(j, "N") ? integer(j["N"], where + "/N") : 8;
    return located(where, [&] { return Metric(LpQuasiMetric(p, N)); });
  }
  if (kind == "graduated") {
    const Json& fam = array(field(j, "family", where), where + "/family");
    std::vector<SeminormSpec> ps;
    for (std::size_t i = 0; i < fam.size(); ++i) ps.push_back(seminorm_from(fam[i], at(where + "/family", i)));
    return located(where, [&] { return Metric(GraduatedMetric(ps)); });
  }
  if (kind == "cube") return CubeMetric{};
  throw SchemaError(where + "/kind", "unknown metric kind '" + kind + "'");
}

Json to_json(const Metric& m) {
  if (const auto* lp = std::get_if<LpQuasiMetric>(&m)) return Json{{"kind", "lp-quasi"}, {"p", lp->p}, {"N", lp->N}};
  if (const auto* g = std::get_if<GraduatedMetric>(&m)) {
    Json fam = Json::array();
    for (const auto& p : g->family) fam.push_back(to_json(p));
    return Json{{"kind", "graduated"}, {"family", fam}};
  }
  return Json{{"kind", "cube"}};
}

Json to_json(const CertRegion& r) {
  Json out{{"kind", std::string(to_string(r.kind))}};
  switch (r.kind) {
    case RegionKind::interval:
      out["lo"] = r.lo;
      out["hi"] = r.hi;
      break;
    case RegionKind::seminorm_ball:
      out["center"] = to_json(r.center);
      out["radius"] = r.radius;
      out["seminorm"] = to_json(*r.p);
      break;
    case RegionKind::point_cloud: {
      Json pts = Json::array();
      for (const auto& x : r.points) pts.push_back(to_json(x));
      out["points"] = pts;
      out["seminorm"] = to_json(*r.p);
      break;
    }
    case RegionKind::lp_ball:
      out["center"] = to_json(r.center);
      out["radius"] = r.radius;
      out["exponent"] = r.lp_exponent;
      out["truncation"] = r.center.size();
      break;
    case RegionKind::graduated_ball: {
      out["center"] = to_json(r.center);
      out["radius"] = r.radius;
      Json fam = Json::array();
      for (const auto& p : r.family) fam.push_back(to_json(p));
      out["family"] = fam;
      break;
    }
  }
  return out;
}

CertRegion region_from(const Json& j, const std::string& where) {
  const std::string kind = text(field(j, "kind", where), where + "/kind");
  if (kind == "interval") {
    const double lo = number_field(j, "lo", where);
    const double hi = number_field(j, "hi", where);
    return located(where, [&] { return CertRegion::interval(lo, hi); });
  }
  if (kind == "seminorm-ball") {
    const Vector c = vector_from(field(j, "center", where), where + "/center");
    const double r = number_field(j, "radius", where);
    const SeminormSpec p = seminorm_from(field(j, "seminorm", where), where + "/seminorm");
    return located(where, [&] { return CertRegion::ball(c, r, p); });
  }
  if (kind == "point-cloud") {
    const Json& pts = array(field(j, "points", where), where + "/points");
    std::vector<Vector> xs;
    for (std::size_t i = 0; i < pts.size(); ++i) xs.push_back(vector_from(pts[i], at(where + "/points", i)));
    const SeminormSpec p = seminorm_from(field(j, "seminorm", where), where + "/seminorm");
    return located(where, [&] { return CertRegion::cloud(xs, p); });
  }
  if (kind == "lp-ball") {
    const Vector c = vector_from(field(j, "center", where), where + "/center");
    const double r = number_field(j, "radius", where);
    const double e = number_field(j, "exponent", where);
    return located(where, [&] { return CertRegion::lp_ball(c, r, e); });
  }
  if (kind == "graduated-ball") {
    const Vector c = vector_from(field(j, "center", where), where + "/center");
    const double r = number_field(j, "radius", where);
    const Json& fam = array(field(j, "family", where), where + "/family");
    std::vector<SeminormSpec> ps;
    for (std::size_t i = 0; i < fam.size(); ++i) ps.push_back(seminorm_from(fam[i], at(where + "/family", i)));
    return located(where, [&] { return CertRegion::graduated_ball(c, r, ps); });
  }
  throw SchemaError(where + "/kind", "unknown region kind '" + kind + "'");
}

Json to_json(const LipschitzCertificate& c) {
  Json out{{"formula", std::string(to_string(c.formula))}, {"constant", c.constant}};
  if (c.lattice_constant) out["lattice_constant"] = to_json(*c.lattice_constant);
  out["region"] = to_json(c.region);
  if (c.q) out["target_seminorm"] = to_json(*c.q);
  Json in = Json::object();
  const auto& i = c.inputs;
  if (i.R) in["R"] = *i.R;
  if (i.r) in["r"] = *i.r;
  if (i.beta) in["beta"] = *i.beta;
  if (i.z) in["z"] = to_json(*i.z);
  if (i.a) in["a"] = *i.a;
  if (i.m) in["m"] = *i.m;
  if (i.L_m) in["L_m"] = *i.L_m;
  if (i.A) in["A"] = *i.A;
  if (i.B) in["B"] = *i.B;
  if (!i.interval.empty()) in["interval"] = i.interval;
  if (!i.piece_constants.empty()) in["piece_constants"] = i.piece_constants;
  in["beta_method"] = i.beta_method;
  in["beta_certified"] = i.beta_certified;
  out["inputs"] = in;
  if (c.oracle) {
    const auto& o = *c.oracle;
    out["oracle"] = Json{{"pairs", o.pairs},
                         {"max_ratio", o.max_ratio},
                         {"seed", o.seed},
                         {"degenerate_pairs", o.degenerate_pairs},
                         {"degenerate_max_gap", o.degenerate_max_gap},
                         {"dominated", o.dominated}};
  }
  return out;
}

LipschitzCertificate certificate_from(const Json& j, const std::string& where) {
  LipschitzCertificate c;
  const std::string f = text(field(j, "formula", where), where + "/formula");
  c.formula = located(where + "/formula", [&] { return formula_from_string(f); });
  c.constant = number_field(j, "constant", where);
  if (has(j, "lattice_constant")) c.lattice_constant = vector_from(j["lattice_constant"], where + "/lattice_constant");
  c.region = region_from(field(j, "region", where), where + "/region");
  if (has(j, "target_seminorm")) c.q = seminorm_from(j["target_seminorm"], where + "/target_seminorm");
  if (has(j, "inputs")) {
    const Json& in = j["inputs"];
    const std::string iw = where + "/inputs";
    auto opt = [&](const char* key) -> std::optional<double> {
      if (!has(in, key)) return std::nullopt;
      return number(in[key], iw + "/" + key);
    };
    c.inputs.R = opt("R");
    c.inputs.r = opt("r");
    c.inputs.beta = opt("beta");
    c.inputs.a = opt("a");
    c.inputs.L_m = opt("L_m");
    c.inputs.A = opt("A");
    c.inputs.B = opt("B");
    if (has(in, "m")) c.inputs.m = static_cast<int>(integer(in["m"], iw + "/m"));
    if (has(in, "z")) c.inputs.z = vector_from(in["z"], iw + "/z");
    if (has(in, "interval")) {
      const Vector v = vector_from(in["interval"], iw + "/interval");
      c.inputs.interval.assign(v.data(), v.data() + v.size());
    }
    if (has(in, "piece_constants")) {
      const Vector v = vector_from(in["piece_constants"], iw + "/piece_constants");
      c.inputs.piece_constants.assign(v.data(), v.data() + v.size());
    }
    if (has(in, "beta_method")) c.inputs.beta_method = text(in["beta_method"], iw + "/beta_method");
    if (has(in, "beta_certified")) {
      if (!in["beta_certified"].is_boolean()) throw SchemaError(iw + "/beta_certified", "expected a boolean");
      c.inputs.beta_certified = in["beta_certified"].get<bool>();
    }
  }
  if (has(j, "oracle")) {
    const Json& o = j["oracle"];
    const std::string ow = where + "/oracle";
    OracleSummary sum;
    sum.pairs = static_cast<std::size_t>(integer(field(o, "pairs", ow), ow + "/pairs"));
    sum.max_ratio = number_field(o, "max_ratio", ow);
    sum.seed = static_cast<std::uint64_t>(integer(field(o, "seed", ow), ow + "/seed"));
    if (has(o, "degenerate_pairs")) sum.degenerate_pairs = static_cast<std::size_t>(integer(o["degenerate_pairs"], ow + "/degenerate_pairs"));
    if (has(o, "degenerate_max_gap")) sum.degenerate_max_gap = number(o["degenerate_max_gap"], ow + "/degenerate_max_gap");
    if (has(o, "dominated")) {
      if (!o["dominated"].is_boolean()) throw SchemaError(ow + "/dominated", "expected a boolean");
      sum.dominated = o["dominated"].get<bool>();
    }
    c.oracle = sum;
  }
  if (c.constant < 0.0) throw SchemaError(where + "/constant", "constant must be nonnegative");
  return c;
}

Json to_json(const Refusal& r) {
  Json out{{"refused", true}, {"reason", r.reason}};
  if (r.witness) out["witness"] = to_json(*r.witness);
  out["observed"] = r.observed;
  out["bound"] = r.bound;
  if (r.member) out["member"] = *r.member;
  return out;
}

Json to_json(const CertifyResult& r) {
  return std::visit([](const auto& v) { return to_json(v); }, r);
}

}  // namespace conelip::io
