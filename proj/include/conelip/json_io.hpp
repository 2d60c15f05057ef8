#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "conelip/certificate.hpp"
#include "conelip/convex_map.hpp"
#include "conelip/errors.hpp"
#include "conelip/metrics.hpp"

namespace conelip::io {

using Json = nlohmann::ordered_json;

/// A document that does not match the schema. `where` is a JSON pointer.
class SchemaError : public InputError {
 public:
  SchemaError(std::string where, const std::string& what)
      : InputError(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Parses text; syntax errors become SchemaError with "line L, column C".
Json parse_text(const std::string& text);
Json read_file(const std::string& path);

/// Every double rendered with 17 significant digits; NaN and infinities as null.
std::string dump(const Json& j, int indent = 2);

Vector vector_from(const Json& j, const std::string& where);
Matrix rows_from(const Json& j, const std::string& where);  ///< array of equal-length rows
Json to_json(const Vector& v);

/// {"dim": n, "generators": [[...], ...]} or {"kind": "orthant", "dim": n},
/// {"kind": "sector", "eps": e}, {"kind": "product", "factors": [...]}.
PolyCone cone_from(const Json& j, const std::string& where);
Json to_json(const PolyCone& c);

/// {"kind": "weighted-sup" | "weighted-l1", "params": {"weights": [...]}},
/// {"kind": "minkowski-of-polytope", "params": {"vertices": [[...], ...]}},
/// {"kind": "max-of", "params": {"parts": [...]}}.
SeminormSpec seminorm_from(const Json& j, const std::string& where);
Json to_json(const SeminormSpec& p);

/// {"kind": "whole", "dim": n}, {"kind": "box", "lo": [...], "hi": [...]}
/// (null bounds are infinite), {"kind": "ball", "center", "radius", "seminorm"}.
Domain domain_from(const Json& j, const std::string& where);
Json to_json(const Domain& d);

/// {"body": {...}, "domain": {...}, "target_cone": {...}}. Body kinds:
/// "max-affine" (outputs: [[{"weight", "offset"}]]), "psd-quadratic" and
/// "negated-quadratic" (outputs: [{"Q", "c", "d"}]), "pw-path" (breakpoints,
/// values, optional functional) and "composite" (parts: [maps]).
ConvexMap map_from(const Json& j, const std::string& where);
Json to_json(const ConvexMap& f);

/// {"kind": "lp-quasi", "p", "N"}, {"kind": "graduated", "family": [...]},
/// {"kind": "cube"}.
Metric metric_from(const Json& j, const std::string& where);
Json to_json(const Metric& m);

Json to_json(const CertRegion& r);
CertRegion region_from(const Json& j, const std::string& where);
Json to_json(const LipschitzCertificate& c);
LipschitzCertificate certificate_from(const Json& j, const std::string& where);
Json to_json(const Refusal& r);
Json to_json(const CertifyResult& r);

}  // namespace conelip::io
