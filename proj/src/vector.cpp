#include "conelip/vector.hpp"

#include <string>

#include "conelip/errors.hpp"

namespace conelip {

Vector make_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

void require_same_dim(const Vector& a, const Vector& b, std::string_view what) {
  if (a.size() != b.size()) {
    throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
}

void require_dim(const Vector& v, Eigen::Index dim, std::string_view what) {
  if (v.size() != dim) {
    throw InputError(std::string(what) + ": expected dimension " + std::to_string(dim) + ", got " +
                     std::to_string(v.size()));
  }
}

void require_finite(const Vector& v, std::string_view what) {
  if (!v.allFinite()) throw InputError(std::string(what) + ": non-finite entry");
}

}  // namespace conelip
