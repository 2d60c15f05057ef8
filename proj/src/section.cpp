#include "conelip/section.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "conelip/errors.hpp"

namespace conelip {

Section::Section(Fn fn, PolyCone cone, double t_min, double t_max)
    : fn_(std::move(fn)), cone_(std::move(cone)), t_min_(t_min), t_max_(t_max) {
  if (!(t_min_ <= t_max_)) throw InputError("Section: empty parameter range");
}

Section Section::along(const ConvexMap& f, const Vector& base, const Vector& direction, std::optional<Eigen::Index> output) {
  require_dim(base, f.domain_dim(), "Section base");
  require_dim(direction, f.domain_dim(), "Section direction");
  const auto [lo, hi] = f.domain().line_range(base, direction);
  if (lo > hi) throw InputError("Section: line misses the domain");
  auto map = std::make_shared<const ConvexMap>(f);
  Vector b = base;
  Vector d = direction;
  if (output) {
    if (*output < 0 || *output >= f.target_dim()) throw InputError("Section: output index out of range");
    if (!f.coordinate_target()) throw InputError("Section: a single output is ordered by R_+ only under the coordinate cone");
    const Eigen::Index i = *output;
    return Section([map, b, d, i](double t) { return Vector::Constant(1, map->evaluate_unchecked(b + t * d)[i]); },
                   PolyCone::orthant(1), lo, hi);
  }
  return Section([map, b, d](double t) { return map->evaluate_unchecked(b + t * d); }, f.target_cone(), lo, hi);
}

Section Section::through(const ConvexMap& f, const Vector& x, const Vector& y, std::optional<Eigen::Index> output) {
  require_same_dim(x, y, "Section::through");
  return along(f, x, y - x, output);
}

Section Section::scalar(std::function<double(double)> fn, double t_min, double t_max) {
  return Section([fn = std::move(fn)](double t) { return Vector::Constant(1, fn(t)); }, PolyCone::orthant(1), t_min, t_max);
}

bool Section::in_range(double t) const {
  const double slack = 1e-12 * (1.0 + std::abs(t));
  return std::isfinite(t) && t >= t_min_ - slack && t <= t_max_ + slack;
}

Vector Section::operator()(double t) const {
  if (!in_range(t)) throw InputError("Section: parameter " + std::to_string(t) + " outside the domain");
  return fn_(t);
}

double Section::value(double t) const {
  if (target_dim() != 1) throw InputError("Section::value: section is vector-valued");
  return (*this)(t)[0];
}

}  // namespace conelip
