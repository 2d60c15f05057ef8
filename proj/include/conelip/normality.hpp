#pragma once

#include <cstdint>
#include <optional>

#include "conelip/cone.hpp"
#include "conelip/seminorm.hpp"

namespace conelip {

enum class GammaMode { exact_2d, sampled };

/// Lower bound (and, in the planar exact mode, the value) of the least gamma
/// with 0 <= x <= y  =>  q(x) <= gamma q(y).
struct NormalityGamma {
  double gamma_lower = 0.0;
  std::optional<double> gamma_exact;
  std::size_t intervals_examined = 0;
};

/// Throws InputError when the cone is not pointed. exact_2d requires a planar
/// cone and a planar polyhedral norm; sampled works in any dimension and
/// enumerates the coefficient-box vertices of `samples` random order intervals.
NormalityGamma normality_gamma(const PolyCone& cone, const SeminormSpec& q, GammaMode mode,
                               std::size_t samples = 256, std::uint64_t seed = 1);

struct OrderBoundedSup {
  double value = 0.0;
  bool certified = false;  ///< exact vertex enumeration (simplicial data)
  std::size_t points_evaluated = 0;
};

/// sup of q over [lo, hi]_o. Exact when the cone's generators are linearly
/// independent; otherwise a sampled lower estimate. Throws InputError when
/// the endpoints are incomparable.
OrderBoundedSup o_bounded_sup(const OrderInterval& interval, const SeminormSpec& q, std::size_t samples = 4096,
                              std::uint64_t seed = 1);

}  // namespace conelip
