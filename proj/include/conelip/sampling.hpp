#pragma once

#include <random>
#include <vector>

#include "conelip/certificate.hpp"

namespace conelip {

/// Half-widths of an axis box containing the closed unit ball of p. Kernel
/// coordinates of weighted seminorms get `kernel_extent`.
Vector unit_ball_halfwidths(const SeminormSpec& p, double kernel_extent = 1.0);

/// Coordinates with zero weight (weighted kinds; empty otherwise).
std::vector<Eigen::Index> kernel_coordinates(const SeminormSpec& p);

/// One point of the region. Seminorm balls are drawn uniformly by rejection
/// from their bounding box (kernel directions truncated to |t| <= radius);
/// metric balls and balls where rejection stalls use a radial draw.
Vector sample_region(const CertRegion& region, std::mt19937_64& rng);

}  // namespace conelip
