#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <string_view>

namespace conelip {

/// Dense real coordinate vector, the element type of every space here.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Residual tolerance for order comparisons (relative to 1 + scale).
inline constexpr double kResidualTol = 1e-9;

Vector make_vector(std::initializer_list<double> values);

/// Throws InputError when a.size() != b.size(); `what` names the operation.
void require_same_dim(const Vector& a, const Vector& b, std::string_view what);
void require_dim(const Vector& v, Eigen::Index dim, std::string_view what);
void require_finite(const Vector& v, std::string_view what);

inline double sup_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace conelip
