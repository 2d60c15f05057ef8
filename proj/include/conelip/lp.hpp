#pragma once

#include "conelip/vector.hpp"

namespace conelip::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Vector x;
  double objective = 0.0;
};

/// Dense two-phase simplex (Bland's rule) for
///   minimize c.x  subject to  A x = b,  x >= 0.
/// Sized for the small programs produced by cone and gauge queries.
Result solve_standard(const Matrix& A, const Vector& b, const Vector& c);

/// Lawson-Hanson nonnegative least squares: argmin ||A x - b||_2 over x >= 0.
struct NnlsResult {
  Vector x;
  double residual_inf = 0.0;  ///< ||A x - b||_inf at the returned x
};
NnlsResult nnls(const Matrix& A, const Vector& b);

}  // namespace conelip::lp
