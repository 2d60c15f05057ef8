#include "conelip/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "conelip/errors.hpp"

namespace conelip::lp {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr int kMaxIterations = 100000;

class Tableau {
 public:
  Tableau(const Matrix& A, const Vector& b) : m_(A.rows()), n_(A.cols()), t_(m_ + 1, n_ + m_ + 1), basis_(m_) {
    t_.setZero();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double sign = b[i] < 0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = sign * A.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs()) = sign * b[i];
      basis_[i] = n_ + i;
    }
    scale_ = std::max(1.0, t_.topRows(m_).cwiseAbs().maxCoeff());
  }

  Eigen::Index rhs() const { return n_ + m_; }

  // Reduced-cost row for phase one (sum of artificials).
  void load_phase_one() {
    t_.row(m_).setZero();
    for (Eigen::Index i = 0; i < m_; ++i) {
      t_.row(m_).head(n_) -= t_.row(i).head(n_);
      t_(m_, rhs()) -= t_(i, rhs());
    }
  }

  void load_phase_two(const Vector& c) {
    t_.row(m_).setZero();
    t_.row(m_).head(n_) = c.transpose();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Eigen::Index bi = basis_[i];
      if (bi >= n_) continue;
      const double cb = c[bi];
      if (cb != 0.0) {
        t_.row(m_).head(n_) -= cb * t_.row(i).head(n_);
        t_(m_, rhs()) -= cb * t_(i, rhs());
      }
    }
  }

  // Runs simplex iterations over columns [0, ncols). Returns false when unbounded.
  bool iterate(Eigen::Index ncols) {
    const double tol = kPivotTol * scale_;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < ncols; ++j) {
        if (t_(m_, j) < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (dropped_row(i)) continue;
        const double a = t_(i, enter);
        if (a > tol) {
          const double ratio = t_(i, rhs()) / a;
          if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis_[i] < basis_[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw ResourceError("simplex: iteration limit exceeded");
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[row] = col;
  }

  // Pivots basic artificials out where possible; rows that cannot be
  // pivoted are linearly dependent and are dropped.
  void expel_artificials() {
    const double tol = kPivotTol * scale_;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > tol) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
      } else {
        dropped_.push_back(i);
      }
    }
  }

  bool dropped_row(Eigen::Index i) const { return std::find(dropped_.begin(), dropped_.end(), i) != dropped_.end(); }

  double phase_value() const { return -t_(m_, rhs()); }
  double scale() const { return scale_; }

  Vector primal() const {
    Vector x = Vector::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, t_(i, rhs()));
    }
    return x;
  }

  Eigen::Index cols() const { return n_; }

 private:
  Eigen::Index m_;
  Eigen::Index n_;
  Matrix t_;
  std::vector<Eigen::Index> basis_;
  std::vector<Eigen::Index> dropped_;
  double scale_ = 1.0;
};

}  // namespace

Result solve_standard(const Matrix& A, const Vector& b, const Vector& c) {
  if (A.rows() != b.size() || A.cols() != c.size()) throw InputError("simplex: inconsistent problem dimensions");
  Result out;
  Tableau tab(A, b);
  tab.load_phase_one();
  tab.iterate(tab.cols() + A.rows());
  const double feas_tol = 1e-9 * std::max(1.0, b.cwiseAbs().sum());
  if (tab.phase_value() > feas_tol) {
    out.status = Status::infeasible;
    return out;
  }
  tab.expel_artificials();
  tab.load_phase_two(c);
  if (!tab.iterate(tab.cols())) {
    out.status = Status::unbounded;
    return out;
  }
  out.status = Status::optimal;
  out.x = tab.primal();
  out.objective = c.dot(out.x);
  return out;
}

NnlsResult nnls(const Matrix& A, const Vector& b) {
  if (A.rows() != b.size()) throw InputError("nnls: inconsistent problem dimensions");
  const Eigen::Index n = A.cols();
  Vector x = Vector::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() * std::max<double>(1.0, A.cwiseAbs().colwise().sum().maxCoeff()) *
                     static_cast<double>(std::max(A.rows(), n));

  auto solve_passive = [&](Vector& s) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    }
    Matrix sub(A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = A.col(idx[k]);
    const Vector sol = sub.colPivHouseholderQr().solve(b);
    s = Vector::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) s[idx[k]] = sol[static_cast<Eigen::Index>(k)];
  };

  const int max_outer = static_cast<int>(3 * n + 10);
  for (int outer = 0; outer < max_outer; ++outer) {
    const Vector w = A.transpose() * (b - A * x);
    Eigen::Index best = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w[j] > wmax) {
        wmax = w[j];
        best = j;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;

    for (int inner = 0; inner < max_outer; ++inner) {
      Vector s;
      solve_passive(s);
      bool all_positive = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s[j] <= 0.0) all_positive = false;
      }
      if (all_positive) {
        x = s;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s[j] <= 0.0) {
          const double denom = x[j] - s[j];
          if (denom > 0.0) alpha = std::min(alpha, x[j] / denom);
        }
      }
      x += alpha * (s - x);
      bool dropped_any = false;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x[j] <= tol * std::max(1.0, std::abs(s[j]))) {
          passive[static_cast<std::size_t>(j)] = false;
          x[j] = 0.0;
          dropped_any = true;
        }
      }
      if (!dropped_any) {
        // Degenerate step; drop the most negative coordinate to make progress.
        Eigen::Index worst = -1;
        for (Eigen::Index j = 0; j < n; ++j) {
          if (passive[static_cast<std::size_t>(j)] && (worst < 0 || s[j] < s[worst])) worst = j;
        }
        if (worst >= 0) {
          passive[static_cast<std::size_t>(worst)] = false;
          x[worst] = 0.0;
        }
      }
    }
  }
  x = x.cwiseMax(0.0);
  NnlsResult out;
  out.residual_inf = A.rows() == 0 ? 0.0 : (A * x - b).cwiseAbs().maxCoeff();
  out.x = std::move(x);
  return out;
}

}  // namespace conelip::lp
