#include "routeq/lp.hpp"

#include <cmath>
#include <limits>

namespace routeq {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterationLimit: return "iteration_limit";
  }
  return "?";
}

const SolveReport& require_optimal(const SolveReport& r, const char* context) {
  if (!r.ok())
    throw SolverFailure(std::string(context) + ": solver returned " + to_string(r.status));
  return r;
}

namespace {

constexpr double kPivotEps = 1e-11;

// Standard-form tableau: min c.z s.t. M z = b, z >= 0. The caller splits free
// variables into positive/negative parts and appends slacks before we get
// here; we append one artificial per row for phase 1.
struct Simplex {
  int rows;
  int cols;       // structural columns (no artificials)
  int total;      // cols + rows artificials
  Eigen::MatrixXd t;     // rows x (total+1), last column is the rhs
  Eigen::VectorXd cost;  // reduced-cost row, length total+1 (last = -objective)
  std::vector<int> basis;
  Eigen::VectorXd c_struct;
  int iterations = 0;
  int max_iterations;

  Eigen::VectorXd row_sign;

  Simplex(const Eigen::MatrixXd& M, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
      : rows(static_cast<int>(M.rows())),
        cols(static_cast<int>(M.cols())),
        total(cols + rows),
        t(rows, cols + rows + 1),
        cost(cols + rows + 1),
        basis(rows),
        c_struct(c),
        row_sign(Eigen::VectorXd::Ones(rows)) {
    max_iterations = 200 + 50 * (rows + total);
    t.setZero();
    t.block(0, 0, rows, cols) = M;
    t.col(total) = b;
    // Flip rows so the rhs is nonnegative, then the artificial basis is
    // feasible.
    for (int i = 0; i < rows; ++i) {
      if (t(i, total) < 0.0) {
        t.row(i) = -t.row(i);
        row_sign(i) = -1.0;
      }
      t(i, cols + i) = 1.0;
      basis[i] = cols + i;
    }
  }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i < rows; ++i) {
      if (i == row) continue;
      double factor = t(i, col);
      if (factor != 0.0) t.row(i) -= factor * t.row(row);
    }
    double cf = cost(col);
    if (cf != 0.0) cost -= cf * t.row(row).transpose();
    basis[row] = col;
    ++iterations;
  }

  // Entering column: steepest reduced cost while the objective makes
  // progress, switching to Bland's lowest-index rule after a degenerate
  // stall (which restores the termination guarantee). Leaving row: min
  // ratio, ties broken by lowest basic-variable index.
  SolveStatus iterate(bool allow_artificial_entering, double enter_tol) {
    const int limit = allow_artificial_entering ? total : cols;
    const int stall_cap = 2 * (rows + 4);
    int stalled = 0;
    bool bland = false;
    double last_objective = objective_value();
    while (iterations < max_iterations) {
      int entering = -1;
      if (bland) {
        for (int j = 0; j < limit; ++j) {
          if (cost(j) < -enter_tol) {
            entering = j;
            break;
          }
        }
      } else {
        double best = -enter_tol;
        for (int j = 0; j < limit; ++j) {
          if (cost(j) < best) {
            best = cost(j);
            entering = j;
          }
        }
      }
      if (entering < 0) return SolveStatus::Optimal;
      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows; ++i) {
        double a = t(i, entering);
        if (a > kPivotEps) {
          double ratio = t(i, total) / a;
          if (ratio < best_ratio - kPivotEps ||
              (ratio < best_ratio + kPivotEps &&
               (leaving < 0 || basis[i] < basis[leaving]))) {
            best_ratio = std::min(best_ratio, ratio);
            leaving = i;
          }
        }
      }
      if (leaving < 0) return SolveStatus::Unbounded;
      pivot(leaving, entering);
      double objective = objective_value();
      if (objective < last_objective - 1e-13 * (1.0 + std::abs(last_objective))) {
        stalled = 0;
        bland = false;
      } else if (!bland && ++stalled >= stall_cap) {
        bland = true;
      }
      last_objective = objective;
    }
    return SolveStatus::IterationLimit;
  }

  void set_phase1_cost() {
    cost.setZero();
    // Reduced costs of minimizing the sum of artificials, given that the
    // artificials themselves are basic.
    for (int i = 0; i < rows; ++i) cost.head(total + 1) -= t.row(i).transpose();
    for (int i = 0; i < rows; ++i) cost(cols + i) = 0.0;
  }

  void set_phase2_cost() {
    cost.setZero();
    for (int j = 0; j < cols; ++j) cost(j) = c_struct(j);
    for (int i = 0; i < rows; ++i) {
      double cb = basis[i] < cols ? c_struct(basis[i]) : 0.0;
      if (cb != 0.0) cost -= cb * t.row(i).transpose();
    }
  }

  double objective_value() const { return -cost(total); }

  // Pivots basic artificials out where a structural column is available;
  // rows that stay artificial-basic are redundant and harmless because the
  // artificial is pinned at zero and barred from re-entering.
  void expel_artificials() {
    for (int i = 0; i < rows; ++i) {
      if (basis[i] < cols) continue;
      for (int j = 0; j < cols; ++j) {
        if (std::abs(t(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(total);
    for (int i = 0; i < rows; ++i) z(basis[i]) = t(i, total);
    return z.head(cols);
  }
};

}  // namespace

SolveReport solve_lp(const Polyhedron& poly, const Eigen::VectorXd& c, Sense sense,
                     const Tolerances& tol) {
  const int n = poly.dim;
  if (n <= 0) throw DimensionMismatch("solve_lp: polyhedron has dimension 0");
  if (c.size() != n)
    throw DimensionMismatch("solve_lp: objective has length " + std::to_string(c.size()) +
                            ", expected " + std::to_string(n));
  const int me = poly.eq_count();
  const int mi = poly.ineq_count();
  const int rows = me + mi;
  const int cols = 2 * n + mi;  // x+, x-, slack per inequality

  SolveReport report;
  report.x = Eigen::VectorXd::Zero(n);
  if (rows == 0) {
    // No constraints at all: optimal iff the objective is zero.
    bool zero = c.cwiseAbs().maxCoeff() == 0.0;
    report.status = zero ? SolveStatus::Optimal : SolveStatus::Unbounded;
    return report;
  }

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b(rows);
  if (me) {
    M.block(0, 0, me, n) = poly.eq_lhs;
    M.block(0, n, me, n) = -poly.eq_lhs;
    b.head(me) = poly.eq_rhs;
  }
  if (mi) {
    M.block(me, 0, mi, n) = poly.ineq_lhs;
    M.block(me, n, mi, n) = -poly.ineq_lhs;
    M.block(me, 2 * n, mi, mi) = -Eigen::MatrixXd::Identity(mi, mi);
    b.tail(mi) = poly.ineq_rhs;
  }

  Eigen::VectorXd cz = Eigen::VectorXd::Zero(cols);
  const double sign = (sense == Sense::Maximize) ? -1.0 : 1.0;
  cz.head(n) = sign * c;
  cz.segment(n, n) = -sign * c;

  Simplex simplex(M, b, cz);
  const double scale_b = 1.0 + b.cwiseAbs().maxCoeff();
  const double scale_c = 1.0 + cz.cwiseAbs().maxCoeff();

  simplex.set_phase1_cost();
  SolveStatus s1 = simplex.iterate(true, 1e-10 * scale_b);
  report.iterations = simplex.iterations;
  if (s1 == SolveStatus::IterationLimit) {
    report.status = s1;
    return report;
  }
  if (simplex.objective_value() > tol.feas * scale_b) {
    report.status = SolveStatus::Infeasible;
    return report;
  }
  simplex.expel_artificials();

  simplex.set_phase2_cost();
  SolveStatus s2 = simplex.iterate(false, 1e-10 * scale_c);
  report.iterations = simplex.iterations;
  if (s2 != SolveStatus::Optimal) {
    report.status = s2;
    return report;
  }

  Eigen::VectorXd z = simplex.solution();
  report.x = z.head(n) - z.segment(n, n);
  report.status = SolveStatus::Optimal;
  report.objective = c.dot(report.x);

  // Duals from the final basis of the (row-flipped) standard-form system:
  // B^T y = c_B, dual objective y^T b_flipped.
  Eigen::MatrixXd B(rows, rows);
  Eigen::VectorXd cb(rows);
  for (int i = 0; i < rows; ++i) {
    if (simplex.basis[i] < cols) {
      B.col(i) = simplex.row_sign.asDiagonal() * M.col(simplex.basis[i]);
      cb(i) = cz(simplex.basis[i]);
    } else {
      // Residual artificial (redundant row): unit column, zero cost.
      B.col(i) = Eigen::VectorXd::Zero(rows);
      B(simplex.basis[i] - cols, i) = 1.0;
      cb(i) = 0.0;
    }
  }
  Eigen::VectorXd y = B.transpose().fullPivLu().solve(cb);
  report.dual_objective = sign * y.dot(simplex.row_sign.asDiagonal() * b);

  double feas_violation = 0.0;
  if (me) feas_violation = (poly.eq_lhs * report.x - poly.eq_rhs).cwiseAbs().maxCoeff();
  if (mi) {
    double v = (poly.ineq_lhs * report.x - poly.ineq_rhs).minCoeff();
    feas_violation = std::max(feas_violation, std::max(0.0, -v));
  }
  report.kkt_residual =
      std::max(feas_violation, std::abs(report.objective - report.dual_objective) /
                                   (1.0 + std::abs(report.objective)));

  for (int i = 0; i < mi; ++i) {
    double slack = poly.ineq_lhs.row(i).dot(report.x) - poly.ineq_rhs(i);
    if (std::abs(slack) <= 1e-8 * (1.0 + std::abs(poly.ineq_rhs(i))))
      report.active.push_back(i);
  }
  return report;
}

}  // namespace routeq
