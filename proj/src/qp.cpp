#include "routeq/qp.hpp"

#include <cmath>
#include <limits>

namespace routeq {

namespace {

constexpr double kZeroDir = 1e-11;

// Kernel basis of the stacked working-set rows; empty matrix when the rows
// span the whole space.
Eigen::MatrixXd kernel_basis(const Eigen::MatrixXd& rows, int dim) {
  if (rows.rows() == 0) return Eigen::MatrixXd::Identity(dim, dim);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(rows);
  lu.setThreshold(1e-10);
  return lu.kernel();  // dim x nullity; nullity 0 gives a dim x 1 zero column
}

}  // namespace

SolveReport solve_qp(const Polyhedron& poly, const Eigen::MatrixXd& H,
                     const Eigen::VectorXd& c, const Tolerances& tol,
                     const Eigen::VectorXd* start) {
  const int n = poly.dim;
  if (H.rows() != n || H.cols() != n || c.size() != n)
    throw DimensionMismatch("solve_qp: H/c dimensions do not match the polyhedron");
  const int mi = poly.ineq_count();

  SolveReport report;
  report.x = Eigen::VectorXd::Zero(n);

  Eigen::VectorXd x;
  if (start && poly.contains(*start, 10 * tol.feas * (1.0 + start->cwiseAbs().maxCoeff()))) {
    x = *start;
  } else {
    SolveReport feas = solve_lp(poly, Eigen::VectorXd::Zero(n), Sense::Minimize, tol);
    if (!feas.ok()) {
      report.status = feas.status;
      return report;
    }
    x = feas.x;
  }

  const double gscale = 1.0 + c.cwiseAbs().maxCoeff() + H.cwiseAbs().maxCoeff();

  // Working set: indices of inequality rows treated as equalities.
  std::vector<char> in_ws(mi, 0);
  for (int i = 0; i < mi; ++i) {
    double slack = poly.ineq_lhs.row(i).dot(x) - poly.ineq_rhs(i);
    if (std::abs(slack) <= tol.feas * (1.0 + std::abs(poly.ineq_rhs(i)))) in_ws[i] = 1;
  }

  auto stacked_rows = [&]() {
    int k = poly.eq_count();
    for (int i = 0; i < mi; ++i) k += in_ws[i];
    Eigen::MatrixXd rows(k, n);
    int r = 0;
    for (int i = 0; i < poly.eq_count(); ++i) rows.row(r++) = poly.eq_lhs.row(i);
    for (int i = 0; i < mi; ++i)
      if (in_ws[i]) rows.row(r++) = poly.ineq_lhs.row(i);
    return rows;
  };

  const int max_iter = 200 + 40 * (n + poly.eq_count() + mi);
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    Eigen::VectorXd g = H * x + c;
    Eigen::MatrixXd W = stacked_rows();
    Eigen::MatrixXd Z = kernel_basis(W, n);
    const int nz = static_cast<int>(Z.cols());

    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    bool have_ray = false;
    Eigen::VectorXd ray;

    if (nz > 0 && Z.cwiseAbs().maxCoeff() > 0.0) {
      Eigen::MatrixXd Hr = Z.transpose() * H * Z;
      Eigen::VectorXd gr = Z.transpose() * g;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Hr);
      const Eigen::VectorXd& ev = eig.eigenvalues();
      const Eigen::MatrixXd& V = eig.eigenvectors();
      double ev_cut = 1e-11 * (1.0 + ev.cwiseAbs().maxCoeff());

      // Component of the reduced gradient lying in the reduced-Hessian
      // nullspace: the objective decreases linearly along it forever.
      Eigen::VectorXd null_comp = Eigen::VectorXd::Zero(nz);
      for (int k = 0; k < nz; ++k)
        if (ev(k) <= ev_cut) null_comp += V.col(k).dot(gr) * V.col(k);
      if (null_comp.cwiseAbs().maxCoeff() > 1e-9 * gscale) {
        ray = -Z * null_comp;
        have_ray = true;
      } else {
        Eigen::VectorXd q = Eigen::VectorXd::Zero(nz);
        for (int k = 0; k < nz; ++k)
          if (ev(k) > ev_cut) q -= (V.col(k).dot(gr) / ev(k)) * V.col(k);
        p = Z * q;
      }
    }

    if (have_ray) {
      // Ride the descent ray to the nearest inactive constraint; none means
      // the problem is unbounded below.
      double alpha = std::numeric_limits<double>::infinity();
      for (int i = 0; i < mi; ++i) {
        if (in_ws[i]) continue;
        double dir = poly.ineq_lhs.row(i).dot(ray);
        if (dir < -kZeroDir) {
          double slack = poly.ineq_lhs.row(i).dot(x) - poly.ineq_rhs(i);
          alpha = std::min(alpha, std::max(0.0, slack / -dir));
        }
      }
      if (!std::isfinite(alpha)) {
        report.status = SolveStatus::Unbounded;
        report.x = x;
        report.iterations = iter;
        return report;
      }
      int blocking = -1;
      for (int i = 0; i < mi && blocking < 0; ++i) {
        if (in_ws[i]) continue;
        double dir = poly.ineq_lhs.row(i).dot(ray);
        if (dir < -kZeroDir) {
          double slack = poly.ineq_lhs.row(i).dot(x) - poly.ineq_rhs(i);
          if (std::max(0.0, slack / -dir) <= alpha + kZeroDir) blocking = i;
        }
      }
      x += alpha * ray;
      in_ws[blocking] = 1;
      continue;
    }

    if (p.cwiseAbs().maxCoeff() <= 1e-11 * (1.0 + x.cwiseAbs().maxCoeff())) {
      // Stationary on the working set: check multipliers, drop the
      // lowest-index violator if any.
      Eigen::MatrixXd W2 = stacked_rows();
      Eigen::VectorXd mult;
      if (W2.rows() > 0)
        mult = W2.transpose().completeOrthogonalDecomposition().solve(g);
      int drop = -1;
      int r = poly.eq_count();
      for (int i = 0; i < mi; ++i) {
        if (!in_ws[i]) continue;
        if (mult(r) < -tol.kkt * gscale * 10 && drop < 0) drop = i;
        ++r;
      }
      if (drop < 0) {
        report.status = SolveStatus::Optimal;
        report.x = x;
        report.iterations = iter;
        report.objective = 0.5 * x.dot(H * x) + c.dot(x);
        double stat = W2.rows() > 0
                          ? (g - W2.transpose() * mult).cwiseAbs().maxCoeff()
                          : g.cwiseAbs().maxCoeff();
        double feas_violation = 0.0;
        if (poly.eq_count())
          feas_violation = (poly.eq_lhs * x - poly.eq_rhs).cwiseAbs().maxCoeff();
        if (mi) {
          double v = (poly.ineq_lhs * x - poly.ineq_rhs).minCoeff();
          feas_violation = std::max(feas_violation, std::max(0.0, -v));
        }
        report.kkt_residual = std::max(stat / gscale, feas_violation);
        for (int i = 0; i < mi; ++i) {
          double slack = poly.ineq_lhs.row(i).dot(x) - poly.ineq_rhs(i);
          if (std::abs(slack) <= 1e-8 * (1.0 + std::abs(poly.ineq_rhs(i))))
            report.active.push_back(i);
        }
        return report;
      }
      in_ws[drop] = 0;
      continue;
    }

    // Step toward the working-set minimizer, stopping at the first blocking
    // constraint.
    double alpha = 1.0;
    for (int i = 0; i < mi; ++i) {
      if (in_ws[i]) continue;
      double dir = poly.ineq_lhs.row(i).dot(p);
      if (dir < -kZeroDir) {
        double slack = poly.ineq_lhs.row(i).dot(x) - poly.ineq_rhs(i);
        alpha = std::min(alpha, std::max(0.0, slack / -dir));
      }
    }
    if (alpha < 1.0 - kZeroDir) {
      int blocking = -1;
      for (int i = 0; i < mi && blocking < 0; ++i) {
        if (in_ws[i]) continue;
        double dir = poly.ineq_lhs.row(i).dot(p);
        if (dir < -kZeroDir) {
          double slack = poly.ineq_lhs.row(i).dot(x) - poly.ineq_rhs(i);
          if (std::max(0.0, slack / -dir) <= alpha + kZeroDir) blocking = i;
        }
      }
      x += alpha * p;
      in_ws[blocking] = 1;
    } else {
      x += p;
    }
  }

  report.status = SolveStatus::IterationLimit;
  report.x = x;
  report.iterations = iter;
  return report;
}

SolveReport solve_vi(const Polyhedron& poly, const Eigen::MatrixXd& A,
                     const Eigen::VectorXd& c, const Tolerances& tol,
                     const Eigen::VectorXd* start) {
  return solve_qp(poly, A, c, tol, start);
}

}  // namespace routeq
