#include "routeq/polyhedron.hpp"

#include <algorithm>
#include <limits>

namespace routeq {

void Polyhedron::add_equality(const Eigen::RowVectorXd& a, double b) {
  eq_lhs.conservativeResize(eq_lhs.rows() + 1, dim);
  eq_lhs.row(eq_lhs.rows() - 1) = a;
  eq_rhs.conservativeResize(eq_rhs.size() + 1);
  eq_rhs(eq_rhs.size() - 1) = b;
}

void Polyhedron::add_inequality(const Eigen::RowVectorXd& a, double b) {
  ineq_lhs.conservativeResize(ineq_lhs.rows() + 1, dim);
  ineq_lhs.row(ineq_lhs.rows() - 1) = a;
  ineq_rhs.conservativeResize(ineq_rhs.size() + 1);
  ineq_rhs(ineq_rhs.size() - 1) = b;
}

void Polyhedron::fix_coordinate(int i, double value) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(dim);
  row(i) = 1.0;
  add_equality(row, value);
}

void Polyhedron::require_nonnegative(int i) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(dim);
  row(i) = 1.0;
  add_inequality(row, 0.0);
}

bool Polyhedron::contains(const Eigen::VectorXd& x, double tol) const {
  if (x.size() != dim) return false;
  if (eq_count() > 0 && ((eq_lhs * x - eq_rhs).cwiseAbs().maxCoeff() > tol)) return false;
  if (ineq_count() > 0 && ((ineq_lhs * x - ineq_rhs).minCoeff() < -tol)) return false;
  return true;
}

std::vector<Eigen::VectorXd> enumerate_vertices(const Polyhedron& poly, double tol) {
  std::vector<Eigen::VectorXd> out;
  const int n = poly.dim;
  const int me = poly.eq_count();
  const int mi = poly.ineq_count();
  const int m = me + mi;
  if (n == 0 || m < n) return out;

  Eigen::MatrixXd rows(m, n);
  Eigen::VectorXd rhs(m);
  if (me) {
    rows.topRows(me) = poly.eq_lhs;
    rhs.head(me) = poly.eq_rhs;
  }
  if (mi) {
    rows.bottomRows(mi) = poly.ineq_lhs;
    rhs.tail(mi) = poly.ineq_rhs;
  }

  // Tighten enough inequality rows alongside the (possibly redundant)
  // equalities to pin a point, then keep the feasible solutions.
  int eq_rank = 0;
  if (me > 0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(poly.eq_lhs);
    lu.setThreshold(1e-10);
    eq_rank = static_cast<int>(lu.rank());
  }
  const int need = n - eq_rank;

  std::vector<int> pick(need);
  for (int i = 0; i < need; ++i) pick[i] = i;

  auto try_combo = [&]() {
    Eigen::MatrixXd S(me + need, n);
    Eigen::VectorXd b(me + need);
    if (me) {
      S.topRows(me) = poly.eq_lhs;
      b.head(me) = poly.eq_rhs;
    }
    for (int i = 0; i < need; ++i) {
      S.row(me + i) = poly.ineq_lhs.row(pick[i]);
      b(me + i) = poly.ineq_rhs(pick[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
    lu.setThreshold(1e-10);
    if (lu.rank() < n) return;
    Eigen::VectorXd x = lu.solve(b);
    if ((S * x - b).cwiseAbs().maxCoeff() > tol) return;
    if (!poly.contains(x, tol)) return;
    for (const auto& v : out)
      if ((v - x).cwiseAbs().maxCoeff() <= 1e-7 * (1.0 + x.cwiseAbs().maxCoeff())) return;
    out.push_back(x);
  };

  if (need == 0) {
    try_combo();
  } else if (mi >= need) {
    while (true) {
      try_combo();
      int i = need - 1;
      while (i >= 0 && pick[i] == mi - need + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < need; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  std::sort(out.begin(), out.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (int i = 0; i < a.size(); ++i) {
      if (a(i) < b(i) - 1e-12) return true;
      if (a(i) > b(i) + 1e-12) return false;
    }
    return false;
  });
  return out;
}

std::vector<int> independent_rows(const Eigen::MatrixXd& M, double tol) {
  std::vector<int> picked;
  Eigen::MatrixXd basis(M.cols(), 0);
  for (int i = 0; i < M.rows(); ++i) {
    Eigen::VectorXd v = M.row(i).transpose();
    double scale = v.norm();
    if (scale <= tol) continue;
    Eigen::VectorXd r = v;
    if (basis.cols() > 0) {
      r -= basis * (basis.transpose() * v);
      r -= basis * (basis.transpose() * r);  // second pass stabilizes
    }
    if (r.norm() > tol * scale) {
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = r / r.norm();
      picked.push_back(i);
    }
  }
  return picked;
}

double hausdorff_distance(const std::vector<Eigen::VectorXd>& a,
                          const std::vector<Eigen::VectorXd>& b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto one_sided = [](const std::vector<Eigen::VectorXd>& from,
                      const std::vector<Eigen::VectorXd>& to) {
    double worst = 0.0;
    for (const auto& x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : to) best = std::min(best, (x - y).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

}  // namespace routeq
