#pragma once

#include <Eigen/Dense>
#include <vector>

#include "routeq/types.hpp"

namespace routeq {

// Polyhedron {x : eq_lhs x = eq_rhs, ineq_lhs x >= ineq_rhs}. May be empty or
// unbounded; solvers detect both rather than assuming anything.
struct Polyhedron {
  int dim = 0;
  Eigen::MatrixXd eq_lhs;
  Eigen::VectorXd eq_rhs;
  Eigen::MatrixXd ineq_lhs;
  Eigen::VectorXd ineq_rhs;

  explicit Polyhedron(int d = 0)
      : dim(d),
        eq_lhs(0, d), eq_rhs(0),
        ineq_lhs(0, d), ineq_rhs(0) {}

  int eq_count() const { return static_cast<int>(eq_lhs.rows()); }
  int ineq_count() const { return static_cast<int>(ineq_lhs.rows()); }

  void add_equality(const Eigen::RowVectorXd& a, double b);
  void add_inequality(const Eigen::RowVectorXd& a, double b);  // a x >= b

  // Pins x(i) = value.
  void fix_coordinate(int i, double value);
  // Adds x(i) >= 0.
  void require_nonnegative(int i);

  bool contains(const Eigen::VectorXd& x, double tol) const;
};

// All vertices (basic feasible points) of a bounded polyhedron, deduplicated
// and sorted lexicographically. Exponential in dim; intended for the small
// instances this library works with.
std::vector<Eigen::VectorXd> enumerate_vertices(const Polyhedron& poly, double tol = 1e-9);

// max over pairs (a in A, b in B) of min distance to the other set; the usual
// symmetric Hausdorff distance between finite point sets.
double hausdorff_distance(const std::vector<Eigen::VectorXd>& a,
                          const std::vector<Eigen::VectorXd>& b);

// Greedy row basis: indices of a maximal linearly independent subset of the
// rows of M, scanned in order. Lets constraint builders skip redundant rows.
std::vector<int> independent_rows(const Eigen::MatrixXd& M, double tol = 1e-10);

}  // namespace routeq
