#pragma once

#include "routeq/lp.hpp"

namespace routeq {

// Minimizes 0.5 x^T H x + c^T x over a polyhedron. H must be symmetric PSD
// (possibly singular). Primal active-set method started from a phase-1 LP
// vertex, or from `start` when supplied (must be feasible).
SolveReport solve_qp(const Polyhedron& poly, const Eigen::MatrixXd& H,
                     const Eigen::VectorXd& c, const Tolerances& tol = Tolerances{},
                     const Eigen::VectorXd* start = nullptr);

// Solves the variational inequality: find x* in the polyhedron with
// (A x* + c)^T (x - x*) >= 0 for all feasible x. With A symmetric PSD this is
// exactly the KKT system of the quadratic program above, so it reduces to
// solve_qp(poly, A, c). A x* is the same for every solution.
SolveReport solve_vi(const Polyhedron& poly, const Eigen::MatrixXd& A,
                     const Eigen::VectorXd& c, const Tolerances& tol = Tolerances{},
                     const Eigen::VectorXd* start = nullptr);

}  // namespace routeq
