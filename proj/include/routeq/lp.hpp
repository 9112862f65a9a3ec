#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "routeq/errors.hpp"
#include "routeq/polyhedron.hpp"
#include "routeq/types.hpp"

namespace routeq {

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(SolveStatus s);

enum class Sense { Minimize, Maximize };

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  // Inequality rows satisfied with equality at x.
  std::vector<int> active;
  int iterations = 0;
  // max of stationarity residual and constraint violation at x.
  double kkt_residual = 0.0;
  // LP only: objective of the dual solution read off the final basis.
  double dual_objective = 0.0;

  bool ok() const { return status == SolveStatus::Optimal; }
};

// Dense primal simplex (two phases, Bland's rule) over a polyhedron with free
// variables. Deterministic: identical inputs give identical pivots.
SolveReport solve_lp(const Polyhedron& poly, const Eigen::VectorXd& c,
                     Sense sense = Sense::Minimize, const Tolerances& tol = Tolerances{});

// Throws SolverFailure unless the report is optimal.
const SolveReport& require_optimal(const SolveReport& r, const char* context);

}  // namespace routeq
