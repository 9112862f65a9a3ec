#pragma once

#include <limits>

#include "routeq/equilibrium.hpp"

namespace routeq {

// Directions along which the set of equilibria moves as demand changes,
// obtained as the solution set of a VI over the feasibility-direction
// polytope. Every solution shares the same A f, the cost direction.
struct DirectionSet {
  Polyhedron feasible;             // direction polytope (sum = +1 or -1 slice)
  Eigen::VectorXd representative;  // one VI solution
  Eigen::VectorXd cost_direction;  // A * representative
  Polyhedron solutions;            // {f in feasible : A f = cost_direction}
  // For increase directions: right derivative of the equilibrium cost.
  // For decrease directions: left derivative (already negated).
  double lambda_slope = 0.0;
};

DirectionSet directions_of_increase(const PathCostModel& model, const Equilibrium& eq,
                                    const PathSet& removed = {},
                                    const Tolerances& tol = Tolerances{});

// Demand must be positive: nothing can decrease from zero.
DirectionSet directions_of_decrease(const PathCostModel& model, const Equilibrium& eq,
                                    const PathSet& removed = {},
                                    const Tolerances& tol = Tolerances{});

// Interval [lo, hi) between consecutive breakpoints. active/used are constant
// on the open interval and sandwiched by the breakpoint sets on both ends.
struct CurveInterval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double lambda_slope = 0.0;       // slope of the equilibrium cost
  Eigen::VectorXd cost_slope;      // slope of the cost vector
  PathSet active;
  PathSet used;
};

struct CurveBreakpoint {
  double demand = 0.0;
  Eigen::VectorXd flow;
  Eigen::VectorXd costs;
  double lambda = 0.0;
  PathSet active;
  PathSet used;
};

// Piecewise-affine evolution of the equilibrium cost vector over demand.
// breakpoints[i] starts intervals[i]; the last interval is unbounded when
// `complete`, otherwise tracing stopped at the dmax cap.
struct EquilibriumCurve {
  std::vector<CurveBreakpoint> breakpoints;
  std::vector<CurveInterval> intervals;
  bool complete = true;
  PathSet retained;

  int interval_index(double demand) const;
  double lambda_at(double demand) const;
  Eigen::VectorXd costs_at(double demand) const;
  double last_breakpoint() const { return breakpoints.back().demand; }
};

struct TraceOptions {
  double dmax = std::numeric_limits<double>::infinity();
  int max_breakpoints = 10000;
};

// Walks the breakpoints from demand 0 upward. At each breakpoint the
// snapshot is recomputed from scratch, the direction VI gives the interval's
// cost slope, and an exact LP in (flow, demand) yields the next breakpoint
// (unbounded means the final interval was reached).
EquilibriumCurve trace_curve(const PathCostModel& model, const PathSet& removed = {},
                             const TraceOptions& opts = {},
                             const Tolerances& tol = Tolerances{});

// Everything about the last interval [start_demand, infinity): beyond
// start_demand the equilibrium cost is exactly lambda_slope * D + intercept.
struct FinalInterval {
  Eigen::VectorXd cost_slope;      // slope of the cost vector
  double lambda_slope = 0.0;
  double intercept = 0.0;
  PathSet active;
  double start_demand = 0.0;
  Eigen::VectorXd direction;      // nonnegative direction sustaining the interval
  Eigen::VectorXd flow_at_start;  // equilibrium at start_demand
};

// Computes the final interval directly, with no curve tracing: a VI over the
// unit simplex gives the cost slope, an LP gives the intercept and direction,
// a QP classifies the active set, and a closing LP gives start_demand.
FinalInterval final_interval(const PathCostModel& model, const PathSet& removed = {},
                             const Tolerances& tol = Tolerances{});

}  // namespace routeq
