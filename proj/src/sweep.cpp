#include "routeq/sweep.hpp"

#include <cmath>

namespace routeq {

namespace {

double min_over(const Eigen::VectorXd& v, const PathSet& idx) {
  double m = std::numeric_limits<double>::infinity();
  for (int p : idx) m = std::min(m, v(p));
  return m;
}

DirectionSet solve_directions(const PathCostModel& model, const Equilibrium& eq,
                              const PathSet& removed, double total,
                              const Tolerances& tol) {
  const int n = model.path_count();
  Polyhedron m = sum_hyperplane(model, total, removed);
  PathSet retained = complement(removed, n);
  for (int p : set_minus(retained, eq.active)) m.fix_coordinate(p, 0.0);
  for (int p : set_minus(eq.active, eq.used)) m.require_nonnegative(p);

  DirectionSet ds;
  SolveReport vi = solve_vi(m, model.A, Eigen::VectorXd::Zero(n), tol);
  require_optimal(vi, "direction VI");
  ds.representative = vi.x;
  ds.cost_direction = model.A * vi.x;
  ds.solutions = m;
  for (int p : independent_rows(model.A))
    ds.solutions.add_equality(model.A.row(p), ds.cost_direction(p));
  ds.feasible = std::move(m);
  return ds;
}

}  // namespace

DirectionSet directions_of_increase(const PathCostModel& model, const Equilibrium& eq,
                                    const PathSet& removed, const Tolerances& tol) {
  DirectionSet ds = solve_directions(model, eq, removed, 1.0, tol);
  ds.lambda_slope = min_over(ds.cost_direction, eq.active);
  return ds;
}

DirectionSet directions_of_decrease(const PathCostModel& model, const Equilibrium& eq,
                                    const PathSet& removed, const Tolerances& tol) {
  if (eq.demand <= 0.0)
    throw InvalidDemand("directions_of_decrease: demand must be positive");
  DirectionSet ds = solve_directions(model, eq, removed, -1.0, tol);
  ds.lambda_slope = -min_over(ds.cost_direction, eq.active);
  return ds;
}

int EquilibriumCurve::interval_index(double demand) const {
  int i = static_cast<int>(breakpoints.size()) - 1;
  while (i > 0 && demand < breakpoints[i].demand) --i;
  return i;
}

double EquilibriumCurve::lambda_at(double demand) const {
  int i = interval_index(demand);
  return breakpoints[i].lambda + (demand - breakpoints[i].demand) * intervals[i].lambda_slope;
}

Eigen::VectorXd EquilibriumCurve::costs_at(double demand) const {
  int i = interval_index(demand);
  return breakpoints[i].costs + (demand - breakpoints[i].demand) * intervals[i].cost_slope;
}

namespace {

// Which active paths keep minimal cost just after the breakpoint: those whose
// cost slope attains the minimum over the active set.
PathSet predicted_interval_active(const Equilibrium& eq, const DirectionSet& dir,
                                  const Tolerances& tol) {
  double lo = min_over(dir.cost_direction, eq.active);
  double cut = lo + tol.classify * (1.0 + std::abs(lo));
  PathSet out;
  for (int p : eq.active)
    if (dir.cost_direction(p) <= cut) out.push_back(p);
  return out;
}

struct NextBreakpoint {
  bool unbounded = false;
  double demand = 0.0;
};

// Exact continuation step. Inside the interval starting at eq.demand the
// cost vector moves along dir.cost_direction, so the interval's end is the
// largest T admitting a flow supported on the interval active set whose
// costs match the affine continuation there and dominate the equilibrium
// cost line everywhere else. Variables are (f, T); unboundedness means the
// interval never ends.
NextBreakpoint continuation_step(const PathCostModel& model, const Equilibrium& eq,
                                 const DirectionSet& dir, const PathSet& interval_active,
                                 const PathSet& removed, const Tolerances& tol) {
  const int n = model.path_count();
  const double D = eq.demand;
  const double lambda = eq.min_cost;
  const double slope = min_over(dir.cost_direction, eq.active);
  PathSet retained = complement(removed, n);

  Polyhedron poly(n + 1);
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n + 1);
  for (int p : retained) row(p) = 1.0;
  row(n) = -1.0;
  poly.add_equality(row, 0.0);  // total retained flow equals T

  for (int p = 0; p < n; ++p) {
    if (!contains(interval_active, p)) {
      poly.fix_coordinate(p, 0.0);
      continue;
    }
    row.setZero();
    row.head(n) = model.A.row(p);
    row(n) = -dir.cost_direction(p);
    poly.add_equality(row, eq.costs(p) - model.beta(p) - D * dir.cost_direction(p));
  }
  for (int r : set_minus(retained, interval_active)) {
    row.setZero();
    row.head(n) = model.A.row(r);
    row(n) = -slope;
    poly.add_inequality(row, lambda - model.beta(r) - D * slope);
  }
  for (int p = 0; p < n; ++p) poly.require_nonnegative(p);

  Eigen::VectorXd objective = Eigen::VectorXd::Zero(n + 1);
  objective(n) = 1.0;
  SolveReport lp = solve_lp(poly, objective, Sense::Maximize, tol);
  NextBreakpoint nb;
  if (lp.status == SolveStatus::Unbounded) {
    nb.unbounded = true;
    return nb;
  }
  require_optimal(lp, "continuation step");
  nb.demand = lp.objective;
  return nb;
}

}  // namespace

EquilibriumCurve trace_curve(const PathCostModel& model, const PathSet& removed,
                             const TraceOptions& opts, const Tolerances& tol) {
  const int n = model.path_count();
  EquilibriumCurve curve;
  curve.retained = complement(removed, n);
  if (curve.retained.empty()) throw NoPathsLeft("trace_curve: all paths removed");

  double D = 0.0;
  while (true) {
    if (static_cast<int>(curve.breakpoints.size()) >= opts.max_breakpoints)
      throw BreakpointLimit("trace_curve: breakpoint cap " +
                            std::to_string(opts.max_breakpoints) + " exceeded");

    Equilibrium eq = compute_we(model, D, removed, {}, tol);
    DirectionSet dir = directions_of_increase(model, eq, removed, tol);
    PathSet predicted = predicted_interval_active(eq, dir, tol);

    NextBreakpoint nb = continuation_step(model, eq, dir, predicted, removed, tol);
    const double merge_gap = 1e-8 * (1.0 + D);
    int nudges = 0;
    while (!nb.unbounded && nb.demand - D <= merge_gap && nudges < 3) {
      // Numerically coincident breakpoint: restart the step from just above
      // it instead of recording a zero-length interval.
      double probe = std::max(nb.demand, D) + merge_gap * std::pow(10.0, nudges);
      Equilibrium bumped = compute_we(model, probe, removed, {}, tol);
      dir = directions_of_increase(model, bumped, removed, tol);
      predicted = predicted_interval_active(bumped, dir, tol);
      nb = continuation_step(model, bumped, dir, predicted, removed, tol);
      ++nudges;
    }
    if (!nb.unbounded && nb.demand - D <= merge_gap)
      throw SolverFailure("trace_curve: breakpoints failed to separate near demand " +
                          std::to_string(D));

    double interior =
        nb.unbounded ? D + 1.0 + 0.5 * D : 0.5 * (D + nb.demand);
    Equilibrium mid = compute_we(model, interior, removed, {}, tol);

    CurveInterval interval;
    interval.lo = D;
    interval.hi = nb.unbounded ? std::numeric_limits<double>::infinity() : nb.demand;
    interval.lambda_slope = dir.lambda_slope;
    interval.cost_slope = dir.cost_direction;
    interval.active = mid.active;
    interval.used = mid.used;

    CurveBreakpoint bp;
    bp.demand = D;
    bp.flow = eq.flow;
    bp.costs = eq.costs;
    bp.lambda = eq.min_cost;
    bp.active = eq.active;
    bp.used = eq.used;

    curve.breakpoints.push_back(std::move(bp));
    curve.intervals.push_back(std::move(interval));

    if (nb.unbounded) {
      curve.complete = true;
      break;
    }
    if (nb.demand >= opts.dmax) {
      curve.complete = false;
      break;
    }
    D = nb.demand;
  }
  return curve;
}

FinalInterval final_interval(const PathCostModel& model, const PathSet& removed,
                             const Tolerances& tol) {
  const int n = model.path_count();
  PathSet retained = complement(removed, n);
  if (retained.empty()) throw NoPathsLeft("final_interval: all paths removed");

  FinalInterval out;

  // Cost slope: A f for any VI solution over the unit simplex of retained
  // paths. Sustainable directions must stay nonnegative, which is what
  // pushes this VI onto the simplex rather than the hyperplane slice.
  Polyhedron simplex = feasible_polytope(model, 1.0, removed);
  SolveReport vi = solve_vi(simplex, model.A, Eigen::VectorXd::Zero(n), tol);
  require_optimal(vi, "final_interval: simplex VI");
  out.cost_slope = model.A * vi.x;
  out.lambda_slope = min_over(out.cost_slope, retained);

  // Intercept: minimize beta over the VI solution set. The quadratic part is
  // constant there, so this is a plain LP.
  Polyhedron sol_set = feasible_polytope(model, 1.0, removed);
  for (int p = 0; p < n; ++p) sol_set.add_equality(model.A.row(p), out.cost_slope(p));
  SolveReport lp = solve_lp(sol_set, model.beta, Sense::Minimize, tol);
  require_optimal(lp, "final_interval: intercept program");
  out.direction = lp.x;
  out.intercept = lp.objective;

  // Split the retained paths by how the direction and the cost slope relate,
  // then identify the final active set from an auxiliary QP evaluated at an
  // arbitrary demand (the classification does not depend on it).
  const double slope_cut =
      out.lambda_slope + tol.classify * (1.0 + std::abs(out.lambda_slope));
  PathSet positive, excluded, boundary;
  for (int p : retained) {
    if (out.direction(p) > tol.classify)
      positive.push_back(p);
    else if (out.cost_slope(p) > slope_cut)
      excluded.push_back(p);
    else
      boundary.push_back(p);
  }

  const double probe_demand = 1.0;
  const double line = out.lambda_slope * probe_demand + out.intercept;
  Polyhedron aux(n);
  for (int p : removed) aux.fix_coordinate(p, 0.0);
  for (int p : excluded) aux.fix_coordinate(p, 0.0);
  for (int p : positive) aux.add_equality(model.A.row(p), line - model.beta(p));
  for (int p : boundary) {
    aux.require_nonnegative(p);
    aux.add_inequality(model.A.row(p), line - model.beta(p));
  }
  Eigen::RowVectorXd sum_row = Eigen::RowVectorXd::Zero(n);
  for (int p : retained) sum_row(p) = 1.0;
  aux.add_equality(sum_row, probe_demand);
  SolveReport qp = solve_qp(aux, 2.0 * model.A, model.beta, tol);
  require_optimal(qp, "final_interval: active-set program");
  Eigen::VectorXd aux_costs = model.costs(qp.x);
  for (int p : retained) {
    bool slope_min = std::abs(out.cost_slope(p) - out.lambda_slope) <=
                     tol.classify * (1.0 + std::abs(out.lambda_slope));
    bool on_line = std::abs(aux_costs(p) - line) <= tol.classify * (1.0 + std::abs(line));
    if (slope_min && on_line) out.active.push_back(p);
  }

  // Start of the interval: the cheapest total flow that already makes every
  // final-active path minimal-cost within the retained game.
  Polyhedron closing(n);
  for (int p = 0; p < n; ++p)
    if (!contains(out.active, p)) closing.fix_coordinate(p, 0.0);
  for (int p = 0; p < n; ++p) closing.require_nonnegative(p);
  for (int p : out.active)
    for (int r : retained)
      if (r != p)
        closing.add_inequality(model.A.row(r) - model.A.row(p),
                               model.beta(p) - model.beta(r));
  SolveReport dm = solve_lp(closing, Eigen::VectorXd::Ones(n), Sense::Minimize, tol);
  require_optimal(dm, "final_interval: start-demand program");
  out.start_demand = dm.objective;
  out.flow_at_start = dm.x;
  return out;
}

}  // namespace routeq
