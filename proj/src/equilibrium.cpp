#include "routeq/equilibrium.hpp"

#include <cmath>
#include <random>

#include "routeq/parallel.hpp"

namespace routeq {

namespace {

PathSet retained_paths(int n, const PathSet& removed) {
  PathSet r = complement(removed, n);
  if (r.empty()) throw NoPathsLeft("all paths removed from the game");
  return r;
}

double min_over(const Eigen::VectorXd& v, const PathSet& idx) {
  double m = std::numeric_limits<double>::infinity();
  for (int p : idx) m = std::min(m, v(p));
  return m;
}

}  // namespace

Polyhedron feasible_polytope(const PathCostModel& model, double demand,
                             const PathSet& removed) {
  const int n = model.path_count();
  Polyhedron poly(n);
  Eigen::RowVectorXd sum_row = Eigen::RowVectorXd::Ones(n);
  for (int p : removed) sum_row(p) = 0.0;
  poly.add_equality(sum_row, demand);
  for (int p : removed) poly.fix_coordinate(p, 0.0);
  for (int p = 0; p < n; ++p) poly.require_nonnegative(p);
  return poly;
}

Polyhedron sum_hyperplane(const PathCostModel& model, double total,
                          const PathSet& removed) {
  const int n = model.path_count();
  Polyhedron poly(n);
  Eigen::RowVectorXd sum_row = Eigen::RowVectorXd::Ones(n);
  for (int p : removed) sum_row(p) = 0.0;
  poly.add_equality(sum_row, total);
  for (int p : removed) poly.fix_coordinate(p, 0.0);
  return poly;
}

Equilibrium compute_we(const PathCostModel& model, double demand, const PathSet& removed,
                       const WEOptions& opts, const Tolerances& tol) {
  const int n = model.path_count();
  if (demand < 0.0) throw InvalidDemand("demand must be nonnegative");
  Equilibrium eq;
  eq.demand = demand;
  eq.retained = retained_paths(n, removed);

  if (demand == 0.0) {
    // The zero flow is the unique equilibrium; costs are the offsets.
    eq.flow = Eigen::VectorXd::Zero(n);
    eq.costs = model.beta;
    eq.min_cost = min_over(eq.costs, eq.retained);
    eq.potential = 0.0;
  } else {
    Polyhedron feas = feasible_polytope(model, demand, removed);
    Eigen::VectorXd start;
    const Eigen::VectorXd* start_ptr = nullptr;
    if (opts.seed != 0) {
      std::mt19937_64 rng(opts.seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      Eigen::VectorXd c(n);
      for (int i = 0; i < n; ++i) c(i) = u(rng);
      SolveReport vertex = solve_lp(feas, c, Sense::Minimize, tol);
      if (vertex.ok()) {
        start = vertex.x;
        start_ptr = &start;
      }
    }
    SolveReport qp = solve_qp(feas, model.A, model.beta, tol, start_ptr);
    require_optimal(qp, "compute_we: Beckmann program");
    eq.flow = qp.x;
    eq.costs = model.costs(eq.flow);
    eq.min_cost = min_over(eq.costs, eq.retained);
    eq.potential = qp.objective;
  }

  const double cut = eq.min_cost + tol.classify * (1.0 + std::abs(eq.min_cost));
  for (int p : eq.retained)
    if (eq.costs(p) <= cut) eq.active.push_back(p);

  if (demand == 0.0) {
    eq.used.clear();  // no flow anywhere at zero demand
    return eq;
  }
  EquilibriumSet wep = we_polytope(model, eq, tol);
  eq.used = used_set(model, wep, tol);
  return eq;
}

EquilibriumSet we_polytope(const PathCostModel& model, const Equilibrium& eq,
                           const Tolerances& tol) {
  (void)tol;
  const int n = model.path_count();
  EquilibriumSet wep;
  wep.demand = eq.demand;
  wep.zeroed = complement(eq.active, n);

  Polyhedron poly(n);
  Eigen::RowVectorXd sum_row = Eigen::RowVectorXd::Zero(n);
  for (int p : eq.active) sum_row(p) = 1.0;
  poly.add_equality(sum_row, eq.demand);
  for (int p : wep.zeroed) poly.fix_coordinate(p, 0.0);
  // Equal cost vectors: A f = A f*. A row basis of A carries the same
  // constraint without the redundant rows.
  Eigen::VectorXd rhs = model.A * eq.flow;
  for (int p : independent_rows(model.A)) poly.add_equality(model.A.row(p), rhs(p));
  for (int p = 0; p < n; ++p) poly.require_nonnegative(p);
  wep.poly = std::move(poly);
  return wep;
}

PathSet used_set(const PathCostModel& model, const EquilibriumSet& wep,
                 const Tolerances& tol) {
  const int n = model.path_count();
  PathSet candidates = complement(wep.zeroed, n);
  std::vector<char> used_flag(candidates.size(), 0);
  par::parallel_for(static_cast<int>(candidates.size()), [&](int i) {
    int p = candidates[i];
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    c(p) = 1.0;
    SolveReport r = solve_lp(wep.poly, c, Sense::Maximize, tol);
    require_optimal(r, "used_set: per-path flow maximization");
    if (r.objective > tol.classify) used_flag[i] = 1;
  });
  PathSet used;
  for (size_t i = 0; i < candidates.size(); ++i)
    if (used_flag[i]) used.push_back(candidates[i]);
  return used;
}

bool is_necessary(const PathCostModel& model, const EquilibriumSet& wep,
                  const PathSet& subset, const Tolerances& tol) {
  const int n = model.path_count();
  if (subset.empty()) throw ValidationError("is_necessary: subset must be nonempty");
  for (int p : subset)
    if (p < 0 || p >= n) throw ValidationError("is_necessary: path index out of range");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (int p : subset) c(p) = 1.0;
  SolveReport r = solve_lp(wep.poly, c, Sense::Minimize, tol);
  require_optimal(r, "is_necessary: subset flow minimization");
  return r.objective > tol.classify;
}

}  // namespace routeq
