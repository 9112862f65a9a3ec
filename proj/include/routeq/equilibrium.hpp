#pragma once

#include <cstdint>

#include "routeq/cost_model.hpp"
#include "routeq/polyhedron.hpp"
#include "routeq/qp.hpp"

namespace routeq {

struct WEOptions {
  // Nonzero seeds start the Beckmann solve from a random feasible vertex.
  // Different seeds may return different equilibrium flows, but the cost
  // vector must not change; tests lean on that.
  std::uint64_t seed = 0;
};

// State of the routing game at one demand. `removed` paths (modified games)
// are carried in every vector at their original index with flow pinned to 0,
// so indices stay comparable across games.
struct Equilibrium {
  double demand = 0.0;
  Eigen::VectorXd flow;    // representative equilibrium flow
  Eigen::VectorXd costs;   // A f + beta
  double min_cost = 0.0;   // equilibrium cost: min of costs over retained paths
  PathSet active;          // paths attaining min_cost
  PathSet used;            // paths with positive flow in at least one equilibrium
  double potential = 0.0;  // 0.5 f'Af + beta'f at the equilibrium
  PathSet retained;
};

// Affine description of the full set of equilibria at one demand:
// {f in F_D : f = 0 off the active set, A f = A f*}.
struct EquilibriumSet {
  double demand = 0.0;
  Polyhedron poly;
  PathSet zeroed;  // coordinates pinned to zero by construction
};

// {f >= 0 : sum of retained coordinates = demand, removed coordinates = 0}.
Polyhedron feasible_polytope(const PathCostModel& model, double demand,
                             const PathSet& removed = {});

// Same but without the sign constraints (a hyperplane slice).
Polyhedron sum_hyperplane(const PathCostModel& model, double total,
                          const PathSet& removed = {});

// Computes a Wardrop equilibrium by minimizing the Beckmann potential
// 0.5 f'Af + beta'f over the feasible flows, then classifies the active and
// used sets. Throws InvalidDemand / NoPathsLeft / SolverFailure.
Equilibrium compute_we(const PathCostModel& model, double demand,
                       const PathSet& removed = {}, const WEOptions& opts = {},
                       const Tolerances& tol = Tolerances{});

EquilibriumSet we_polytope(const PathCostModel& model, const Equilibrium& eq,
                           const Tolerances& tol = Tolerances{});

// One LP per candidate path: p is used iff max f_p over the equilibrium set
// is positive. Runs the per-path solves through par::parallel_for.
PathSet used_set(const PathCostModel& model, const EquilibriumSet& wep,
                 const Tolerances& tol = Tolerances{});

// True iff every equilibrium routes positive total flow on `subset`
// (min over the equilibrium set of the subset's total flow is positive).
bool is_necessary(const PathCostModel& model, const EquilibriumSet& wep,
                  const PathSet& subset, const Tolerances& tol = Tolerances{});

}  // namespace routeq
