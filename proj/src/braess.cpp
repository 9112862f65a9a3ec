#include "routeq/braess.hpp"

#include <algorithm>

#include "routeq/parallel.hpp"

namespace routeq {

std::string to_string(BraessVerdict v) {
  return v == BraessVerdict::Detected ? "BP_detected" : "no_evidence";
}

std::string to_string(BraessCondition c) {
  switch (c) {
    case BraessCondition::SlopeIncrease: return "slope_increase";
    case BraessCondition::FlowLosing: return "flow_losing";
    case BraessCondition::ExtensionGap: return "extension_gap";
    case BraessCondition::ExplicitModifiedGame: return "explicit_modified_game";
  }
  return "?";
}

ModifiedGame make_modified_game(const PathCostModel& model, const PathSet& removed) {
  const int n = model.path_count();
  ModifiedGame g;
  g.removed = removed;
  std::sort(g.removed.begin(), g.removed.end());
  g.removed.erase(std::unique(g.removed.begin(), g.removed.end()), g.removed.end());
  if (g.removed.empty())
    throw ValidationError("modified game: removed set must be nonempty");
  for (int p : g.removed)
    if (p < 0 || p >= n)
      throw ValidationError("modified game: path index out of range");
  g.retained = complement(g.removed, n);
  if (g.retained.empty())
    throw NoPathsLeft("modified game: at least one path must remain");
  return g;
}

Equilibrium modified_solve(const PathCostModel& model, const ModifiedGame& game,
                           double demand, const WEOptions& opts, const Tolerances& tol) {
  return compute_we(model, demand, game.removed, opts, tol);
}

PotentialComparison check_v_relations(const PathCostModel& model, const ModifiedGame& game,
                                      double demand, const Tolerances& tol) {
  PotentialComparison cmp;
  cmp.base = compute_we(model, demand, {}, {}, tol).potential;
  cmp.modified = modified_solve(model, game, demand, {}, tol).potential;
  double margin = tol.classify * (1.0 + std::abs(cmp.base) + std::abs(cmp.modified));
  if (cmp.base > cmp.modified + margin)
    throw Error("check_v_relations: removing paths lowered the Beckmann optimum");
  cmp.equal = std::abs(cmp.base - cmp.modified) <= margin;
  return cmp;
}

std::vector<BraessReport> detect_slope_increase(const EquilibriumCurve& curve,
                                                const Tolerances& tol) {
  std::vector<BraessReport> out;
  for (size_t i = 1; i < curve.intervals.size(); ++i) {
    double prev = curve.intervals[i - 1].lambda_slope;
    double next = curve.intervals[i].lambda_slope;
    if (prev < next - tol.classify * (1.0 + std::abs(next))) {
      BraessReport r;
      r.verdict = BraessVerdict::Detected;
      r.condition = BraessCondition::SlopeIncrease;
      r.demand_lo = curve.breakpoints[i - 1].demand;
      r.demand_hi = curve.breakpoints[i].demand;
      r.cost_gap = next - prev;
      r.message = "equilibrium-cost slope rises from " + std::to_string(prev) + " to " +
                  std::to_string(next) + " at demand " +
                  std::to_string(curve.breakpoints[i].demand);
      out.push_back(std::move(r));
    }
  }
  return out;
}

BraessReport detect_flow_losing(const PathCostModel& model, const Equilibrium& eq,
                                const Tolerances& tol) {
  const int n = model.path_count();
  PathSet removed = complement(eq.retained, n);
  DirectionSet dir = directions_of_increase(model, eq, removed, tol);
  Polyhedron nonneg = dir.solutions;
  for (int p = 0; p < n; ++p) nonneg.require_nonnegative(p);
  SolveReport feas = solve_lp(nonneg, Eigen::VectorXd::Zero(n), Sense::Minimize, tol);

  BraessReport r;
  r.condition = BraessCondition::FlowLosing;
  r.demand_lo = r.demand_hi = eq.demand;
  if (feas.status == SolveStatus::Infeasible) {
    r.verdict = BraessVerdict::Detected;
    r.message = "every direction of increase takes flow away from some path";
  } else {
    require_optimal(feas, "detect_flow_losing: feasibility probe");
    r.verdict = BraessVerdict::NoEvidence;
  }
  return r;
}

namespace {

// Best admissible affine-extension bound of one traced game at `demand`:
// pieces are admissible up to their right endpoint.
struct ExtensionProbe {
  double best_u = std::numeric_limits<double>::infinity();
  int interval = -1;
};

ExtensionProbe best_extension(const EquilibriumCurve& curve, double demand) {
  ExtensionProbe probe;
  for (size_t i = 0; i < curve.intervals.size(); ++i) {
    if (demand > curve.intervals[i].hi) continue;
    double u = curve.breakpoints[i].lambda +
               (demand - curve.breakpoints[i].demand) * curve.intervals[i].lambda_slope;
    if (u < probe.best_u) {
      probe.best_u = u;
      probe.interval = static_cast<int>(i);
    }
  }
  return probe;
}

BraessReport extension_report(const EquilibriumCurve& game_curve, const PathSet& witness,
                              double demand, double lambda) {
  ExtensionProbe probe = best_extension(game_curve, demand);
  BraessReport r;
  r.condition = BraessCondition::ExtensionGap;
  r.demand_lo = r.demand_hi = demand;
  r.witness = witness;
  r.extension_interval = probe.interval;
  r.cost_gap = lambda - probe.best_u;
  if (r.cost_gap > braess_gap_tol(lambda)) {
    r.verdict = BraessVerdict::Detected;
    r.message = "affine extension of piece " + std::to_string(probe.interval) +
                (witness.empty() ? std::string(" of the game itself")
                                 : " after removing " + format_path_set(witness)) +
                " lies below the equilibrium cost";
  } else {
    r.verdict = BraessVerdict::NoEvidence;
  }
  return r;
}

}  // namespace

std::vector<BraessReport> extension_gap(const PathCostModel& model,
                                        const EquilibriumCurve& base_curve,
                                        const std::vector<ModifiedGame>& candidates,
                                        double demand, const Tolerances& tol) {
  const double lambda = base_curve.lambda_at(demand);
  std::vector<BraessReport> out(candidates.size() + 1);
  out[0] = extension_report(base_curve, {}, demand, lambda);

  par::parallel_for(static_cast<int>(candidates.size()), [&](int i) {
    try {
      EquilibriumCurve curve = trace_curve(model, candidates[i].removed, {}, tol);
      out[i + 1] = extension_report(curve, candidates[i].removed, demand, lambda);
    } catch (const std::exception& e) {
      BraessReport r;
      r.condition = BraessCondition::ExtensionGap;
      r.demand_lo = r.demand_hi = demand;
      r.witness = candidates[i].removed;
      r.failed = true;
      r.message = e.what();
      out[i + 1] = std::move(r);
    }
  });
  return out;
}

std::vector<ModifiedGame> default_candidates(const PathCostModel& model,
                                             const EquilibriumCurve& curve) {
  const int n = model.path_count();
  std::vector<PathSet> sets;
  for (int p = 0; p < n; ++p) sets.push_back({p});
  for (const auto& interval : curve.intervals) sets.push_back(complement(interval.used, n));

  std::vector<ModifiedGame> out;
  for (auto& s : sets) {
    if (s.empty() || static_cast<int>(s.size()) >= n) continue;
    bool dup = false;
    for (const auto& g : out) dup = dup || g.removed == s;
    if (!dup) out.push_back(make_modified_game(model, s));
  }
  return out;
}

namespace {

void enumerate_subsets(int n, int max_size, long cap, std::vector<PathSet>& out) {
  long count = 0;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int next, int left) -> void {
    if (!cur.empty() && static_cast<int>(cur.size()) < n) {
      if (++count > cap)
        throw SubsetCapExceeded("scan_unnecessary: more than " + std::to_string(cap) +
                                " candidate subsets; lower max_subset_size");
      out.push_back(cur);
    }
    if (left == 0) return;
    for (int p = next; p < n; ++p) {
      cur.push_back(p);
      self(self, p + 1, left - 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, std::min(max_size, n));
}

}  // namespace

std::vector<ScanEntry> scan_unnecessary(const PathCostModel& model, double demand,
                                        const ScanOptions& opts, const Tolerances& tol) {
  if (demand < 0.0) throw InvalidDemand("scan_unnecessary: demand must be nonnegative");
  const int n = model.path_count();
  std::vector<PathSet> subsets;
  enumerate_subsets(n, opts.max_subset_size, opts.subset_cap, subsets);

  Equilibrium eq = compute_we(model, demand, {}, {}, tol);
  EquilibriumSet wep = we_polytope(model, eq, tol);
  EquilibriumCurve base_curve = trace_curve(model, {}, {}, tol);
  PiecewiseLinear lambda = lambda_curve(base_curve);

  std::vector<char> keep(subsets.size(), 0);
  par::parallel_for(static_cast<int>(subsets.size()), [&](int i) {
    keep[i] = !is_necessary(model, wep, subsets[i], tol);
  });

  std::vector<ScanEntry> entries;
  for (size_t i = 0; i < subsets.size(); ++i) {
    if (!keep[i]) continue;
    ScanEntry e;
    e.subset = subsets[i];
    entries.push_back(std::move(e));
  }

  par::parallel_for(static_cast<int>(entries.size()), [&](int i) {
    ScanEntry& e = entries[i];
    EquilibriumCurve mod_curve = trace_curve(model, e.subset, {}, tol);
    PiecewiseLinear lambda_mod = lambda_curve(mod_curve);
    e.kind = UnnecessaryKind::NeverNecessaryBelow;
    for (int k = 1; k <= opts.grid; ++k) {
      double t = demand * k / opts.grid;
      double gap = lambda(t) - lambda_mod(t);
      if (gap > braess_gap_tol(lambda(t))) {
        e.kind = UnnecessaryKind::BeneficialThenParadox;
        if (std::isnan(e.paradox_demand)) e.paradox_demand = t;
      } else if (gap < -braess_gap_tol(lambda(t))) {
        if (std::isnan(e.benefit_demand)) e.benefit_demand = t;
      }
    }
  });

  // Probe demands above `demand` for subsets turning necessary again. The
  // snapshot at each probe is shared across subsets.
  double horizon = std::max(demand, base_curve.last_breakpoint()) * 1.2 + 1.0;
  for (int k = 1; k <= opts.probe_grid; ++k) {
    double t = demand + (horizon - demand) * k / opts.probe_grid;
    bool anyone_waiting = false;
    for (const auto& e : entries) anyone_waiting |= std::isnan(e.necessary_again_at);
    if (!anyone_waiting) break;
    Equilibrium probe_eq = compute_we(model, t, {}, {}, tol);
    EquilibriumSet probe_wep = we_polytope(model, probe_eq, tol);
    par::parallel_for(static_cast<int>(entries.size()), [&](int i) {
      ScanEntry& e = entries[i];
      if (!std::isnan(e.necessary_again_at)) return;
      if (is_necessary(model, probe_wep, e.subset, tol)) e.necessary_again_at = t;
    });
  }
  return entries;
}

double bp_demand_bound(const PathCostModel& model, const ModifiedGame& game,
                       const Tolerances& tol) {
  PiecewiseLinear base = lambda_curve(trace_curve(model, {}, {}, tol));
  PiecewiseLinear mod = lambda_curve(trace_curve(model, game.removed, {}, tol));
  if (curves_match(base, mod, 1e-8)) return 0.0;

  double s = base.final_slope;
  double b = base.values.back() - s * base.knots.back();
  double sm = mod.final_slope;
  double bm = mod.values.back() - sm * mod.knots.back();
  double later_start = std::max(base.knots.back(), mod.knots.back());

  double slope_tol = tol.classify * (1.0 + std::abs(s) + std::abs(sm));
  if (sm < s - slope_tol)
    throw Error("bp_demand_bound: modified game's final slope is below the base game's");
  if (std::abs(sm - s) <= slope_tol) {
    if (bm < b - tol.classify * (1.0 + std::abs(b)))
      throw Error("bp_demand_bound: modified final form lies below the base form");
    return later_start;
  }
  double crossing = (b - bm) / (sm - s);
  return std::max(later_start, crossing);
}

double measure_J(const PathCostModel& model, const ModifiedGame& game, double demand,
                 const Tolerances& tol) {
  if (demand < 0.0) throw InvalidDemand("measure_J: demand must be nonnegative");
  if (demand == 0.0) return 0.0;
  PiecewiseLinear base = lambda_curve(trace_curve(model, {}, {}, tol));
  PiecewiseLinear mod = lambda_curve(trace_curve(model, game.removed, {}, tol));
  return integrate_difference(mod, base, demand);
}

double measure_W(const PathCostModel& model, const ModifiedGame& game, double demand,
                 const Tolerances& tol) {
  if (demand <= 0.0) throw InvalidDemand("measure_W: demand must be positive");
  PiecewiseLinear base = lambda_curve(trace_curve(model, {}, {}, tol));
  PiecewiseLinear mod = lambda_curve(trace_curve(model, game.removed, {}, tol));
  return integrate_weighted_difference(mod, base, demand);
}

}  // namespace routeq
