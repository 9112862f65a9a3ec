#pragma once

#include <cmath>
#include <string>

#include "routeq/piecewise.hpp"

namespace routeq {

// Game with a set of paths removed: their flow is pinned to zero everywhere,
// all cost functions stay the same.
struct ModifiedGame {
  PathSet removed;
  PathSet retained;
};

// Validates that `removed` is a nonempty strict subset of the path set.
ModifiedGame make_modified_game(const PathCostModel& model, const PathSet& removed);

enum class BraessVerdict { Detected, NoEvidence };

enum class BraessCondition {
  SlopeIncrease,
  FlowLosing,
  ExtensionGap,
  ExplicitModifiedGame,
};

std::string to_string(BraessVerdict v);
std::string to_string(BraessCondition c);

// Every Detected report carries enough data to re-check the trigger: the
// demand (or interval), the removed-set witness when one is known, and the
// cost gap involved.
struct BraessReport {
  BraessVerdict verdict = BraessVerdict::NoEvidence;
  BraessCondition condition = BraessCondition::ExtensionGap;
  double demand_lo = 0.0;
  double demand_hi = 0.0;  // == demand_lo for point reports
  PathSet witness;         // removed set; empty when the trigger is structural
  double cost_gap = 0.0;
  int extension_interval = -1;  // affine piece that triggered an extension report
  bool failed = false;
  std::string message;
};

// Margin below which a cost difference does not count as strict.
inline double braess_gap_tol(double lambda) { return 1e-6 * (1.0 + std::abs(lambda)); }

Equilibrium modified_solve(const PathCostModel& model, const ModifiedGame& game,
                           double demand, const WEOptions& opts = {},
                           const Tolerances& tol = Tolerances{});

struct PotentialComparison {
  double base = 0.0;      // Beckmann optimum of the full game
  double modified = 0.0;  // Beckmann optimum with the set removed
  bool equal = false;     // true iff they agree within tolerance
};

// Also asserts base <= modified (removing options can never help the
// potential); a violation throws.
PotentialComparison check_v_relations(const PathCostModel& model, const ModifiedGame& game,
                                      double demand, const Tolerances& tol = Tolerances{});

// One report per breakpoint where the equilibrium-cost slope increases;
// each flags the whole interval below that breakpoint.
std::vector<BraessReport> detect_slope_increase(const EquilibriumCurve& curve,
                                                const Tolerances& tol = Tolerances{});

// Flags the demand when no nonnegative direction of increase exists, i.e.
// some path must lose flow as demand rises.
BraessReport detect_flow_losing(const PathCostModel& model, const Equilibrium& eq,
                                const Tolerances& tol = Tolerances{});

// Compares the equilibrium cost at `demand` against the affine extensions of
// every traced piece of the game itself and of each candidate modified game
// (a piece's extension is only admissible at demands up to the piece's right
// endpoint). Any admissible extension lying strictly below the equilibrium
// cost proves a paradox at that demand. Candidates run concurrently;
// per-candidate failures are reported, not fatal.
std::vector<BraessReport> extension_gap(const PathCostModel& model,
                                        const EquilibriumCurve& base_curve,
                                        const std::vector<ModifiedGame>& candidates,
                                        double demand,
                                        const Tolerances& tol = Tolerances{});

// Singletons plus complements of each traced interval's used set: the
// natural candidate family for extension_gap.
std::vector<ModifiedGame> default_candidates(const PathCostModel& model,
                                             const EquilibriumCurve& curve);

enum class UnnecessaryKind {
  NeverNecessaryBelow,     // removal is cost-neutral on all of [0, demand]
  BeneficialThenParadox,   // removal strictly hurts somewhere below, then helps
};

struct ScanEntry {
  PathSet subset;
  UnnecessaryKind kind = UnnecessaryKind::NeverNecessaryBelow;
  double benefit_demand = std::nan("");   // sample demand where the paths help
  double paradox_demand = std::nan("");   // sample demand where removal helps
  double necessary_again_at = std::nan("");  // first probed demand above where
                                             // the subset is necessary again
};

struct ScanOptions {
  int max_subset_size = 2;
  int grid = 128;        // classification samples on (0, demand]
  int probe_grid = 32;   // re-necessity probes above demand
  long subset_cap = 20000;
};

// Enumerates path subsets up to the size cap, keeps those that are
// unnecessary at `demand`, and classifies each by sampling the cost of the
// game with and without it at lower demands. Grid-based: a narrow paradox
// window can escape a coarse grid.
std::vector<ScanEntry> scan_unnecessary(const PathCostModel& model, double demand,
                                        const ScanOptions& opts = {},
                                        const Tolerances& tol = Tolerances{});

// A demand beyond which removing this set can never lower the equilibrium
// cost: 0 when the two cost curves coincide everywhere, otherwise the
// crossing of the two final affine forms (or the later of the two final
// breakpoints when the forms coincide).
double bp_demand_bound(const PathCostModel& model, const ModifiedGame& game,
                       const Tolerances& tol = Tolerances{});

// Integral of (modified cost - base cost) over [0, demand], evaluated in
// closed form on the merged breakpoint grid. Nonnegative; zero exactly when
// the removed set is unnecessary at `demand`.
double measure_J(const PathCostModel& model, const ModifiedGame& game, double demand,
                 const Tolerances& tol = Tolerances{});

// Demand-weighted variant: integral of z * (modified - base) over [0, demand].
// Nonpositive whenever the removed set is unnecessary at `demand`.
double measure_W(const PathCostModel& model, const ModifiedGame& game, double demand,
                 const Tolerances& tol = Tolerances{});

}  // namespace routeq
