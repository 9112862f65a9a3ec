// Timings of the batch kernels, serial (one thread) versus OpenMP (all
// cores), with an output equality check between the two runs.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "routeq/braess.hpp"
#include "routeq/io.hpp"
#include "routeq/parallel.hpp"

using namespace routeq;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Network ladder_network(int rungs) {
  // Chain of vertex pairs with parallel arcs: path count grows as 2^rungs.
  Network net;
  net.vertex_count = rungs + 1;
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < rungs; ++k) {
    net.edges.push_back({k, k + 1, 0.5 + unit(rng), unit(rng)});
    net.edges.push_back({k, k + 1, unit(rng) < 0.4 ? 0.0 : 0.5 + unit(rng), unit(rng)});
  }
  net.origin = 0;
  net.destination = rungs;
  return net;
}

template <class F>
double timed(const char* name, int threads, F&& fn) {
  par::set_thread_limit(threads);
  auto t0 = Clock::now();
  fn();
  double ms = ms_since(t0);
  std::printf("  %-34s %2s threads: %8.1f ms\n", name,
              threads == 1 ? "1" : "all", ms);
  return ms;
}

}  // namespace

int main() {
  std::printf("openmp: %s\n", par::openmp_available() ? "enabled" : "not built in");

  // Batch equilibrium solves over a demand grid.
  Network ladder = ladder_network(5);
  PathCostModel model = build_cost_model(ladder, enumerate_paths(ladder));
  std::printf("ladder network: %d paths\n", model.path_count());
  std::vector<double> demands;
  for (int k = 1; k <= 600; ++k) demands.push_back(10.0 * k / 600);
  std::vector<double> lam_serial(demands.size()), lam_parallel(demands.size());

  auto grid_solve = [&](std::vector<double>& out) {
    par::parallel_for(static_cast<int>(demands.size()),
                      [&](int i) { out[i] = compute_we(model, demands[i]).min_cost; });
  };
  double s1 = timed("equilibrium grid (600 demands)", 1, [&] { grid_solve(lam_serial); });
  double p1 = timed("equilibrium grid (600 demands)", 0, [&] { grid_solve(lam_parallel); });
  bool same = lam_serial == lam_parallel;
  std::printf("  -> speedup %.2fx, outputs %s\n", s1 / p1, same ? "identical" : "DIFFER");

  // Used-set probes: one LP per active path, demand grid outside.
  std::vector<PathSet> used_serial(120), used_parallel(120);
  auto used_batch = [&](std::vector<PathSet>& out) {
    par::parallel_for(static_cast<int>(out.size()), [&](int i) {
      double d = 0.05 + 8.0 * i / out.size();
      Equilibrium eq = compute_we(model, d);
      out[i] = used_set(model, we_polytope(model, eq));
    });
  };
  double s2 = timed("used-set batch (120 demands)", 1, [&] { used_batch(used_serial); });
  double p2 = timed("used-set batch (120 demands)", 0, [&] { used_batch(used_parallel); });
  std::printf("  -> speedup %.2fx, outputs %s\n", s2 / p2,
              used_serial == used_parallel ? "identical" : "DIFFER");

  // Candidate screening: one full trace per removal candidate.
  EquilibriumCurve curve = trace_curve(model);
  std::vector<ModifiedGame> candidates = default_candidates(model, curve);
  std::printf("candidate screening: %zu candidates\n", candidates.size());
  std::vector<BraessReport> rep_serial, rep_parallel;
  double s3 = timed("extension gap screening", 1,
                    [&] { rep_serial = extension_gap(model, curve, candidates, 3.0); });
  double p3 = timed("extension gap screening", 0,
                    [&] { rep_parallel = extension_gap(model, curve, candidates, 3.0); });
  bool rep_same = rep_serial.size() == rep_parallel.size();
  for (size_t i = 0; rep_same && i < rep_serial.size(); ++i)
    rep_same = rep_serial[i].verdict == rep_parallel[i].verdict &&
               rep_serial[i].cost_gap == rep_parallel[i].cost_gap;
  std::printf("  -> speedup %.2fx, outputs %s\n", s3 / p3, rep_same ? "identical" : "DIFFER");
  return same && rep_same ? 0 : 1;
}
