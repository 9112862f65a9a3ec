// Acceptance suite: nine end-to-end checks against the bundled example
// networks and randomized property sweeps. One PASS/FAIL line per criterion;
// exit status 0 only if everything passes. Run as: acceptance [data_dir]

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <random>
#include <sstream>
#include <string>

#include "routeq/braess.hpp"
#include "routeq/io.hpp"
#include "routeq/parallel.hpp"
#include "support/oracle.hpp"

using namespace routeq;

namespace {

struct Labeled {
  PathCostModel model;
  int p1 = -1, p2 = -1, p3 = -1, p4 = -1;
};

Labeled load(const std::string& data_dir, const std::string& file,
             const std::vector<std::vector<int>>& labels) {
  Network net = parse_network_file(data_dir + "/" + file);
  Labeled out;
  out.model = build_cost_model(net, enumerate_paths(net));
  int* slot[4] = {&out.p1, &out.p2, &out.p3, &out.p4};
  for (size_t i = 0; i < labels.size(); ++i) {
    *slot[i] = find_path(out.model, labels[i]);
    if (*slot[i] < 0) throw Error(file + ": expected path missing");
  }
  return out;
}

struct Checker {
  bool ok = true;
  std::string first_failure;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
    ok = ok && cond;
  }
  void expect_near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want << " (tol " << tol << ")";
    expect(std::abs(got - want) <= tol, os.str());
  }
};

bool report(int index, const std::string& title, const Checker& c) {
  if (c.ok)
    std::printf("[PASS] criterion %d: %s\n", index, title.c_str());
  else
    std::printf("[FAIL] criterion %d: %s -- %s\n", index, title.c_str(),
                c.first_failure.c_str());
  std::fflush(stdout);
  return c.ok;
}

Eigen::VectorXd wheatstone_flow(const Labeled& wh, double d) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(3);
  if (d <= 1.0) {
    f(wh.p3) = d;
  } else if (d <= 2.0) {
    f(wh.p1) = d - 1.0;
    f(wh.p2) = d - 1.0;
    f(wh.p3) = 2.0 - d;
  } else {
    f(wh.p1) = d / 2.0;
    f(wh.p2) = d / 2.0;
  }
  return f;
}

double wheatstone_lambda(double d) {
  if (d <= 1.0) return 2.0 * d;
  if (d <= 2.0) return 2.0;
  return d / 2.0 + 1.0;
}

bool criterion1(const Labeled& wh) {
  Checker c;
  for (double d : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    Equilibrium eq = compute_we(wh.model, d);
    Eigen::VectorXd want = wheatstone_flow(wh, d);
    c.expect_near((eq.flow - want).cwiseAbs().maxCoeff(), 0.0, 1e-6,
                  "flow at demand " + std::to_string(d));
  }
  return report(1, "wheatstone equilibrium flows on all three pieces", c);
}

bool criterion2(const Labeled& wh) {
  Checker c;
  EquilibriumCurve curve = trace_curve(wh.model);
  c.expect(curve.complete, "trace reaches the final interval");
  c.expect(curve.breakpoints.size() == 3, "three finite breakpoints");
  if (!c.ok) return report(2, "wheatstone demand sweep", c);
  c.expect_near(curve.breakpoints[0].demand, 0.0, 1e-6, "breakpoint 0");
  c.expect_near(curve.breakpoints[1].demand, 1.0, 1e-6, "breakpoint 1");
  c.expect_near(curve.breakpoints[2].demand, 2.0, 1e-6, "breakpoint 2");
  for (double d = 0.125; d <= 3.25; d += 0.125)
    c.expect_near(curve.lambda_at(d), wheatstone_lambda(d), 1e-6,
                  "equilibrium cost at " + std::to_string(d));

  PathSet all{0, 1, 2};
  PathSet direct{std::min(wh.p1, wh.p2), std::max(wh.p1, wh.p2)};
  PathSet shortcut{wh.p3};
  c.expect(curve.breakpoints[0].active == shortcut && curve.breakpoints[0].used.empty(),
           "classification at demand 0");
  c.expect(curve.intervals[0].active == shortcut && curve.intervals[0].used == shortcut,
           "classification on (0,1)");
  c.expect(curve.breakpoints[1].active == all && curve.breakpoints[1].used == shortcut,
           "classification at demand 1");
  c.expect(curve.intervals[1].active == all && curve.intervals[1].used == all,
           "classification on (1,2)");
  c.expect(curve.breakpoints[2].active == all && curve.breakpoints[2].used == direct,
           "classification at demand 2");
  c.expect(curve.intervals[2].active == direct && curve.intervals[2].used == direct,
           "classification on (2,inf)");
  return report(2, "wheatstone demand sweep: breakpoints, pieces, classifications", c);
}

bool criterion3(const Labeled& mg) {
  Checker c;
  EquilibriumCurve curve = trace_curve(mg.model);
  c.expect(curve.complete && curve.breakpoints.size() == 2, "breakpoints are {0, 1, inf}");
  if (curve.breakpoints.size() == 2)
    c.expect_near(curve.breakpoints[1].demand, 1.0, 1e-6, "finite breakpoint");

  Equilibrium eq = compute_we(mg.model, 1.5);
  auto vertices = enumerate_vertices(we_polytope(mg.model, eq).poly);
  c.expect(vertices.size() == 2, "equilibrium set at 1.5 has two vertices");
  if (vertices.size() == 2) {
    Eigen::VectorXd va = Eigen::VectorXd::Zero(4), vb = Eigen::VectorXd::Zero(4);
    va(mg.p1) = 0.5; va(mg.p2) = 0.5; va(mg.p3) = 0.5;
    vb(mg.p3) = 1.0; vb(mg.p4) = 0.5;
    for (const Eigen::VectorXd& want : {va, vb}) {
      double best = std::min((vertices[0] - want).cwiseAbs().maxCoeff(),
                             (vertices[1] - want).cwiseAbs().maxCoeff());
      c.expect_near(best, 0.0, 1e-6, "vertex of the demand-1.5 equilibrium set");
    }
  }

  DirectionSet dir = directions_of_increase(mg.model, compute_we(mg.model, 1.0));
  c.expect_near(dir.cost_direction.cwiseAbs().maxCoeff(), 0.0, 1e-6,
                "cost direction at the breakpoint");
  const Eigen::VectorXd& rep = dir.representative;
  c.expect_near(rep(mg.p1) - rep(mg.p2), 0.0, 1e-8, "direction symmetry");
  c.expect_near(rep(mg.p1) + rep(mg.p3), 0.0, 1e-8, "direction trades the through path");
  c.expect(rep(mg.p1) >= -1e-9 && rep(mg.p2) >= -1e-9 && rep(mg.p4) >= -1e-9,
           "direction sign pattern");
  c.expect_near(rep.sum(), 1.0, 1e-8, "unit total direction");
  return report(3, "merged network: sweep, equilibrium set, breakpoint directions", c);
}

bool criterion4(const Labeled& wh, const Labeled& pp) {
  Checker c;
  FinalInterval fin = final_interval(wh.model);
  c.expect_near(fin.lambda_slope, 0.5, 1e-6, "final cost slope");
  c.expect_near(fin.intercept, 1.0, 1e-6, "final intercept");
  c.expect(fin.active == PathSet{std::min(wh.p1, wh.p2), std::max(wh.p1, wh.p2)},
           "final active set");
  c.expect_near(fin.start_demand, 2.0, 1e-6, "final interval start");

  EquilibriumCurve curve = trace_curve(pp.model);
  c.expect(curve.complete && curve.breakpoints.size() == 4,
           "bypass network has breakpoints {0,1,2,2.2,inf}");
  if (curve.breakpoints.size() == 4) {
    c.expect_near(curve.breakpoints[1].demand, 1.0, 1e-6, "bypass breakpoint 1");
    c.expect_near(curve.breakpoints[2].demand, 2.0, 1e-6, "bypass breakpoint 2");
    c.expect_near(curve.breakpoints[3].demand, 2.2, 1e-6, "bypass breakpoint 3");
    c.expect_near(curve.intervals[1].cost_slope.cwiseAbs().maxCoeff(), 0.0, 1e-6,
                  "flat cost piece 1");
    c.expect_near(curve.intervals[3].cost_slope.cwiseAbs().maxCoeff(), 0.0, 1e-6,
                  "flat cost piece 3");
  }
  return report(4, "final-interval quantities and the bypass network's flat pieces", c);
}

bool criterion5(const Labeled& se) {
  Checker c;
  EquilibriumCurve curve = trace_curve(se.model);
  c.expect(curve.complete && curve.breakpoints.size() == 5, "five finite breakpoints");
  if (curve.breakpoints.size() == 5) {
    double want[5] = {0.0, 0.5, 3.5, 35.0 / 9.0, 6.0};
    for (int i = 0; i < 5; ++i)
      c.expect_near(curve.breakpoints[i].demand, want[i], 1e-6,
                    "breakpoint " + std::to_string(i));
  }

  Equilibrium eq = compute_we(se.model, 6.0);
  Eigen::VectorXd want = Eigen::VectorXd::Zero(4);
  want(se.p1) = 3.0; want(se.p2) = 2.0; want(se.p4) = 1.0;
  c.expect_near((eq.flow - want).cwiseAbs().maxCoeff(), 0.0, 1e-6, "flow at demand 6");

  ScanOptions opts;
  opts.max_subset_size = 1;
  for (double d : {3.55, 3.7, 3.85}) {
    auto entries = scan_unnecessary(se.model, d, opts);
    bool found = false;
    for (const auto& e : entries) found |= e.subset == PathSet{se.p3};
    c.expect(found, "through path reported unnecessary at demand " + std::to_string(d));
    for (const auto& e : entries) {
      if (e.subset != PathSet{se.p3}) continue;
      c.expect(!std::isnan(e.necessary_again_at) && e.necessary_again_at > 6.0 - 1e-6,
               "re-necessity probe lands above demand 6");
    }
  }
  for (double d : {6.5, 7.0, 8.0}) {
    Equilibrium probe = compute_we(se.model, d);
    c.expect(is_necessary(se.model, we_polytope(se.model, probe), {se.p3}),
             "through path necessary again at demand " + std::to_string(d));
  }
  return report(5, "seven-edge network: breakpoints, closed form, re-necessity", c);
}

bool criterion6(const Labeled& wh, const Labeled& mg) {
  Checker c;
  // (a) slope increase fires once, at the end of the plateau.
  EquilibriumCurve wh_curve = trace_curve(wh.model);
  auto slope_reports = detect_slope_increase(wh_curve);
  c.expect(slope_reports.size() == 1, "exactly one slope-increase report");
  if (slope_reports.size() == 1) {
    c.expect_near(slope_reports[0].demand_lo, 1.0, 1e-6, "flagged interval start");
    c.expect_near(slope_reports[0].demand_hi, 2.0, 1e-6, "flagged interval end");
    c.expect_near(slope_reports[0].cost_gap, 0.5, 1e-6, "slope jump");
  }

  // (b) flow-losing verdicts at the prescribed demands.
  for (double d : {1.1, 1.5, 1.9})
    c.expect(detect_flow_losing(wh.model, compute_we(wh.model, d)).verdict ==
                 BraessVerdict::Detected,
             "flow losing detected at " + std::to_string(d));
  for (double d : {0.5, 0.8, 2.5})
    c.expect(detect_flow_losing(wh.model, compute_we(wh.model, d)).verdict ==
                 BraessVerdict::NoEvidence,
             "flow losing silent at " + std::to_string(d));

  // (c) the self extension flags exactly the (2/3, 2) window with the exact
  // gap. On the plateau the gap is 2 - (d/2 + 1); on the rising piece the
  // equilibrium cost is 2d, so the gap is 2d - (d/2 + 1).
  for (int k = 1; k <= 60; ++k) {
    double d = 0.05 * k;
    auto reports = extension_gap(wh.model, wh_curve, {}, d);
    bool inside = d > 2.0 / 3.0 + 1e-9 && d < 2.0 - 1e-9;
    bool flagged = reports[0].verdict == BraessVerdict::Detected;
    c.expect(flagged == inside, "self extension flag at " + std::to_string(d));
    if (flagged && inside) {
      double u = d / 2.0 + 1.0;
      double want_gap = d >= 1.0 ? std::abs(2.0 - u) : 2.0 * d - u;
      c.expect_near(reports[0].cost_gap, want_gap, 1e-6,
                    "gap value at " + std::to_string(d));
    }
  }

  // (d) complementarity on the merged network: the bypass-removal candidate
  // flags the window while flow-losing never fires.
  EquilibriumCurve mg_curve = trace_curve(mg.model);
  std::vector<ModifiedGame> cand{make_modified_game(mg.model, {mg.p4})};
  for (int k = 1; k <= 50; ++k) {
    double d = 0.05 * k;
    auto reports = extension_gap(mg.model, mg_curve, cand, d);
    bool inside = d > 2.0 / 3.0 + 1e-9 && d < 2.0 - 1e-9;
    c.expect((reports[1].verdict == BraessVerdict::Detected) == inside,
             "bypass-removal flag at " + std::to_string(d));
    c.expect(detect_flow_losing(mg.model, compute_we(mg.model, d)).verdict ==
                 BraessVerdict::NoEvidence,
             "merged flow losing silent at " + std::to_string(d));
  }
  return report(6, "paradox detectors: slope, flow-losing, extension gaps", c);
}

bool criterion7(const Labeled& wh) {
  Checker c;
  ModifiedGame g = make_modified_game(wh.model, {wh.p3});
  double j2 = measure_J(wh.model, g, 2.0);
  double j1 = measure_J(wh.model, g, 1.0);
  c.expect_near(j2, 0.0, 1e-8, "J at demand 2");
  c.expect_near(j1, 0.25, 1e-8, "J at demand 1");
  for (double d : {1.0, 2.0}) {
    PotentialComparison cmp = check_v_relations(wh.model, g, d);
    c.expect_near(measure_J(wh.model, g, d), cmp.modified - cmp.base, 1e-8,
                  "J equals the potential gap at " + std::to_string(d));
  }
  c.expect_near(measure_W(wh.model, g, 2.0), -1.0 / 3.0, 1e-8, "W at demand 2");
  return report(7, "path-value measures with exact piecewise integration", c);
}

bool criterion8() {
  const int kNetworks = 1000;
  std::atomic<int> failures{0};
  std::mutex message_mutex;
  std::string first;

  auto fail = [&](const std::string& msg) {
    failures.fetch_add(1);
    std::lock_guard<std::mutex> lock(message_mutex);
    if (first.empty()) first = msg;
  };

  par::parallel_for(kNetworks, [&](int idx) {
    std::mt19937_64 rng(0xC0FFEE + 17 * idx);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Network net = oracle::random_network(rng);
    PathCostModel model = build_cost_model(net, enumerate_paths(net, 200));
    const int n = model.path_count();
    std::string tag = "net " + std::to_string(idx) + ": ";
    try {
      // Wardrop condition and seed invariance of the cost vector.
      double d0 = 0.3 + 3.0 * unit(rng);
      Equilibrium eq = compute_we(model, d0);
      if (!oracle::satisfies_wardrop(model, eq.retained, eq.flow, 1e-7))
        fail(tag + "wardrop condition");
      for (std::uint64_t seed : {17ull, 9999ull}) {
        Equilibrium other = compute_we(model, d0, {}, WEOptions{seed});
        if ((eq.costs - other.costs).cwiseAbs().maxCoeff() > 1e-8)
          fail(tag + "cost vector changed under solver seed");
      }

      // Monotone equilibrium cost on a 50-point grid.
      double prev = -1e300;
      for (int k = 0; k <= 50; ++k) {
        double lambda = compute_we(model, 5.0 * k / 50.0).min_cost;
        if (lambda < prev - 1e-9 * (1.0 + std::abs(lambda)))
          fail(tag + "equilibrium cost decreased in demand");
        prev = lambda;
      }

      // Piece structure: distinct consecutive cost slopes, sandwich
      // inclusions at every breakpoint.
      EquilibriumCurve curve = trace_curve(model);
      for (size_t i = 0; i + 1 < curve.intervals.size(); ++i)
        if ((curve.intervals[i].cost_slope - curve.intervals[i + 1].cost_slope)
                .cwiseAbs()
                .maxCoeff() <= 1e-8)
          fail(tag + "consecutive cost slopes equal");
      for (size_t i = 0; i < curve.intervals.size(); ++i) {
        bool ok = is_subset(curve.breakpoints[i].used, curve.intervals[i].used) &&
                  is_subset(curve.intervals[i].used, curve.intervals[i].active) &&
                  is_subset(curve.intervals[i].active, curve.breakpoints[i].active);
        if (i + 1 < curve.breakpoints.size())
          ok = ok && is_subset(curve.breakpoints[i + 1].used, curve.intervals[i].used) &&
               is_subset(curve.intervals[i].active, curve.breakpoints[i + 1].active);
        if (!ok) fail(tag + "sandwich inclusion violated");
      }

      // Central difference of the potential matches the cost between
      // breakpoints.
      for (size_t i = 0; i < curve.intervals.size() && i < 3; ++i) {
        double lo = curve.intervals[i].lo;
        double hi = std::isinf(curve.intervals[i].hi) ? lo + 1.0 : curve.intervals[i].hi;
        if (hi - lo < 1e-5) continue;
        double mid = 0.5 * (lo + hi);
        double h = std::min((hi - lo) / 4.0, 1e-3);
        double deriv = (compute_we(model, mid + h).potential -
                        compute_we(model, mid - h).potential) /
                       (2.0 * h);
        if (std::abs(deriv - compute_we(model, mid).min_cost) > 1e-4)
          fail(tag + "potential derivative mismatch");
      }

      // Potential ordering vs necessity for five random removal sets.
      if (n >= 2) {
        EquilibriumSet wep = we_polytope(model, eq);
        for (int t = 0; t < 5; ++t) {
          PathSet removed;
          for (int p = 0; p < n; ++p)
            if (unit(rng) < 0.4) removed.push_back(p);
          if (removed.empty() || static_cast<int>(removed.size()) == n) continue;
          Eigen::VectorXd cvec = Eigen::VectorXd::Zero(n);
          for (int p : removed) cvec(p) = 1.0;
          double margin = solve_lp(wep.poly, cvec).objective;
          if (margin > 1e-9 && margin < 1e-5) continue;  // knife-edge classification
          bool necessary = margin > 1e-7;
          PotentialComparison cmp =
              check_v_relations(model, make_modified_game(model, removed), d0);
          if (cmp.base > cmp.modified + 1e-9 * (1.0 + std::abs(cmp.modified)))
            fail(tag + "removal lowered the potential");
          bool equal = std::abs(cmp.modified - cmp.base) <=
                       1e-8 * (1.0 + std::abs(cmp.base));
          if (equal == necessary) fail(tag + "potential equality vs necessity mismatch");
        }
      }

      // Any paradox found by a singleton removal must come with a strictly
      // beneficial demand below it (checked on a 200-point grid).
      if (n >= 2) {
        PiecewiseLinear lambda = lambda_curve(curve);
        double horizon = curve.last_breakpoint() + 2.0;
        for (int p = 0; p < n; ++p) {
          PiecewiseLinear lam_mod = lambda_curve(trace_curve(model, {p}));
          double detected_at = -1.0;
          std::vector<double> knots = merged_knots(lambda, lam_mod, horizon);
          for (size_t k = 0; k + 1 < knots.size(); ++k) {
            for (double d : {knots[k], 0.5 * (knots[k] + knots[k + 1])})
              if (d > 0 && lambda(d) > lam_mod(d) + braess_gap_tol(lambda(d)))
                detected_at = std::max(detected_at, d);
          }
          if (detected_at <= 0) continue;
          bool beneficial = false;
          for (int k = 1; k < 200; ++k) {
            double d = detected_at * k / 200.0;
            beneficial |= lambda(d) < lam_mod(d) - braess_gap_tol(lambda(d));
          }
          if (!beneficial) fail(tag + "paradox without a beneficial demand below");
        }
      }
    } catch (const std::exception& e) {
      fail(tag + "exception: " + e.what());
    }
  });

  Checker c;
  c.expect(failures.load() == 0,
           std::to_string(failures.load()) + " failures; first: " + first);
  return report(8, "property sweep over 1000 random networks", c);
}

bool criterion9() {
  Checker c;
  std::mt19937_64 rng(0xABCD);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const int n = 3, q = 5;
    Eigen::MatrixXd B(q, n);
    Eigen::VectorXd slopes(q);
    for (int i = 0; i < q; ++i) {
      slopes(i) = unit(rng) < 0.25 ? 0.0 : 2.0 * unit(rng);
      for (int j = 0; j < n; ++j) B(i, j) = unit(rng) < 0.5 ? 1.0 : 0.0;
    }
    Eigen::MatrixXd A = B.transpose() * slopes.asDiagonal() * B;
    A = ((A + A.transpose()) * 0.5).eval();
    Eigen::VectorXd beta(n);
    for (int i = 0; i < n; ++i) beta(i) = 2.0 * unit(rng);
    double demand = 0.2 + 3.0 * unit(rng);

    Polyhedron feas(n);
    feas.add_equality(Eigen::RowVectorXd::Ones(n), demand);
    for (int i = 0; i < n; ++i) feas.require_nonnegative(i);
    SolveReport qp = solve_qp(feas, A, beta);
    if (!qp.ok()) {
      c.expect(false, "beckmann solve failed on instance " + std::to_string(t));
      continue;
    }
    Eigen::VectorXd pg = oracle::beckmann_projected_gradient(A, beta, demand);
    c.expect_near(((A * qp.x + beta) - (A * pg + beta)).cwiseAbs().maxCoeff(), 0.0, 1e-5,
                  "cost vector gap on instance " + std::to_string(t));
  }
  return report(9, "beckmann solver vs projected-gradient oracle on 100 instances", c);
}

}  // namespace

int main(int argc, char** argv) {
  std::string data_dir = argc > 1 ? argv[1] : "data";
  bool ok = true;
  try {
    Labeled wh = load(data_dir, "wheatstone.json", {{0, 1}, {2, 3}, {0, 4, 3}});
    Labeled mg = load(data_dir, "merged.json", {{0, 1}, {2, 3}, {0, 3}, {2, 1}});
    Labeled pp = load(data_dir, "parallel_path.json", {{0, 1}, {2, 3}, {0, 4, 3}, {5}});
    Labeled se = load(data_dir, "seven_edge.json", {{0, 1}, {2, 6, 3}, {0, 4, 3}, {2, 5}});

    ok &= criterion1(wh);
    ok &= criterion2(wh);
    ok &= criterion3(mg);
    ok &= criterion4(wh, pp);
    ok &= criterion5(se);
    ok &= criterion6(wh, mg);
    ok &= criterion7(wh);
    ok &= criterion8();
    ok &= criterion9();
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance setup: %s\n", e.what());
    return 1;
  }
  return ok ? 0 : 1;
}
