#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "routeq/braess.hpp"

namespace routeq {

// Network file format: JSON object with integer `vertices` (ids are then
// 0..vertices-1), `edges` as a list of {tail, head, alpha, beta}, and
// integer `origin` / `destination`.
Network parse_network_text(const std::string& text, const std::string& source = "<memory>");
Network parse_network_file(const std::string& path);

std::string network_to_json(const Network& net);
void save_network(const Network& net, const std::string& path);

// Curve samples: header D,lambda_we,lambda_p1..pn,interval_index; rows at
// every breakpoint (exactly once) plus 20 evenly spaced samples per piece,
// strictly increasing in D, up to dmax. dmax <= 0 emits the header only.
void emit_curve_csv(const EquilibriumCurve& curve, std::ostream& out, double dmax,
                    int samples_per_interval = 20);

// Breakpoint/interval table: one row per piece with slope and sets.
void emit_interval_csv(const EquilibriumCurve& curve, std::ostream& out);

void emit_reports_csv(const std::vector<BraessReport>& reports, std::ostream& out);

struct LabeledSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Deterministic standalone SVG: fixed 800x500 viewbox, axes, x ticks at the
// given positions (breakpoints), one polyline per series.
std::string render_svg(const std::vector<LabeledSeries>& series,
                       const std::vector<double>& x_ticks = {});

std::string describe(const PathCostModel& model);
std::string describe(const PathCostModel& model, const Equilibrium& eq);
std::string describe(const PathCostModel& model, const EquilibriumCurve& curve);
std::string describe(const FinalInterval& fin);
std::string describe(const std::vector<BraessReport>& reports);
std::string describe(const std::vector<ScanEntry>& entries);

}  // namespace routeq
