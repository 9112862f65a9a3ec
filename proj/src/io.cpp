#include "routeq/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace routeq {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int require_int(const json& j, const char* field, const std::string& where) {
  if (!j.contains(field))
    throw ParseError(where + ": missing field '" + field + "'");
  const json& v = j.at(field);
  if (!v.is_number_integer())
    throw ParseError(where + ": field '" + field + "' must be an integer");
  return v.get<int>();
}

double require_number(const json& j, const char* field, const std::string& where) {
  if (!j.contains(field))
    throw ParseError(where + ": missing field '" + field + "'");
  const json& v = j.at(field);
  if (!v.is_number())
    throw ParseError(where + ": field '" + field + "' must be a number");
  return v.get<double>();
}

}  // namespace

Network parse_network_text(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(source + ": top level must be an object");

  Network net;
  net.vertex_count = require_int(j, "vertices", source);
  net.origin = require_int(j, "origin", source);
  net.destination = require_int(j, "destination", source);
  if (!j.contains("edges") || !j.at("edges").is_array())
    throw ParseError(source + ": field 'edges' must be an array");
  int k = 0;
  for (const json& je : j.at("edges")) {
    std::string where = source + ", edge " + std::to_string(k);
    if (!je.is_object()) throw ParseError(where + ": must be an object");
    Edge e;
    e.tail = require_int(je, "tail", where);
    e.head = require_int(je, "head", where);
    e.alpha = require_number(je, "alpha", where);
    e.beta = require_number(je, "beta", where);
    net.edges.push_back(e);
    ++k;
  }
  validate_network(net);
  return net;
}

Network parse_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open network file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_network_text(buf.str(), path);
}

std::string network_to_json(const Network& net) {
  json j;
  j["vertices"] = net.vertex_count;
  j["origin"] = net.origin;
  j["destination"] = net.destination;
  j["edges"] = json::array();
  for (const Edge& e : net.edges)
    j["edges"].push_back({{"tail", e.tail}, {"head", e.head},
                          {"alpha", e.alpha}, {"beta", e.beta}});
  return j.dump(2) + "\n";
}

void save_network(const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write network file: " + path);
  out << network_to_json(net);
}

void emit_curve_csv(const EquilibriumCurve& curve, std::ostream& out, double dmax,
                    int samples_per_interval) {
  const int n = static_cast<int>(curve.breakpoints.front().costs.size());
  out << "D,lambda_we";
  for (int p = 0; p < n; ++p) out << ",lambda_p" << (p + 1);
  out << ",interval_index\n";
  if (dmax <= 0.0) return;

  auto emit_row = [&](double t, int interval) {
    out << fmt(t) << "," << fmt(curve.lambda_at(t));
    Eigen::VectorXd costs = curve.costs_at(t);
    for (int p = 0; p < n; ++p) out << "," << fmt(costs(p));
    out << "," << interval << "\n";
  };

  for (size_t i = 0; i < curve.intervals.size(); ++i) {
    double lo = curve.intervals[i].lo;
    if (lo > dmax) break;
    double hi = std::min(curve.intervals[i].hi, dmax);
    emit_row(lo, static_cast<int>(i));
    if (hi <= lo) break;
    for (int k = 1; k <= samples_per_interval; ++k)
      emit_row(lo + (hi - lo) * k / (samples_per_interval + 1), static_cast<int>(i));
    bool is_last = i + 1 == curve.intervals.size() || curve.intervals[i].hi > dmax;
    if (is_last) {
      emit_row(hi, static_cast<int>(i));
      break;
    }
  }
}

void emit_interval_csv(const EquilibriumCurve& curve, std::ostream& out) {
  out << "interval_index,d_lo,d_hi,delta_lambda,active,used\n";
  for (size_t i = 0; i < curve.intervals.size(); ++i) {
    const CurveInterval& iv = curve.intervals[i];
    out << i << "," << fmt(iv.lo) << ","
        << (std::isinf(iv.hi) ? "inf" : fmt(iv.hi)) << "," << fmt(iv.lambda_slope) << ","
        << format_path_set(iv.active) << "," << format_path_set(iv.used) << "\n";
  }
}

void emit_reports_csv(const std::vector<BraessReport>& reports, std::ostream& out) {
  out << "verdict,condition,demand_lo,demand_hi,witness,cost_gap,extension_interval,message\n";
  for (const BraessReport& r : reports) {
    out << (r.failed ? "error" : to_string(r.verdict)) << "," << to_string(r.condition)
        << "," << fmt(r.demand_lo) << "," << fmt(r.demand_hi) << ","
        << format_path_set(r.witness) << "," << fmt(r.cost_gap) << ","
        << r.extension_interval << ",\"" << r.message << "\"\n";
  }
}

namespace {

constexpr double kWidth = 800, kHeight = 500, kMargin = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string render_svg(const std::vector<LabeledSeries>& series,
                       const std::vector<double>& x_ticks) {
  if (series.empty()) throw ValidationError("render_svg: no series given");
  double xmin = 0, xmax = -1e300, ymin = 0, ymax = -1e300;
  for (const auto& s : series) {
    for (double v : s.x) xmax = std::max(xmax, v);
    for (double v : s.y) ymax = std::max(ymax, v);
  }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  ymax *= 1.05;

  auto X = [&](double v) { return kMargin + (v - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin); };
  auto Y = [&](double v) { return kHeight - kMargin - (v - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << X(xmin) << "\" y1=\"" << Y(ymin) << "\" x2=\"" << X(xmax)
      << "\" y2=\"" << Y(ymin) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << X(xmin) << "\" y1=\"" << Y(ymin) << "\" x2=\"" << X(xmin)
      << "\" y2=\"" << Y(ymax) << "\" stroke=\"black\"/>\n";
  for (double t : x_ticks) {
    if (t < xmin || t > xmax) continue;
    svg << "<line x1=\"" << X(t) << "\" y1=\"" << Y(ymin) << "\" x2=\"" << X(t) << "\" y2=\""
        << Y(ymin) + 6 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << X(t) << "\" y=\"" << Y(ymin) + 22
        << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
  }
  int color = 0;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << kPalette[color % 8]
        << "\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i)
      svg << fmt(X(s.x[i])) << "," << fmt(Y(s.y[i])) << (i + 1 < s.x.size() ? " " : "");
    svg << "\"/>\n";
    svg << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << kMargin + 16 * color
        << "\" font-size=\"12\" fill=\"" << kPalette[color % 8] << "\">" << s.label
        << "</text>\n";
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string describe(const PathCostModel& model) {
  std::ostringstream out;
  out << model.path_count() << " paths over " << model.edge_count() << " edges\n";
  for (int p = 0; p < model.path_count(); ++p) {
    out << "  p" << (p + 1) << " = (";
    const auto& es = model.paths[p].edges;
    for (size_t i = 0; i < es.size(); ++i) out << "e" << (es[i] + 1) << (i + 1 < es.size() ? "," : "");
    out << ")\n";
  }
  return out.str();
}

std::string describe(const PathCostModel& model, const Equilibrium& eq) {
  std::ostringstream out;
  out << "demand " << fmt(eq.demand) << ": equilibrium cost " << fmt(eq.min_cost)
      << ", potential " << fmt(eq.potential) << "\n";
  out << "  active " << format_path_set(eq.active) << ", used " << format_path_set(eq.used)
      << "\n";
  for (int p = 0; p < model.path_count(); ++p)
    out << "  p" << (p + 1) << ": flow " << fmt(eq.flow(p)) << ", cost " << fmt(eq.costs(p))
        << "\n";
  return out.str();
}

std::string describe(const PathCostModel& model, const EquilibriumCurve& curve) {
  (void)model;
  std::ostringstream out;
  out << "breakpoints:";
  for (const auto& bp : curve.breakpoints) out << " " << fmt(bp.demand);
  out << (curve.complete ? " inf" : " (truncated)") << "\n";
  for (size_t i = 0; i < curve.intervals.size(); ++i) {
    const CurveInterval& iv = curve.intervals[i];
    out << "  [" << fmt(iv.lo) << ", " << (std::isinf(iv.hi) ? "inf" : fmt(iv.hi))
        << "): slope " << fmt(iv.lambda_slope) << ", active " << format_path_set(iv.active)
        << ", used " << format_path_set(iv.used) << "\n";
  }
  for (const auto& bp : curve.breakpoints)
    out << "  at " << fmt(bp.demand) << ": cost " << fmt(bp.lambda) << ", active "
        << format_path_set(bp.active) << ", used " << format_path_set(bp.used) << "\n";
  return out.str();
}

std::string describe(const FinalInterval& fin) {
  std::ostringstream out;
  out << "final interval starts at demand " << fmt(fin.start_demand) << "\n";
  out << "  equilibrium cost = " << fmt(fin.lambda_slope) << " * D + " << fmt(fin.intercept)
      << "\n";
  out << "  active " << format_path_set(fin.active) << "\n";
  out << "  cost slope (";
  for (int p = 0; p < fin.cost_slope.size(); ++p)
    out << fmt(fin.cost_slope(p)) << (p + 1 < fin.cost_slope.size() ? ", " : "");
  out << ")\n";
  return out.str();
}

std::string describe(const std::vector<BraessReport>& reports) {
  std::ostringstream out;
  for (const BraessReport& r : reports) {
    if (r.failed) {
      out << "error  " << to_string(r.condition) << " " << format_path_set(r.witness) << ": "
          << r.message << "\n";
      continue;
    }
    out << (r.verdict == BraessVerdict::Detected ? "DETECTED" : "no evidence") << "  "
        << to_string(r.condition);
    if (r.demand_hi > r.demand_lo)
      out << " on [" << fmt(r.demand_lo) << ", " << fmt(r.demand_hi) << ")";
    else
      out << " at " << fmt(r.demand_lo);
    if (!r.witness.empty()) out << ", removing " << format_path_set(r.witness);
    if (r.verdict == BraessVerdict::Detected) out << ", gap " << fmt(r.cost_gap);
    if (!r.message.empty()) out << "  (" << r.message << ")";
    out << "\n";
  }
  return out.str();
}

std::string describe(const std::vector<ScanEntry>& entries) {
  std::ostringstream out;
  for (const ScanEntry& e : entries) {
    out << format_path_set(e.subset) << ": "
        << (e.kind == UnnecessaryKind::BeneficialThenParadox
                ? "causes a paradox below this demand"
                : "unnecessary at all lower demands");
    if (!std::isnan(e.paradox_demand)) out << "; removal helps near D=" << fmt(e.paradox_demand);
    if (!std::isnan(e.benefit_demand)) out << "; presence helps near D=" << fmt(e.benefit_demand);
    if (!std::isnan(e.necessary_again_at))
      out << "; necessary again by D=" << fmt(e.necessary_again_at);
    out << "\n";
  }
  return out.str();
}

}  // namespace routeq
