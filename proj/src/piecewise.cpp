#include "routeq/piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace routeq {

double PiecewiseLinear::operator()(double t) const {
  const size_t m = knots.size();
  if (t >= knots[m - 1])
    return values[m - 1] + (t - knots[m - 1]) * final_slope;
  size_t i = 0;
  while (i + 1 < m && knots[i + 1] < t) ++i;
  if (t <= knots[i]) return values[i];
  double w = (t - knots[i]) / (knots[i + 1] - knots[i]);
  return values[i] + w * (values[i + 1] - values[i]);
}

PiecewiseLinear lambda_curve(const EquilibriumCurve& curve) {
  if (!curve.complete)
    throw Error("lambda_curve: trace was truncated before the final interval");
  PiecewiseLinear f;
  for (const auto& bp : curve.breakpoints) {
    f.knots.push_back(bp.demand);
    f.values.push_back(bp.lambda);
  }
  f.final_slope = curve.intervals.back().lambda_slope;
  return f;
}

std::vector<double> merged_knots(const PiecewiseLinear& f, const PiecewiseLinear& g,
                                 double upto) {
  std::vector<double> k;
  for (double t : f.knots)
    if (t < upto) k.push_back(t);
  for (double t : g.knots)
    if (t < upto) k.push_back(t);
  k.push_back(0.0);
  k.push_back(upto);
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end(),
                      [](double a, double b) { return std::abs(a - b) < 1e-12; }),
          k.end());
  return k;
}

double integrate_difference(const PiecewiseLinear& f, const PiecewiseLinear& g,
                            double upto) {
  if (upto <= 0.0) return 0.0;
  std::vector<double> k = merged_knots(f, g, upto);
  double total = 0.0;
  for (size_t i = 0; i + 1 < k.size(); ++i) {
    double a = k[i], b = k[i + 1];
    double da = f(a) - g(a), db = f(b) - g(b);
    total += 0.5 * (da + db) * (b - a);
  }
  return total;
}

double integrate_weighted_difference(const PiecewiseLinear& f, const PiecewiseLinear& g,
                                     double upto) {
  if (upto <= 0.0) return 0.0;
  std::vector<double> k = merged_knots(f, g, upto);
  double total = 0.0;
  for (size_t i = 0; i + 1 < k.size(); ++i) {
    double a = k[i], b = k[i + 1];
    double da = f(a) - g(a), db = f(b) - g(b);
    // difference = p + q z on [a, b]
    double q = (db - da) / (b - a);
    double p = da - q * a;
    total += 0.5 * p * (b * b - a * a) + q * (b * b * b - a * a * a) / 3.0;
  }
  return total;
}

bool curves_match(const PiecewiseLinear& f, const PiecewiseLinear& g, double tol) {
  double horizon = std::max(f.knots.back(), g.knots.back()) + 1.0;
  std::vector<double> k = merged_knots(f, g, horizon);
  for (size_t i = 0; i < k.size(); ++i) {
    if (std::abs(f(k[i]) - g(k[i])) > tol * (1.0 + std::abs(f(k[i])))) return false;
    if (i + 1 < k.size()) {
      double mid = 0.5 * (k[i] + k[i + 1]);
      if (std::abs(f(mid) - g(mid)) > tol * (1.0 + std::abs(f(mid)))) return false;
    }
  }
  return std::abs(f.final_slope - g.final_slope) <= tol * (1.0 + std::abs(f.final_slope));
}

}  // namespace routeq
