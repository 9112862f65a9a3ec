#pragma once

#include <vector>

#include "routeq/sweep.hpp"

namespace routeq {

// Continuous piecewise-linear function on [0, inf): linear between knots,
// then extended with final_slope beyond the last knot.
struct PiecewiseLinear {
  std::vector<double> knots;   // increasing, knots[0] == 0
  std::vector<double> values;  // same length
  double final_slope = 0.0;

  double operator()(double t) const;
};

// Equilibrium-cost curve as a closed form; requires a complete trace.
PiecewiseLinear lambda_curve(const EquilibriumCurve& curve);

// Union of both knot sets restricted to [0, upto], with upto appended.
std::vector<double> merged_knots(const PiecewiseLinear& f, const PiecewiseLinear& g,
                                 double upto);

// Exact integral of (f - g) over [0, upto]: trapezoids between merged knots.
double integrate_difference(const PiecewiseLinear& f, const PiecewiseLinear& g,
                            double upto);

// Exact integral of z * (f(z) - g(z)) over [0, upto]: the integrand is
// quadratic between merged knots, integrated in closed form.
double integrate_weighted_difference(const PiecewiseLinear& f, const PiecewiseLinear& g,
                                     double upto);

// True when the two functions agree everywhere within tol (checked at merged
// knots, midpoints, and in the final slopes).
bool curves_match(const PiecewiseLinear& f, const PiecewiseLinear& g, double tol);

}  // namespace routeq
