#pragma once

// Period, cost and Theta integrals of a pencil element G = a + b F over its
// hill interval or over the sweeps of a trajectory segment.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "jetgeo/flow.hpp"
#include "jetgeo/poly.hpp"
#include "jetgeo/quadrature.hpp"

namespace jetgeo {

struct PeriodReport {
  QuadResult L, delta_y, delta_z, theta1, theta2;

  std::string to_json() const;
};

/// Full-period integrals over the hill I of G = a + b F:
///   L  = 2 int 1/sqrt(1-G^2)          delta_y = 2 int G/sqrt(1-G^2)
///   delta_z = 2 int G F/sqrt(1-G^2)   theta1 = 2 int (1-G)/sqrt(1-G^2)
///   theta2  = 2 int G (1-F)/sqrt(1-G^2)
/// Divergent entries are reported as +-inf with finite = false.
PeriodReport period_report(const Polynomial& F, double a, double b, const HillInterval& I, double tol = 1e-10);

/// Monotone x-sweeps of a trajectory segment, in time order.
struct TravelInterval {
  std::vector<std::pair<double, double>> sweeps;

  bool is_continuous() const;
};

struct CostReport {
  double delta_t = 0.0, delta_y = 0.0, delta_z = 0.0, cost_t = 0.0, cost_y = 0.0;
  double error_estimate = 0.0;

  std::string to_json() const;
};

/// Sums the per-sweep integrals (dt = |dx| / sqrt(1 - G^2), dy = G dt,
/// dz = F dy). Cost integrands are integrated directly, not by subtraction.
CostReport cost_over_travel(const Polynomial& F, double a, double b, const TravelInterval& travel,
                            double tol = 1e-10);

/// Same, with the hill given (every sweep must lie in it).
CostReport cost_over_travel(const Polynomial& F, double a, double b, const HillInterval& I,
                            const TravelInterval& travel, double tol = 1e-10);

/// Sweeps of a reduced-flow path over [t0, t1], split at sign changes of p.
TravelInterval travel_interval(const FlowPath& path, double t0, double t1);

/// Point x between `anchor_end` (a hill endpoint of G) and x_far whose sweep
/// time to x_far equals `time`. Solved by safeguarded Newton in log distance
/// from the anchor.
double invert_time_map(const Polynomial& G, const HillInterval& I, bool anchor_is_lo, double x_far, double time,
                       double tol = 1e-10);

}  // namespace jetgeo
