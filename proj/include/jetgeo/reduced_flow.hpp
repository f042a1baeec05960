#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jetgeo/flow.hpp"
#include "jetgeo/poly.hpp"

namespace jetgeo {

enum class GeodesicClass { Line, XPeriodic, Homoclinic, HeteroclinicTurnBack, HeteroclinicDirectType };
std::string to_string(GeodesicClass c);

struct ReducedState {
  double x = 0.0;
  double p_x = 0.0;
};

/// Requires I to be a hill interval of G (NotHillInterval otherwise).
GeodesicClass classify(const Polynomial& G, const HillInterval& I);

struct TurningPoints {
  double x0 = 0.0, x1 = 0.0;
  EndpointKind kind0 = EndpointKind::Regular, kind1 = EndpointKind::Regular;
  double G0 = 0.0, G1 = 0.0;
  double dG0 = 0.0, dG1 = 0.0;
};
TurningPoints turning_points(const Polynomial& G, const HillInterval& I);

struct ReducedTrajectory {
  Polynomial G;
  FlowPath path;

  std::size_t size() const { return path.size(); }
  const std::vector<double>& times() const { return path.times; }
  ReducedState state(std::size_t i) const { return {path.states[i][0], path.states[i][1]}; }
  ReducedState at(double t) const { return {path.component(t, 0), path.component(t, 1)}; }
  double energy_residual() const { return path.energy_residual; }
  bool separatrix_stall() const { return path.separatrix_stall; }

  /// CSV with header t,x,p_x
  void write_csv(std::ostream& os) const;
};

/// The start state sits at t = 0; t_span must contain 0.
ReducedTrajectory integrate_reduced(const Polynomial& G, ReducedState start, Interval t_span, double tol = 1e-10);

/// Libration period from successive sign changes of p_x.
double ode_period(const Polynomial& G, const HillInterval& I, double tol = 1e-10);

}  // namespace jetgeo
