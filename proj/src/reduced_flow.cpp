#include "jetgeo/reduced_flow.hpp"

#include <cmath>
#include <ostream>

#include "jetgeo/errors.hpp"
#include "jetgeo/io.hpp"

namespace jetgeo {

std::string to_string(GeodesicClass c) {
  switch (c) {
    case GeodesicClass::Line: return "Line";
    case GeodesicClass::XPeriodic: return "XPeriodic";
    case GeodesicClass::Homoclinic: return "Homoclinic";
    case GeodesicClass::HeteroclinicTurnBack: return "HeteroclinicTurnBack";
    case GeodesicClass::HeteroclinicDirectType: return "HeteroclinicDirectType";
  }
  return "Unknown";
}

TurningPoints turning_points(const Polynomial& G, const HillInterval& I) {
  const Polynomial dG = G.derivative();
  TurningPoints tp;
  tp.x0 = I.lo;
  tp.x1 = I.hi;
  tp.G0 = G(I.lo);
  tp.G1 = G(I.hi);
  tp.dG0 = dG(I.lo);
  tp.dG1 = dG(I.hi);
  tp.kind0 = is_critical_point(G, I.lo) ? EndpointKind::Critical : EndpointKind::Regular;
  tp.kind1 = is_critical_point(G, I.hi) ? EndpointKind::Critical : EndpointKind::Regular;
  return tp;
}

GeodesicClass classify(const Polynomial& G, const HillInterval& I) {
  if (G.is_constant()) {
    if (std::abs(G[0]) > 1.0) throw Error(ErrorCode::NotHillInterval, "|G| > 1 everywhere");
    return GeodesicClass::Line;
  }
  if (!validate_hill(G, I)) throw Error(ErrorCode::NotHillInterval, "interval is not a hill interval of G");
  const TurningPoints tp = turning_points(G, I);
  const int critical = (tp.kind0 == EndpointKind::Critical) + (tp.kind1 == EndpointKind::Critical);
  if (critical == 0) return GeodesicClass::XPeriodic;
  if (critical == 1) return GeodesicClass::Homoclinic;
  return tp.G0 * tp.G1 > 0.0 ? GeodesicClass::HeteroclinicDirectType : GeodesicClass::HeteroclinicTurnBack;
}

void ReducedTrajectory::write_csv(std::ostream& os) const {
  CsvWriter csv(os, {"t", "x", "p_x"});
  for (std::size_t i = 0; i < path.size(); ++i) csv.row({path.times[i], path.states[i][0], path.states[i][1]});
}

ReducedTrajectory integrate_reduced(const Polynomial& G, ReducedState start, Interval t_span, double tol) {
  const double g = G(start.x);
  if (std::abs(start.p_x * start.p_x + g * g - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "start state is not on the energy level p_x^2 + G^2 = 1");
  FlowSpec spec;
  spec.G = G;
  ReducedTrajectory out;
  out.G = G;
  out.path = run_flow(spec, {start.x, start.p_x}, t_span, tol);
  return out;
}

double ode_period(const Polynomial& G, const HillInterval& I, double tol) {
  if (G.is_constant() || classify(G, I) != GeodesicClass::XPeriodic)
    throw Error(ErrorCode::NotPeriodic, "period requires an x-periodic geodesic");
  const double xm = 0.5 * (I.lo + I.hi);
  const double gm = G(xm);
  const DVec start{xm, std::sqrt(std::max(0.0, 1.0 - gm * gm))};

  for (double horizon = 16.0 * (I.hi - I.lo); horizon < 1e7; horizon *= 2.0) {
    std::vector<double> events;
    FlowSpec spec;
    spec.G = G;
    spec.on_step = [&](const FlowStep& st, const DVec&, double) {
      auto p = [&](double t) { return st.component(t, 1); };
      if (auto te = ode::locate_event(st, p)) {
        // A zero exactly at the left end was already recorded by the previous step.
        if (events.empty() || *te > events.back() + 1e-12) events.push_back(*te);
      }
      return events.size() < 3;
    };
    run_flow(spec, start, {0.0, horizon}, tol);
    if (events.size() >= 3) return events[2] - events[0];
  }
  throw Error(ErrorCode::NonConvergence, "no full libration detected");
}

}  // namespace jetgeo
