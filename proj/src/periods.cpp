#include "jetgeo/periods.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "json.hpp"
#include "jetgeo/errors.hpp"

namespace jetgeo {

namespace {

nlohmann::json quad_json(const QuadResult& r) {
  nlohmann::json j;
  if (std::isfinite(r.value)) j["value"] = r.value;
  else j["value"] = r.value > 0 ? "+inf" : (r.value < 0 ? "-inf" : "nan");
  j["error_estimate"] = r.error_estimate;
  j["finite"] = r.finite;
  return j;
}

// Numerators of dt, dy, dz, cost_t, cost_y, in that order. The cost
// numerators are 1 - G and G (1 - F).
std::vector<Polynomial> numerators(const Polynomial& F, const Polynomial& G) {
  return {Polynomial::constant(1.0), G, G * F, 1.0 - G, G * (1.0 - F)};
}

// The hill of G with endpoint values and kinds recomputed from G itself.
HillInterval hill_for(const Polynomial& G, const HillInterval& I) {
  HillInterval h = I;
  if (!I.clipped) {
    h.lo_value = G(I.lo) < 0.0 ? -1.0 : 1.0;
    h.hi_value = G(I.hi) < 0.0 ? -1.0 : 1.0;
    h.lo_kind = is_critical_point(G, I.lo) ? EndpointKind::Critical : EndpointKind::Regular;
    h.hi_kind = is_critical_point(G, I.hi) ? EndpointKind::Critical : EndpointKind::Regular;
  }
  return h;
}

QuadResult degenerate_entry(const Polynomial& N, const HillInterval& I) {
  QuadResult r;
  const double mid = N(0.5 * (I.lo + I.hi));
  if (N.is_zero()) return r;
  r.value = mid < 0.0 ? -INFINITY : INFINITY;
  r.finite = false;
  return r;
}

}  // namespace

std::string PeriodReport::to_json() const {
  nlohmann::json j;
  j["L"] = quad_json(L);
  j["delta_y"] = quad_json(delta_y);
  j["delta_z"] = quad_json(delta_z);
  j["theta1"] = quad_json(theta1);
  j["theta2"] = quad_json(theta2);
  return j.dump(2);
}

std::string CostReport::to_json() const {
  nlohmann::json j{{"delta_t", delta_t}, {"delta_y", delta_y},   {"delta_z", delta_z},
                   {"cost_t", cost_t},   {"cost_y", cost_y},     {"error_estimate", error_estimate}};
  return j.dump(2);
}

PeriodReport period_report(const Polynomial& F, double a, double b, const HillInterval& I, double tol) {
  const Polynomial G = a + b * F;
  const std::vector<Polynomial> N = numerators(F, G);
  std::vector<QuadResult> r(N.size());

  if (G.is_constant() && std::abs(std::abs(G[0]) - 1.0) <= 1e-15) {
    // G = +-1: the reduced state is frozen and 1 - G^2 vanishes identically.
    // Theta1 has integrand sqrt((1-G)/(1+G)), which is 0 for G = 1.
    for (std::size_t k = 0; k < N.size(); ++k) r[k] = degenerate_entry(N[k], I);
    if (G[0] > 0.0) r[3] = QuadResult{};
  } else {
    if (!G.is_constant() && !validate_hill(G, I))
      throw Error(ErrorCode::NotHillInterval, "interval is not a hill interval of G");
    if (G.is_constant() && std::abs(G[0]) > 1.0) throw Error(ErrorCode::NotHillInterval, "|G| > 1");
    HillInterval h = hill_for(G, I);
    if (G.is_constant()) h.clipped = true;
    const HillIntegrator integ(G, h);
    r = integ.integrate(N, h.lo, h.hi, tol);
  }
  for (QuadResult& q : r) {
    q.value *= 2.0;
    q.error_estimate *= 2.0;
  }
  return {r[0], r[1], r[2], r[3], r[4]};
}

bool TravelInterval::is_continuous() const {
  for (std::size_t i = 1; i < sweeps.size(); ++i)
    if (sweeps[i].first != sweeps[i - 1].second) return false;
  return true;
}

CostReport cost_over_travel(const Polynomial& F, double a, double b, const HillInterval& I,
                            const TravelInterval& travel, double tol) {
  const Polynomial G = a + b * F;
  const std::vector<Polynomial> N = numerators(F, G);
  CostReport out;
  if (G.is_constant() && std::abs(std::abs(G[0]) - 1.0) <= 1e-15) {
    // Frozen x: every sweep is a point, so the x-integrals vanish.
    return out;
  }
  HillInterval h = hill_for(G, I);
  if (G.is_constant()) h.clipped = true;
  const HillIntegrator integ(G, h);
  for (const auto& [from, to] : travel.sweeps) {
    if (from == to) continue;
    const auto r = integ.integrate(N, from, to, tol);
    out.delta_t += r[0].value;
    out.delta_y += r[1].value;
    out.delta_z += r[2].value;
    out.cost_t += r[3].value;
    out.cost_y += r[4].value;
    for (const QuadResult& q : r) out.error_estimate += q.error_estimate;
  }
  return out;
}

CostReport cost_over_travel(const Polynomial& F, double a, double b, const TravelInterval& travel, double tol) {
  const Polynomial G = a + b * F;
  CostReport out;
  for (const auto& sw : travel.sweeps) {
    if (sw.first == sw.second) continue;
    const double mid = 0.5 * (sw.first + sw.second);
    HillInterval h;
    if (G.is_constant()) {
      h.lo = std::min(sw.first, sw.second);
      h.hi = std::max(sw.first, sw.second);
      h.clipped = true;
    } else {
      auto found = hill_interval_containing(G, mid);
      if (!found) throw Error(ErrorCode::NotHillInterval, "sweep is not inside a hill interval of G");
      h = *found;
    }
    TravelInterval one;
    one.sweeps.push_back(sw);
    const CostReport c = cost_over_travel(F, a, b, h, one, tol);
    out.delta_t += c.delta_t;
    out.delta_y += c.delta_y;
    out.delta_z += c.delta_z;
    out.cost_t += c.cost_t;
    out.cost_y += c.cost_y;
    out.error_estimate += c.error_estimate;
  }
  return out;
}

TravelInterval travel_interval(const FlowPath& path, double t0, double t1) {
  if (t0 > t1) std::swap(t0, t1);
  t0 = std::max(t0, path.t_begin());
  t1 = std::min(t1, path.t_end());
  std::vector<double> turns;
  for (const FlowStep& st : path.steps) {
    const double a = std::min(st.t0, st.t1()), b = std::max(st.t0, st.t1());
    if (b <= t0 || a >= t1) continue;
    auto p = [&](double t) { return st.component(t, 1); };
    if (auto te = ode::locate_event(st, p)) {
      if (*te > t0 && *te < t1 && (turns.empty() || *te > turns.back() + 1e-12)) turns.push_back(*te);
    }
  }
  TravelInterval out;
  double prev = path.component(t0, 0);
  for (double t : turns) {
    const double x = path.component(t, 0);
    out.sweeps.push_back({prev, x});
    prev = x;
  }
  out.sweeps.push_back({prev, path.component(t1, 0)});
  return out;
}

double invert_time_map(const Polynomial& G, const HillInterval& I, bool anchor_is_lo, double x_far, double time,
                       double tol) {
  const double e = anchor_is_lo ? I.lo : I.hi;
  const double dir = anchor_is_lo ? 1.0 : -1.0;
  const double D = (x_far - e) * dir;
  if (!(D > 0.0) || !(time >= 0.0)) throw Error(ErrorCode::InvalidArgument, "x_far must lie inside the hill");
  if (time == 0.0) return x_far;
  const HillInterval h = hill_for(G, I);
  const HillIntegrator integ(G, h);
  const std::vector<Polynomial> one{Polynomial::constant(1.0)};
  auto x_of = [&](double sig) { return e + dir * std::exp(sig); };
  auto g = [&](double sig) { return integ.integrate(one, x_of(sig), x_far, tol)[0].value - time; };
  auto dg = [&](double sig) {
    const double x = x_of(sig);
    return -std::exp(sig) / std::sqrt(integ.one_minus_G2(x));
  };

  double hi = std::log(D);  // g(hi) = -time < 0
  double lo = hi - 1.0;
  double glo = g(lo);
  for (double step = 1.0; glo < 0.0; step *= 2.0) {
    hi = lo;
    lo -= step;
    if (lo < -700.0) throw Error(ErrorCode::InvalidArgument, "time exceeds the sweep time from the hill endpoint");
    glo = g(lo);
  }
  double sig = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double gv = g(sig);
    if (std::abs(gv) <= tol * std::max(1.0, time)) break;
    if (gv > 0.0) lo = sig;
    else hi = sig;
    double next = sig - gv / dg(sig);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - sig) <= 1e-15 * std::max(1.0, std::abs(sig))) {
      sig = next;
      break;
    }
    sig = next;
  }
  return x_of(sig);
}

}  // namespace jetgeo
