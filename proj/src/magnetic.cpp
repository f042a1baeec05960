#include "jetgeo/magnetic.hpp"

#include <cmath>
#include <ostream>

#include "jetgeo/errors.hpp"
#include "jetgeo/io.hpp"
#include "jetgeo/periods.hpp"

namespace jetgeo {

MagneticPoint project_pi_F(const Polynomial& F, const JetPoint& g) {
  if (g.theta.empty()) throw Error(ErrorCode::InvalidArgument, "jet point needs k >= 0");
  if (!F.is_zero() && F.degree() > g.k()) throw Error(ErrorCode::InvalidArgument, "deg F must not exceed k");
  double z = 0.0, fact = 1.0;
  const auto c = F.coeffs();
  for (std::size_t l = 0; l < c.size(); ++l) {
    if (l > 0) fact *= static_cast<double>(l);
    z += fact * c[l] * g.theta[l];
  }
  return {g.x, g.theta[0], z};
}

std::pair<double, double> pr(const MagneticPoint& m) { return {m.x, m.y}; }

MagneticPoint MagneticTrajectory::point(std::size_t i) const {
  const DVec& s = path.states[i];
  return {s[0], s[2], s[3]};
}

MagneticPoint MagneticTrajectory::at(double t) const {
  const DVec s = path.at(t);
  return {s[0], s[2], s[3]};
}

double MagneticTrajectory::speed_residual() const {
  double worst = 0.0;
  for (double t : path.times) {
    const double dx = path.derivative(t, 0), dy = path.derivative(t, 2);
    worst = std::max(worst, std::abs(dx * dx + dy * dy - 1.0));
  }
  return worst;
}

MagneticTrajectory::MomentumCheck MagneticTrajectory::recover_pencil() const {
  // Least squares for y' = a + b F(x) over the samples.
  double n = 0, sf = 0, sff = 0, sy = 0, sfy = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double f = F(path.states[i][0]);
    const double yd = path.derivative(path.times[i], 2);
    n += 1;
    sf += f;
    sff += f * f;
    sy += yd;
    sfy += f * yd;
  }
  MomentumCheck m{0.0, 0.0, 0.0};
  const double det = n * sff - sf * sf;
  if (std::abs(det) <= 1e-14 * std::max(1.0, n * sff)) {
    // x (hence F) did not vary: only a + b F is identifiable.
    m.a = sy / n;
    m.b = 0.0;
  } else {
    m.b = (n * sfy - sf * sy) / det;
    m.a = (sy - m.b * sf) / n;
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double f = F(path.states[i][0]);
    m.max_dev = std::max(m.max_dev, std::abs(path.derivative(path.times[i], 2) - (m.a + m.b * f)));
  }
  return m;
}

std::vector<double> MagneticTrajectory::sample_times() const {
  std::vector<double> ts;
  if (path.tail_lo && span.lo < path.t_begin())
    for (int k = 0; k < 100; ++k) ts.push_back(span.lo + (path.t_begin() - span.lo) * k / 100.0);
  ts.insert(ts.end(), path.times.begin(), path.times.end());
  if (path.tail_hi && span.hi > path.t_end())
    for (int k = 1; k <= 100; ++k) ts.push_back(path.t_end() + (span.hi - path.t_end()) * k / 100.0);
  return ts;
}

void MagneticTrajectory::write_csv(std::ostream& os) const {
  CsvWriter csv(os, {"t", "x", "y", "z"});
  for (double t : sample_times()) {
    const MagneticPoint p = at(t);
    csv.row({t, p.x, p.y, p.z});
  }
}

MagneticTrajectory integrate_magnetic_p(const Polynomial& F, double a, double b, const MagneticPoint& start,
                                        double p0, Interval t_span, double tol) {
  const Polynomial G = a + b * F;
  const double g0 = G(start.x);
  if (std::abs(p0 * p0 + g0 * g0 - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "start momentum is not on the energy level p^2 + G^2 = 1");

  FlowSpec spec;
  spec.G = G;
  spec.extra = 2;
  spec.extra_rhs = [F, G](double x, double, double* out) {
    const double g = G(x);
    out[0] = g;
    out[1] = g * F(x);
  };
  spec.step_defect = [F](const FlowStep& st) {
    const double a0 = st.t0, a1 = st.t1();
    const double dz = st.component(a1, 3) - st.component(a0, 3);
    auto rate = [&](double t) { return F(st.component(t, 0)) * st.derivative(t, 2); };
    return std::abs(dz - gauss5(rate, a0, a1));
  };

  MagneticTrajectory out;
  out.F = F;
  out.a = a;
  out.b = b;
  out.G = G;
  if (G.is_constant()) {
    out.cls = GeodesicClass::Line;
  } else if (auto h = hill_interval_containing(G, start.x)) {
    out.hill = h;
    const bool at_equilibrium = std::abs(p0) == 0.0 && is_critical_point(G, start.x);
    out.cls = at_equilibrium ? GeodesicClass::Line : classify(G, *h);
  }
  out.span = t_span;
  out.path = run_flow(spec, {start.x, p0, start.y, start.z}, t_span, tol);
  return out;
}

MagneticTrajectory integrate_magnetic(const Polynomial& F, double a, double b, const MagneticPoint& start,
                                      double p_sign, Interval t_span, double tol) {
  const double g = a + b * F(start.x);
  if (std::abs(g) > 1.0 + 1e-12) throw Error(ErrorCode::InvalidArgument, "|a + b F(x)| > 1 at the start");
  const double p0 = (p_sign < 0 ? -1.0 : 1.0) * std::sqrt(std::max(0.0, (1.0 - g) * (1.0 + g)));
  return integrate_magnetic_p(F, a, b, start, p0, t_span, tol);
}

JetTrajectory lift_to_jet(const Polynomial& F, const MagneticTrajectory& c, const Polynomial& G,
                          const JetPoint& start, double tol) {
  const MagneticPoint m = project_pi_F(F, start);
  const MagneticPoint c0 = c.at(0.0);
  const double d = std::max({std::abs(m.x - c0.x), std::abs(m.y - c0.y), std::abs(m.z - c0.z)});
  if (d > 1e-9) throw Error(ErrorCode::StartMismatch, "start does not project to the curve's start");
  const double p0 = c.p_at(0.0);
  const double g0 = G(c0.x);
  if (std::abs(p0 * p0 + g0 * g0 - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidArgument, "G does not match the curve's pencil");
  // Re-normalize p on G's energy level to absorb rounding in the recorded state.
  const double p = std::copysign(std::sqrt(std::max(0.0, (1.0 - g0) * (1.0 + g0))), p0);
  JetPoint s = start;
  s.x = c0.x;
  return integrate_jet_from(G, s, c0.x, p, {c.path.t_begin(), c.path.t_end()}, tol);
}

MagneticTrajectory abnormal_curve(const Polynomial& F, double x_star, const MagneticPoint& start,
                                  Interval t_span) {
  if (!is_critical_point(F, x_star)) throw Error(ErrorCode::NotCriticalPoint, "x* is not a critical point of F");
  return integrate_magnetic_p(F, 1.0, 0.0, {x_star, start.y, start.z}, 0.0, t_span);
}

double cut_time_bound(const Polynomial& F, double a, double b, const HillInterval& I, double tol) {
  const Polynomial G = a + b * F;
  if (G.is_constant() || classify(G, I) != GeodesicClass::XPeriodic)
    throw Error(ErrorCode::NotPeriodic, "cut-time bound needs an x-periodic pencil");
  const double L = period_report(F, a, b, I, tol).L.value;
  return (F.is_even(1e-12) && I.contains(0.0)) ? 0.5 * L : L;
}

namespace {

HillInterval symmetric_hill(const Polynomial& F, double a, double b, double x) {
  if (!F.is_even(1e-12)) throw Error(ErrorCode::NotSymmetric, "F is not even");
  const Polynomial G = a + b * F;
  auto h = G.is_constant() ? std::nullopt : hill_interval_containing(G, x);
  if (!h) throw Error(ErrorCode::NotSymmetric, "no compact hill interval through the start");
  if (std::abs(h->lo + h->hi) > 1e-9 * (1.0 + std::abs(h->hi)))
    throw Error(ErrorCode::NotSymmetric, "hill interval is not symmetric about 0");
  return *h;
}

}  // namespace

MagneticTrajectory maxwell_partner(const Polynomial& F, double a, double b, const MagneticPoint& start,
                                   double p_sign, Interval t_span, double tol) {
  symmetric_hill(F, a, b, start.x);
  return integrate_magnetic(F, a, b, {-start.x, start.y, start.z}, -p_sign, t_span, tol);
}

MaxwellWitness maxwell_witness(const Polynomial& F, double a, double b, const MagneticPoint& start, double tol) {
  if (start.x != 0.0) throw Error(ErrorCode::InvalidArgument, "witness starts on x = 0");
  const HillInterval h = symmetric_hill(F, a, b, 0.0);
  MaxwellWitness w;
  w.T = 0.5 * period_report(F, a, b, h, tol).L.value;
  w.first = integrate_magnetic(F, a, b, start, 1.0, {0.0, w.T}, tol);
  w.second = maxwell_partner(F, a, b, start, 1.0, {0.0, w.T}, tol);
  w.end_first = w.first.at(w.T);
  w.end_second = w.second.at(w.T);
  w.endpoint_mismatch = std::hypot(w.end_first.x - w.end_second.x, w.end_first.y - w.end_second.y,
                                   w.end_first.z - w.end_second.z);
  for (int i = 0; i <= 200; ++i) {
    const double t = w.T * i / 200.0;
    w.separation = std::max(w.separation, std::abs(w.first.at(t).x - w.second.at(t).x));
  }
  return w;
}

}  // namespace jetgeo
