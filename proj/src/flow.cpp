#include "jetgeo/flow.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "jetgeo/errors.hpp"

namespace jetgeo {

double gauss5(const std::function<double(double)>& g, double a, double b) {
  return boost::math::quadrature::gauss<double, 5>::integrate(g, a, b);
}

std::vector<double> critical_equilibria(const Polynomial& G) {
  std::vector<double> out;
  if (G.is_constant()) return out;
  for (double v : {1.0, -1.0}) {
    const Polynomial P = G - Polynomial::constant(v);
    const double R = root_bound(P) + 1.0;
    for (const Root& r : real_roots(P, {-R, R}))
      if (r.multiplicity >= 2) out.push_back(r.x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double StallTail::s_after(double tau) const {
  if (s0 == 0.0) return 0.0;
  const double a = std::abs(s0);
  double r;
  if (m == 2) {
    r = a * std::exp(-k * tau);
  } else {
    const double e = 0.5 * m - 1.0;
    r = std::pow(std::pow(a, -e) + e * k * tau, -1.0 / e);
  }
  return std::copysign(r, s0);
}

namespace {

// momentum on the energy level at offset s, pointing towards c in the tail's time
double tail_momentum(const StallTail& tl, double s) {
  if (s == 0.0) return 0.0;
  const double h = std::max(0.0, tl.H(s));
  return -tl.dir * std::copysign(std::sqrt(h * (2.0 - h)), s);
}

constexpr double kGaussX[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                               0.9061798459386640};
constexpr double kGaussW[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};

}  // namespace

DVec StallTail::state_after(double tau) const {
  DVec out = end_state;
  const double s = s_after(tau);
  out[0] = c + s;
  out[1] = tail_momentum(*this, s);
  const std::size_t ne = end_state.size() - 2;
  if (ne == 0 || tau <= 0.0) return out;
  std::vector<double> r(ne);
  auto add_piece = [&](double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int q = 0; q < 5; ++q) {
      const double sq = s_after(mid + half * kGaussX[q]);
      extra_rhs(c + sq, tail_momentum(*this, sq), r.data());
      for (std::size_t i = 0; i < ne; ++i) out[2 + i] += dir * half * kGaussW[q] * r[i];
    }
  };
  if (s0 == 0.0) {
    add_piece(0.0, tau);
    return out;
  }
  // the rates settle on the scale over which s halves; pieces grow geometrically
  double scale = 1.0 / k;
  if (m > 2) {
    const double e = 0.5 * m - 1.0;
    scale = std::pow(std::abs(s0), -e) / (e * k);
  }
  double pos = 0.0, w = 0.25 * scale;
  while (pos < tau) {
    const double b = std::min(tau, pos + w);
    add_piece(pos, b);
    pos = b;
    w *= 1.5;
  }
  return out;
}

double StallTail::rate_after(double tau, std::size_t i) const {
  const double s = s_after(tau), x = c + s, p = tail_momentum(*this, s);
  if (i == 0) return p;
  if (i == 1) return -G(x) * G.eval_deriv(x, 1);
  std::vector<double> r(end_state.size() - 2);
  extra_rhs(x, p, r.data());
  return r[i - 2];
}

const FlowStep& FlowPath::step_at(double t) const {
  if (steps.empty()) throw Error(ErrorCode::InvalidArgument, "path has no steps");
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t i = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
  return steps[std::min(i, steps.size() - 1)];
}

DVec FlowPath::at(double t) const {
  if (tail_hi && t > t_end()) return tail_hi->state_after(t - t_end());
  if (tail_lo && t < t_begin()) return tail_lo->state_after(t_begin() - t);
  if (steps.empty()) return states.front();
  t = std::clamp(t, t_begin(), t_end());
  return step_at(t).eval(t);
}

double FlowPath::component(double t, std::size_t i) const {
  if ((tail_hi && t > t_end()) || (tail_lo && t < t_begin())) return at(t)[i];
  if (steps.empty()) return states.front()[i];
  t = std::clamp(t, t_begin(), t_end());
  return step_at(t).component(t, i);
}

double FlowPath::derivative(double t, std::size_t i) const {
  if (tail_hi && t > t_end()) return tail_hi->rate_after(t - t_end(), i);
  if (tail_lo && t < t_begin()) return tail_lo->rate_after(t_begin() - t, i);
  if (steps.empty()) return 0.0;
  t = std::clamp(t, t_begin(), t_end());
  return step_at(t).derivative(t, i);
}

namespace {

struct HalfRun {
  std::vector<double> times;
  std::vector<DVec> states;
  std::vector<FlowStep> steps;
  ode::Status status = ode::Status::Completed;
  bool stall = false;
  double stall_time = 0.0;
  std::optional<StallTail> tail;
  double energy = 0.0;
  double defect = 0.0;
};

double energy_of(const Polynomial& G, double x, double p) {
  const double g = G(x);
  return p * p + g * g - 1.0;
}

void project_energy(const Polynomial& G, const Polynomial& dG, DVec& y) {
  for (int it = 0; it < 2; ++it) {
    const double g = G(y[0]);
    const double r = y[1] * y[1] + g * g - 1.0;
    if (r == 0.0) return;
    const double gx = 2.0 * g * dG(y[0]), gp = 2.0 * y[1];
    const double n2 = gx * gx + gp * gp;
    if (n2 < 1e-20) return;
    const double d = r / n2;
    if (std::abs(d) * std::sqrt(n2) > 1e-6) return;
    y[0] -= d * gx;
    y[1] -= d * gp;
  }
}

struct Equilibrium {
  double c = 0.0;
  int m = 2;
  double k = 0.0;
  /// stall radius: c_m r^m = stall_level
  double r = 0.0;
  Polynomial H;
};

std::vector<Equilibrium> equilibria(const Polynomial& G, double level) {
  std::vector<Equilibrium> out;
  for (double c : critical_equilibria(G)) {
    const double sigma = G(c) > 0.0 ? 1.0 : -1.0;
    const Polynomial H = Polynomial::constant(1.0) - sigma * G;
    Equilibrium e;
    e.c = c;
    e.m = std::max(2, vanishing_order(H, c));
    e.H = H.taylor_shift(c).with_zero_low_order(e.m);
    double cm = std::abs(e.H[e.m]);
    if (!(cm > 0.0)) cm = 1.0;
    e.k = std::sqrt(2.0 * cm);
    e.r = std::pow(level / cm, 1.0 / e.m);
    out.push_back(std::move(e));
  }
  return out;
}

HalfRun run_half(const FlowSpec& spec, const Polynomial& dG, const std::vector<Equilibrium>& eq, const DVec& start,
                 double t_end, double tol) {
  HalfRun out;
  out.times.push_back(0.0);
  out.states.push_back(start);
  if (t_end == 0.0) return out;
  const double dir = t_end > 0.0 ? 1.0 : -1.0;
  const Polynomial& G = spec.G;

  auto rhs = [&](double, const DVec& y, DVec& dy) {
    const double x = y[0], p = y[1];
    dy[0] = p;
    dy[1] = -G(x) * dG(x);
    if (spec.extra > 0) spec.extra_rhs(x, p, dy.data() + 2);
  };

  ode::Options o;
  o.rtol = tol;
  o.atol = tol * 1e-4;
  o.max_steps = spec.max_steps;

  auto stall_at = [&](const Equilibrium& e, double t, const DVec& y) {
    StallTail tl;
    tl.t_end = t;
    tl.dir = dir;
    tl.c = e.c;
    tl.s0 = y[0] - e.c;
    tl.m = e.m;
    tl.k = e.k;
    tl.end_state = y;
    tl.G = G;
    tl.H = e.H;
    tl.extra_rhs = spec.extra_rhs;
    out.tail = std::move(tl);
    out.stall = true;
    out.stall_time = t;
  };

  // Next to a critical equilibrium 1 - G^2 is lost to rounding long before
  // the state gets there, and a step can slip across c onto the next loop.
  // The approach is handed to the asymptotic tail instead.
  auto observe = [&](const FlowStep& st, DVec& y) {
    project_energy(G, dG, y);
    for (const Equilibrium& e : eq) {
      const double sp = out.states.back()[0] - e.c, sn = y[0] - e.c;
      if (sp * sn < 0.0 || (sn == 0.0 && sp == 0.0)) {
        stall_at(e, out.times.back(), out.states.back());
        return false;
      }
    }
    out.times.push_back(st.t1());
    out.states.push_back(y);
    out.steps.push_back(st);
    out.energy = std::max(out.energy, std::abs(energy_of(G, y[0], y[1])));
    if (spec.step_defect) out.defect = std::max(out.defect, spec.step_defect(st) / std::abs(st.h));
    for (const Equilibrium& e : eq) {
      const double s = y[0] - e.c;
      if (std::abs(s) <= e.r && s * y[1] * dir <= 0.0) {
        stall_at(e, st.t1(), y);
        return false;
      }
    }
    if (spec.on_step && !spec.on_step(st, y, dir)) return false;
    return true;
  };
  out.status = ode::integrate(rhs, start, 0.0, t_end, o, observe);
  return out;
}

}  // namespace

FlowPath run_flow(const FlowSpec& spec, const DVec& start, Interval t_span, double tol) {
  if (!(t_span.lo <= 0.0 && 0.0 <= t_span.hi))
    throw Error(ErrorCode::InvalidArgument, "time span must contain 0, the time of the start state");
  if (start.size() != 2 + spec.extra) throw Error(ErrorCode::InvalidArgument, "start state has the wrong size");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const Polynomial dG = spec.G.derivative();
  const std::vector<Equilibrium> eq = equilibria(spec.G, spec.stall_level);

  HalfRun fwd = run_half(spec, dG, eq, start, t_span.hi, tol);
  HalfRun bwd = run_half(spec, dG, eq, start, t_span.lo, tol);

  FlowPath path;
  for (std::size_t i = bwd.times.size(); i-- > 1;) {
    path.times.push_back(bwd.times[i]);
    path.states.push_back(bwd.states[i]);
  }
  for (std::size_t i = bwd.steps.size(); i-- > 0;) path.steps.push_back(bwd.steps[i]);
  path.times.insert(path.times.end(), fwd.times.begin(), fwd.times.end());
  path.states.insert(path.states.end(), fwd.states.begin(), fwd.states.end());
  path.steps.insert(path.steps.end(), fwd.steps.begin(), fwd.steps.end());

  path.energy_residual = std::max({fwd.energy, bwd.energy, std::abs(energy_of(spec.G, start[0], start[1]))});
  path.horizontality_residual = std::max(fwd.defect, bwd.defect);
  path.separatrix_stall = fwd.stall || bwd.stall;
  path.tail_hi = fwd.tail;
  path.tail_lo = bwd.tail;
  if (fwd.stall) path.stall_time = fwd.stall_time;
  else if (bwd.stall) path.stall_time = bwd.stall_time;
  path.status = fwd.status != ode::Status::Completed ? fwd.status : bwd.status;
  return path;
}

}  // namespace jetgeo
