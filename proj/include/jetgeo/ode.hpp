#pragma once

// Dormand-Prince 5(4) with the Hairer continuous extension of order 4.
// State is any indexable container of doubles (std::array, std::vector).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>

#include <boost/math/tools/roots.hpp>

namespace jetgeo::ode {

struct Options {
  double rtol = 1e-10;
  double atol = 1e-14;
  double h_init = 0.0;  // 0 picks a starting step automatically
  double h_max = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 2'000'000;
};

enum class Status { Completed, Stopped, StepBudget, StepUnderflow };

template <class State>
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  State r1, r2, r3, r4, r5;

  double t1() const { return t0 + h; }

  double component(double t, std::size_t i) const {
    const double th = (t - t0) / h, th1 = 1.0 - th;
    return r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
  }

  double derivative(double t, std::size_t i) const {
    const double th = (t - t0) / h, th1 = 1.0 - th;
    const double q = r3[i] + th * (r4[i] + th1 * r5[i]);
    const double dq = r4[i] + (th1 - th) * r5[i];
    const double p = r2[i] + th1 * q;
    const double dp = -q + th1 * dq;
    return (p + th * dp) / h;
  }

  State eval(double t) const {
    State y = r1;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = component(t, i);
    return y;
  }
};

namespace detail {

struct Tableau {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                          a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

template <class State>
double scaled_norm(const State& v, const State& a, const State& b, const Options& o) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double sc = o.atol + o.rtol * std::max(std::abs(a[i]), std::abs(b[i]));
    s += (v[i] / sc) * (v[i] / sc);
  }
  return std::sqrt(s / static_cast<double>(v.size()));
}

template <class State, class Rhs>
double initial_step(Rhs& f, double t, const State& y, const State& f0, double dir, const Options& o) {
  const double d0 = scaled_norm(y, y, y, o);
  const double d1 = scaled_norm(f0, y, y, o);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, o.h_max);
  State y1 = y;
  for (std::size_t i = 0; i < y.size(); ++i) y1[i] = y[i] + dir * h0 * f0[i];
  State f1 = y;
  f(t + dir * h0, y1, f1);
  State df = y;
  for (std::size_t i = 0; i < y.size(); ++i) df[i] = f1[i] - f0[i];
  const double d2 = scaled_norm(df, y, y, o) / h0;
  const double m = std::max(d1, d2);
  const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 0.2);
  return std::min({100.0 * h0, h1, o.h_max});
}

}  // namespace detail

/// Integrates dy/dt = f(t, y) from t0 to t1 (either direction). After every
/// accepted step the observer is called with the step's dense output and the
/// new state; it may adjust the state in place (projection) and returns false
/// to stop early.
template <class State, class Rhs, class Observer>
Status integrate(Rhs&& f, State y, double t0, double t1, const Options& o, Observer&& observe) {
  using T = detail::Tableau;
  if (t1 == t0) return Status::Completed;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const std::size_t n = y.size();

  State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, yt = y, y5 = y, err = y;
  f(t0, y, k1);
  double h = o.h_init > 0.0 ? std::min(o.h_init, o.h_max) : detail::initial_step(f, t0, y, k1, dir, o);
  double t = t0;
  bool rejected = false;
  DenseStep<State> step{0.0, 0.0, y, y, y, y, y};

  for (std::size_t count = 0; count < o.max_steps; ++count) {
    const double remaining = std::abs(t1 - t);
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) return Status::StepUnderflow;
    const double hs = dir * h;

    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + hs * T::a21 * k1[i];
    f(t + T::c2 * hs, yt, k2);
    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + hs * (T::a31 * k1[i] + T::a32 * k2[i]);
    f(t + T::c3 * hs, yt, k3);
    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + hs * (T::a41 * k1[i] + T::a42 * k2[i] + T::a43 * k3[i]);
    f(t + T::c4 * hs, yt, k4);
    for (std::size_t i = 0; i < n; ++i)
      yt[i] = y[i] + hs * (T::a51 * k1[i] + T::a52 * k2[i] + T::a53 * k3[i] + T::a54 * k4[i]);
    f(t + T::c5 * hs, yt, k5);
    for (std::size_t i = 0; i < n; ++i)
      yt[i] = y[i] + hs * (T::a61 * k1[i] + T::a62 * k2[i] + T::a63 * k3[i] + T::a64 * k4[i] + T::a65 * k5[i]);
    const double t_new = last ? t1 : t + hs;
    f(t + hs, yt, k6);
    for (std::size_t i = 0; i < n; ++i)
      y5[i] = y[i] + hs * (T::a71 * k1[i] + T::a73 * k3[i] + T::a74 * k4[i] + T::a75 * k5[i] + T::a76 * k6[i]);
    f(t + hs, y5, k7);
    for (std::size_t i = 0; i < n; ++i)
      err[i] = hs * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] + T::e6 * k6[i] + T::e7 * k7[i]);
    const double e = detail::scaled_norm(err, y, y5, o);

    if (!(e <= 1.0)) {
      const double fac = std::isfinite(e) ? std::max(0.2, 0.9 * std::pow(e, -0.2)) : 0.2;
      h *= std::min(1.0, fac);
      rejected = true;
      continue;
    }

    step.t0 = t;
    step.h = t_new - t;
    for (std::size_t i = 0; i < n; ++i) {
      const double ydiff = y5[i] - y[i];
      const double bspl = hs * k1[i] - ydiff;
      step.r1[i] = y[i];
      step.r2[i] = ydiff;
      step.r3[i] = bspl;
      step.r4[i] = ydiff - hs * k7[i] - bspl;
      step.r5[i] = hs * (T::d1 * k1[i] + T::d3 * k3[i] + T::d4 * k4[i] + T::d5 * k5[i] + T::d6 * k6[i] +
                         T::d7 * k7[i]);
    }

    State accepted = y5;
    const bool go_on = observe(static_cast<const DenseStep<State>&>(step), accepted);
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) changed = changed || accepted[i] != y5[i];
    y = accepted;
    t = t_new;
    if (changed) {
      f(t, y, k1);
    } else {
      k1 = k7;
    }
    if (!go_on) return Status::Stopped;
    if (last) return Status::Completed;

    double fac = e == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(e, -0.2)));
    if (rejected) fac = std::min(fac, 1.0);
    rejected = false;
    h = std::min(h * fac, o.h_max);
  }
  return Status::StepBudget;
}

/// Root of g on the step, located on the dense output to within t_tol, if g
/// changes sign between the step ends.
template <class State, class G>
std::optional<double> locate_event(const DenseStep<State>& step, G&& g, double t_tol = 1e-12) {
  double a = step.t0, b = step.t1();
  if (a > b) std::swap(a, b);
  const double ga = g(a), gb = g(b);
  if (ga == 0.0) return a;
  if (gb == 0.0) return b;
  if ((ga > 0.0) == (gb > 0.0)) return std::nullopt;
  std::uintmax_t iters = 200;
  auto tol = [t_tol](double lo, double hi) { return std::abs(hi - lo) <= t_tol; };
  const auto r = boost::math::tools::toms748_solve(g, a, b, ga, gb, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace jetgeo::ode
