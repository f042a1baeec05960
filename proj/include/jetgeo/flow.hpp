#pragma once

// Shared driver for the reduced Hamiltonian flow
//   x' = p,  p' = -G(x) G'(x)
// optionally co-integrated with extra coordinates whose rates depend on (x, p).
// State layout: [x, p, extra...].

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "jetgeo/ode.hpp"
#include "jetgeo/poly.hpp"

namespace jetgeo {

using DVec = std::vector<double>;
using FlowStep = ode::DenseStep<DVec>;

/// Continuation of a path end that stalled next to a critical equilibrium c.
/// With H = 1 - |G| vanishing to order m at c, s = x - c follows the leading
/// order law |s|' = -k |s|^(m/2), k = sqrt(2 c_m); the extra coordinates are
/// integrated along it.
struct StallTail {
  double t_end = 0.0;
  /// +1 past the forward end, -1 before the backward end
  double dir = 1.0;
  double c = 0.0;
  double s0 = 0.0;
  int m = 2;
  double k = 0.0;
  DVec end_state;
  Polynomial G;
  /// s -> 1 - |G|(c + s) with the vanishing low coefficients set to zero
  Polynomial H;
  std::function<void(double x, double p, double* out)> extra_rhs;

  double s_after(double tau) const;
  /// state at time t_end + dir * tau, tau >= 0
  DVec state_after(double tau) const;
  /// d/dt of component i at t_end + dir * tau
  double rate_after(double tau, std::size_t i) const;
};

struct FlowPath {
  /// Strictly increasing; states[i] is the state at times[i].
  std::vector<double> times;
  std::vector<DVec> states;
  /// steps[i] interpolates between times[i] and times[i+1].
  std::vector<FlowStep> steps;

  ode::Status status = ode::Status::Completed;
  /// Set when the state came within the stall radius of a critical
  /// equilibrium; the path is truncated there.
  bool separatrix_stall = false;
  double stall_time = std::numeric_limits<double>::quiet_NaN();
  std::optional<StallTail> tail_lo, tail_hi;
  /// max |p^2 + G(x)^2 - 1| over samples
  double energy_residual = 0.0;
  /// max over steps of |Pfaffian defect| / |dt|
  double horizontality_residual = 0.0;

  double t_begin() const { return times.front(); }
  double t_end() const { return times.back(); }
  std::size_t size() const { return times.size(); }
  /// Dense evaluation. Past a stalled end the tail is used, otherwise t is
  /// clamped to [t_begin, t_end].
  DVec at(double t) const;
  double component(double t, std::size_t i) const;
  double derivative(double t, std::size_t i) const;
  const FlowStep& step_at(double t) const;
};

struct FlowSpec {
  Polynomial G;
  std::size_t extra = 0;
  /// rates of the extra coordinates
  std::function<void(double x, double p, double* out)> extra_rhs;
  /// |Pfaffian defect| of one accepted step (absolute, not per unit time)
  std::function<double(const FlowStep&)> step_defect;
  /// Called after each accepted step with the direction of integration
  /// (+1 forward, -1 backward); returning false stops that direction.
  std::function<bool(const FlowStep&, const DVec&, double dir)> on_step;
  /// stall once 1 - |G| drops below this next to a critical equilibrium
  double stall_level = 1e-10;
  std::size_t max_steps = 2'000'000;
};

/// Integrates from `start` placed at time 0 over t_span (which must contain 0),
/// projecting (x, p) back onto p^2 + G^2 = 1 after every step.
FlowPath run_flow(const FlowSpec& spec, const DVec& start, Interval t_span, double tol);

/// Critical equilibria of the reduced flow: x with |G(x)| = 1 and G'(x) = 0.
std::vector<double> critical_equilibria(const Polynomial& G);

/// Gauss-Legendre (5 points) integral of g(t) over [a, b].
double gauss5(const std::function<double(double)>& g, double a, double b);

}  // namespace jetgeo
