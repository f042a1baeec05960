#pragma once

// The jet space J^k(R,R) with coordinates (x, theta_0..theta_k) and frame
//   X = d/dx,  Y = sum_i x^i / i! d/dtheta_i.

#include <iosfwd>
#include <vector>

#include "jetgeo/flow.hpp"
#include "jetgeo/poly.hpp"

namespace jetgeo {

struct JetPoint {
  double x = 0.0;
  std::vector<double> theta;  // theta_0 .. theta_k

  static JetPoint identity(int k) { return {0.0, std::vector<double>(static_cast<std::size_t>(k) + 1, 0.0)}; }
  int k() const { return static_cast<int>(theta.size()) - 1; }
};

/// Left-invariant group law:
///   x'' = g.x + h.x,  theta''_i = g.theta_i + sum_{j<=i} g.x^(i-j)/(i-j)! h.theta_j
JetPoint group_mul(const JetPoint& g, const JetPoint& h);
JetPoint group_inverse(const JetPoint& g);
/// x -> u x, theta_i -> u^(i+1) theta_i
JetPoint carnot_dilate(const JetPoint& g, double u);
/// Negates theta_0 only.
JetPoint reflect_theta0(const JetPoint& g);
/// Negates every theta_i; carries horizontal curves of F to those of -F.
JetPoint reflect_all_theta(const JetPoint& g);
std::pair<double, double> project_plane(const JetPoint& g);

/// X and Y at g as tangent vectors in coordinates (x, theta_0..theta_k).
std::vector<double> frame_X(const JetPoint& g);
std::vector<double> frame_Y(const JetPoint& g);

struct JetTrajectory {
  Polynomial F;
  HillInterval I;
  int k = 0;
  /// Curve x-coordinate minus the reduced variable (start.x - x_start).
  double x_offset = 0.0;
  /// State layout [x_reduced, p, theta_0..theta_k].
  FlowPath path;

  std::size_t size() const { return path.size(); }
  const std::vector<double>& times() const { return path.times; }
  JetPoint point(std::size_t i) const;
  JetPoint at(double t) const;
  double horizontality_residual() const { return path.horizontality_residual; }
  double energy_residual() const { return path.energy_residual; }

  /// CSV with header t,x,theta0,...,thetak
  void write_csv(std::ostream& os) const;
};

/// Geodesic generated by F: the reduced flow of F from (x_start, p_sign
/// sqrt(1 - F(x_start)^2)) drives gamma' = x' X + F(x) Y from gamma(0) = start.
/// When start.x != x_start the curve is the left translate by (start.x -
/// x_start, 0, ..., 0) of the geodesic through (x_start, 0, ..., 0).
JetTrajectory integrate_jet(const Polynomial& F, const HillInterval& I, const JetPoint& start, double x_start,
                            double p_sign, Interval t_span, double tol = 1e-10);

/// Same with an explicit reduced start (x_start, p0) on the energy level.
JetTrajectory integrate_jet_from(const Polynomial& F, const JetPoint& start, double x_start, double p0,
                                 Interval t_span, double tol = 1e-10);

}  // namespace jetgeo
