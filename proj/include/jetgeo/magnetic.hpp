#pragma once

// Magnetic space R^3_F: coordinates (x, y, z), horizontal curves satisfy
// dz = F(x) dy, metric dx^2 + dy^2.

#include <iosfwd>
#include <optional>
#include <utility>

#include "jetgeo/flow.hpp"
#include "jetgeo/jet_group.hpp"
#include "jetgeo/poly.hpp"
#include "jetgeo/reduced_flow.hpp"

namespace jetgeo {

struct MagneticPoint {
  double x = 0.0, y = 0.0, z = 0.0;
};

/// (x, theta_0, sum_l l! a_l theta_l) for F = sum a_l x^l; needs deg F <= k.
MagneticPoint project_pi_F(const Polynomial& F, const JetPoint& g);
/// (x, y, z) -> (x, y)
std::pair<double, double> pr(const MagneticPoint& m);

struct MagneticTrajectory {
  Polynomial F;
  double a = 0.0, b = 1.0;  // pencil, G = a + b F
  Polynomial G;
  GeodesicClass cls = GeodesicClass::Line;
  std::optional<HillInterval> hill;
  /// State layout [x, p, y, z].
  FlowPath path;
  /// Requested time span; path may end early at a stall.
  Interval span;

  std::size_t size() const { return path.size(); }
  const std::vector<double>& times() const { return path.times; }
  MagneticPoint point(std::size_t i) const;
  /// Dense evaluation; beyond a stalled end the asymptotic tail is followed.
  MagneticPoint at(double t) const;
  double p_at(double t) const { return path.component(t, 1); }
  double horizontality_residual() const { return path.horizontality_residual; }
  double energy_residual() const { return path.energy_residual; }
  /// max over samples of |x'^2 + y'^2 - 1| from the dense output
  double speed_residual() const;
  /// (a, b) recovered from y' = a + b F(x) by least squares over samples, and
  /// the largest deviation of y' from the fitted pencil.
  struct MomentumCheck {
    double a, b, max_dev;
  };
  MomentumCheck recover_pencil() const;

  /// Node times of the path, extended over the requested span with samples
  /// of the asymptotic tail where an end stalled.
  std::vector<double> sample_times() const;
  /// CSV with header t,x,y,z over sample_times()
  void write_csv(std::ostream& os) const;
};

/// Reduced flow of G = a + b F from (start.x, p_sign sqrt(1 - G^2)), with
/// y' = G(x), z' = G(x) F(x). The start sits at t = 0; t_span must contain 0.
MagneticTrajectory integrate_magnetic(const Polynomial& F, double a, double b, const MagneticPoint& start,
                                      double p_sign, Interval t_span, double tol = 1e-10);

/// Same with an explicit momentum p0 (on the energy level).
MagneticTrajectory integrate_magnetic_p(const Polynomial& F, double a, double b, const MagneticPoint& start,
                                        double p0, Interval t_span, double tol = 1e-10);

/// Horizontal lift with generator G of a magnetic geodesic c; start must
/// project to c(0) under pi_F.
JetTrajectory lift_to_jet(const Polynomial& F, const MagneticTrajectory& c, const Polynomial& G,
                          const JetPoint& start, double tol = 1e-10);

/// t -> (x*, y0 + t, z0 + F(x*) t) for a critical point x* of F.
MagneticTrajectory abnormal_curve(const Polynomial& F, double x_star, const MagneticPoint& start,
                                  Interval t_span);

/// L(G, I) for x-periodic pencils, halved when F is even and I contains 0.
double cut_time_bound(const Polynomial& F, double a, double b, const HillInterval& I, double tol = 1e-10);

/// Geodesic obtained by x -> -x from the reflected start, for even F with a
/// hill symmetric about 0. The reflected start uses momentum -p.
MagneticTrajectory maxwell_partner(const Polynomial& F, double a, double b, const MagneticPoint& start,
                                   double p_sign, Interval t_span, double tol = 1e-10);

struct MaxwellWitness {
  MagneticTrajectory first, second;
  double T = 0.0;              // L / 2
  MagneticPoint end_first, end_second;
  double endpoint_mismatch = 0.0;
  double separation = 0.0;     // max |x_first - x_second| along [0, T]
};

/// Two geodesics from a point on x = 0 with opposite initial p meeting again at T = L/2.
MaxwellWitness maxwell_witness(const Polynomial& F, double a, double b, const MagneticPoint& start,
                               double tol = 1e-10);

}  // namespace jetgeo
