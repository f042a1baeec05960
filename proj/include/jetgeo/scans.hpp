#pragma once

// Theta_2 along one-parameter slices of a pencil.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetgeo/poly.hpp"
#include "jetgeo/reduced_flow.hpp"

namespace jetgeo {

struct ScanRow {
  double s = 0.0;
  double theta2 = 0.0;
  double err = 0.0;
};

struct ScanReport {
  std::string family;
  std::vector<ScanRow> rows;
  bool strictly_increasing = false;
  bool all_negative = false;
  /// Admissible parameter window and how it was obtained.
  Interval window;
  std::vector<std::string> notes;
  /// Homoclinic families only: slope of log|theta2| against log s, the
  /// substitution value -(2n+1)/(2n) and the alternative (n+1)/(2n) scaling.
  std::optional<double> fitted_exponent, oracle_exponent, alternative_exponent;

  /// CSV with header s,theta2,err
  void write_csv(std::ostream& os) const;
  std::string to_json() const;
};

/// Member s of a family: pencil (a, b) and a point strictly inside the hill to use.
struct FamilyMember {
  double a, b;
  double x_inside;
};
using Family = std::function<FamilyMember(double s)>;

/// Theta2 of G_s = a(s) + b(s) F over the hill through x_inside, for each s.
/// Every member's hill must classify as `expected`.
ScanReport theta2_scan(const Polynomial& F, const Family& family, const std::vector<double>& grid,
                       GeodesicClass expected, double tol = 1e-10);

/// G_s = s + (1 - s) F_d on [0, 1] for direct-type F_d; the grid has `points`
/// values spread inside the admissible window.
ScanReport theta2_scan_direct(const Polynomial& Fd, int points = 25, double tol = 1e-10);

/// G_beta = 1 - 2 beta x^(2n) = (1 - beta) + beta F_h with F_h = 1 - 2 x^(2n),
/// on the hill [0, beta^(-1/(2n))], for beta on a log grid or an explicit list.
ScanReport theta2_scan_homoclinic(int n, Interval beta_range = {0.25, 16.0}, int points = 25, double tol = 1e-10);
ScanReport theta2_scan_homoclinic(int n, const std::vector<double>& betas, double tol = 1e-10);

/// Both sides of the homoclinic identity for F_h = 1 - 2 x^(2n) on [0, 1].
struct LemmaCheck {
  int n = 0;
  double theta2 = 0.0;
  double area = 0.0;          // int_0^1 sqrt(1 - F_h^2)
  double rhs_stated = 0.0;    // -(2/(2n-1)) area
  double rhs_derived = 0.0;   // -(1/n) area
};
LemmaCheck homoclinic_identity(int n, double tol = 1e-12);

std::vector<double> linspace(double lo, double hi, int points);
std::vector<double> logspace(double lo, double hi, int points);

}  // namespace jetgeo
