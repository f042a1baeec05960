#pragma once

// Desk-scale experiments: shooting between two points of R^3_F, the odd
// homoclinic counterexample, sign times and figure data.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jetgeo/errors.hpp"
#include "jetgeo/magnetic.hpp"
#include "jetgeo/periods.hpp"

namespace jetgeo {

// ---- geodesic segments of the F-generated curve ----------------------------

/// The geodesic of the pencil (0, 1) through (x0, 0, 0) at t = 0, sampled at
/// t = -n and t = n.
std::pair<MagneticPoint, MagneticPoint> geodesic_endpoints(const Polynomial& F, double x0, double n,
                                                           double p_sign = 1.0, double tol = 1e-10);

/// For F with a homoclinic hill I (one critical end with F = 1, one regular
/// end x_r): the segment c([-n, n]) of the geodesic through (x_r, 0, 0).
/// x_n is where c sits at t = +-n; cost is over the travel x_n -> x_r -> x_n.
struct HomoclinicSegment {
  double n = 0.0;
  double x_n = 0.0;
  CostReport cost;
};
HomoclinicSegment homoclinic_segment(const Polynomial& F, const HillInterval& I, double n, double tol = 1e-10);

// ---- shooting ---------------------------------------------------------------

struct ConnectConfig {
  int grid = 41;                 // nodes per axis of the (G(x_start), b) grid
  double b_max = 0.0;            // 0: derived from F near the endpoints
  double max_T = 0.0;            // horizon for non-periodic pencils; 0: derived
  double match_tol = 1e-6;
  int refine_starts = 24;
  std::size_t max_evals = 2500;  // per local refinement
  double simplex_diameter = 1e-10;
  double jitter = 0.25;          // random offset of grid nodes, in grid steps
  std::uint64_t seed = 1;
  unsigned threads = 0;
  double tol = 1e-10;            // ODE tolerance
};

struct ConnectResult {
  double a = 0.0, b = 0.0;
  double p_sign = 1.0;
  double T = 0.0;
  double endpoint_residual = 0.0;
  double length = 0.0;           // = T (unit speed)
  double cut_bound = 0.0;        // cut-time bound, +inf if not x-periodic
  bool abnormal = false;
  GeodesicClass cls = GeodesicClass::Line;
  MagneticTrajectory trajectory;
};

struct ConnectReport {
  std::optional<ConnectResult> best;   // shortest accepted candidate
  std::vector<ConnectResult> ranked;   // accepted by T, then the rest by residual
  std::size_t accepted = 0;
  std::size_t evaluations = 0;
  /// Set to NoCandidate when no residual met the tolerance; `ranked` then
  /// holds the best-effort list.
  std::optional<ErrorCode> error;

  std::string to_json() const;
};

ConnectReport connect(const Polynomial& F, const MagneticPoint& start, const MagneticPoint& target,
                      const ConnectConfig& cfg = {});

// ---- odd homoclinic counterexample -------------------------------------------

struct CounterexampleReport {
  double n = 0.0;
  double x_n = 0.0;
  double eps_n = 0.0;
  double delta_n = 0.0;
  double T1 = 0.0, T2 = 0.0, T3 = 0.0;
  bool verdict = false;          // T3 < 2n
  double delta_y = 0.0, delta_z = 0.0, delta_t = 0.0;
  double cost_t = 0.0, cost_y = 0.0;
  double gap = 0.0;              // 2n - T3, from cost_t - 2 (delta_n + x_n)
  // checks
  double dz_identity_error = 0.0;     // |dz - (1 + eps) dy| / max(1, dy)
  double F_identity_error = 0.0;      // |F(-delta) - (1 + eps)|
  double T3_identity_error = 0.0;     // |T3 - (dy + 2(delta + x_n))| / max(1, T3)
  double time_map_error = 0.0;        // |delta_t - 2n| / (2n)
  double piece_residual[3] = {0.0, 0.0, 0.0};  // |dz - F dy| per piece
  double endpoint_error = 0.0;        // assembled path end vs c(n)
  double literal_piece2_residual = 0.0;  // |dz - F dy| if z were held fixed on piece 2
  std::optional<double> ode_endpoint_error;  // c(n) by integration vs quadrature, small n only

  std::string to_json() const;
};

std::vector<double> default_counterexample_grid();

/// F must be 1 - 2 x^(2m+1) with m >= 1 (NotOdd otherwise).
std::vector<CounterexampleReport> counterexample_report(const Polynomial& F, const std::vector<double>& n_grid,
                                                        double tol = 1e-10);
std::vector<CounterexampleReport> counterexample_report(int m, const std::vector<double>& n_grid,
                                                        double tol = 1e-10);
void write_counterexample_csv(std::ostream& os, const std::vector<CounterexampleReport>& reports);

// ---- sign time ----------------------------------------------------------------

struct SignTimeReport {
  GeodesicClass cls = GeodesicClass::Line;
  double T_star = 0.0;            // max(T_plus, T_minus)
  double T_plus = 0.0;            // y(t) > 0 on (T_plus, horizon_plus]
  double T_minus = 0.0;           // y(-t) < 0 on (T_minus, horizon_minus]
  double horizon_plus = 0.0, horizon_minus = 0.0;
  bool certified = false;         // both signs hold at the horizons
  std::optional<double> T_cost;   // homoclinic: Cost_y(c,[-t,t]) < 0 on (T_cost, horizon]

  std::string to_json() const;
};

/// NotApplicable unless the geodesic is homoclinic or direct-type.
SignTimeReport sign_time(const Polynomial& F, double a, double b, const MagneticPoint& start, double p_sign = 1.0,
                         double T_max = 50.0, double tol = 1e-10);

// ---- figure data ----------------------------------------------------------------

enum class FigureKind { XPeriodic, Homoclinic, TurnBack, DirectType, MinimizerSequence };
FigureKind parse_figure_kind(const std::string& s);
std::string to_string(FigureKind k);

struct FigureParams {
  std::optional<Polynomial> F;   // default per kind
  std::optional<double> x0;      // start abscissa, default per kind
  double half_span = 0.0;        // 0: default per kind
  std::vector<double> ns{2, 3, 4};
  bool svg = true;
  ConnectConfig connect;
};

/// Writes <kind>.csv (and <kind>.svg) into out_dir; returns the files written.
std::vector<std::filesystem::path> figure_data(FigureKind kind, const FigureParams& params,
                                               const std::filesystem::path& out_dir);

}  // namespace jetgeo
