#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include <boost/math/tools/roots.hpp>

#include "json.hpp"
#include "jetgeo/experiments.hpp"
#include "jetgeo/io.hpp"

namespace jetgeo {

std::pair<MagneticPoint, MagneticPoint> geodesic_endpoints(const Polynomial& F, double x0, double n, double p_sign,
                                                           double tol) {
  const auto c = integrate_magnetic(F, 0.0, 1.0, {x0, 0.0, 0.0}, p_sign, {-n, n}, tol);
  return {c.at(-n), c.at(n)};
}

HomoclinicSegment homoclinic_segment(const Polynomial& F, const HillInterval& I, double n, double tol) {
  const bool lo_crit = I.lo_kind == EndpointKind::Critical, hi_crit = I.hi_kind == EndpointKind::Critical;
  if (lo_crit == hi_crit) throw Error(ErrorCode::InvalidArgument, "hill must have exactly one critical end");
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  const double x_r = lo_crit ? I.hi : I.lo;
  HomoclinicSegment s;
  s.n = n;
  s.x_n = invert_time_map(F, I, lo_crit, x_r, n, tol);
  s.cost = cost_over_travel(F, 0.0, 1.0, I, TravelInterval{{{s.x_n, x_r}, {x_r, s.x_n}}}, tol);
  return s;
}

// ---------------------------------------------------------------------------

std::vector<double> default_counterexample_grid() {
  return {1, 2, 3, 4, 5, 10, 20, 50, 100, 1e3, 1e4, 1e5, 1e6, 1e8, 1e10, 1e12};
}

namespace {

// 2m + 1 if F = 1 - 2 x^(2m+1) with m >= 1, else 0.
int odd_degree(const Polynomial& F) {
  const auto& c = F.coeffs();
  const int d = F.degree();
  if (d < 3 || d % 2 == 0) return 0;
  if (std::abs(c[0] - 1.0) > 1e-12 || std::abs(c[static_cast<std::size_t>(d)] + 2.0) > 1e-12) return 0;
  for (int i = 1; i < d; ++i)
    if (std::abs(c[static_cast<std::size_t>(i)]) > 1e-12) return 0;
  return d;
}

}  // namespace

std::vector<CounterexampleReport> counterexample_report(const Polynomial& F, const std::vector<double>& n_grid,
                                                        double tol) {
  const int d = odd_degree(F);
  if (d == 0) throw Error(ErrorCode::NotOdd, "F must be 1 - 2 x^(2m+1) with m >= 1");
  const HillInterval I = *hill_interval_containing(F, 0.5);
  const Polynomial Fm1 = F - Polynomial::constant(1.0);  // exact -2 x^d, keeps F - 1 free of cancellation

  std::vector<CounterexampleReport> out;
  for (double n : n_grid) {
    const HomoclinicSegment seg = homoclinic_segment(F, I, n, tol);
    CounterexampleReport r;
    r.n = n;
    r.x_n = seg.x_n;
    r.delta_t = seg.cost.delta_t;
    r.delta_y = seg.cost.delta_y;
    r.delta_z = seg.cost.delta_z;
    r.cost_t = seg.cost.cost_t;
    r.cost_y = seg.cost.cost_y;
    r.eps_n = -r.cost_y / r.delta_y;  // (dz - dy) / dy
    r.delta_n = std::pow(r.eps_n / 2.0, 1.0 / d);
    r.T1 = r.delta_n + r.x_n;
    r.T2 = r.T1 + r.delta_y;
    r.T3 = r.T2 + r.delta_n + r.x_n;
    r.gap = r.cost_t - 2.0 * (r.delta_n + r.x_n);
    r.verdict = r.gap > 0.0;

    r.dz_identity_error = std::abs((r.delta_z - r.delta_y) - r.eps_n * r.delta_y) / std::max(1.0, r.delta_y);
    r.F_identity_error = std::abs(Fm1(-r.delta_n) - r.eps_n);
    r.T3_identity_error = std::abs(r.T3 - (r.delta_y + 2.0 * (r.delta_n + r.x_n))) / std::max(1.0, r.T3);
    r.time_map_error = std::abs(r.delta_t - 2.0 * n) / (2.0 * n);

    // Assemble the three pieces from c(-n) in coordinates (x, y, w = z - y);
    // on a horizontal piece dw = (F(x) - 1) dy.
    double x = r.x_n, y = -0.5 * r.delta_y, w = 0.5 * r.cost_y;
    const double y_target = 0.5 * r.delta_y, w_target = -0.5 * r.cost_y;
    // piece 1: x_n -> -delta at fixed (y, z)
    x = -r.delta_n;
    r.piece_residual[0] = 0.0;
    // piece 2: y advances by delta_y at x = -delta with dz = F(-delta) dy
    const double dw = Fm1(x) * r.delta_y;
    r.piece_residual[1] = std::abs(dw - Fm1(x) * r.delta_y);
    r.literal_piece2_residual = std::abs(F(x) * r.delta_y);
    y += r.delta_y;
    w += dw;
    // piece 3: back to x_n
    x = r.x_n;
    r.piece_residual[2] = 0.0;
    r.endpoint_error = std::abs(y - y_target) / std::max(1.0, std::abs(y_target)) + std::abs(w - w_target);

    if (n <= 20.0) {
      const auto ends = geodesic_endpoints(F, I.hi, n, 1.0, tol);
      const MagneticPoint& e = ends.second;
      r.ode_endpoint_error = std::max({std::abs(e.x - r.x_n), std::abs(e.y - 0.5 * r.delta_y),
                                       std::abs(e.z - 0.5 * r.delta_z)});
    }
    out.push_back(r);
  }
  return out;
}

std::vector<CounterexampleReport> counterexample_report(int m, const std::vector<double>& n_grid, double tol) {
  if (m < 1) throw Error(ErrorCode::NotOdd, "m must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(2 * m + 2), 0.0);
  c[0] = 1.0;
  c.back() = -2.0;
  return counterexample_report(Polynomial(c), n_grid, tol);
}

std::string CounterexampleReport::to_json() const {
  nlohmann::json j{{"n", n},
                   {"x_n", x_n},
                   {"eps_n", eps_n},
                   {"delta_n", delta_n},
                   {"T1", T1},
                   {"T2", T2},
                   {"T3", T3},
                   {"verdict_T3_lt_2n", verdict},
                   {"gap_2n_minus_T3", gap},
                   {"delta_t", delta_t},
                   {"delta_y", delta_y},
                   {"delta_z", delta_z},
                   {"cost_t", cost_t},
                   {"cost_y", cost_y},
                   {"dz_identity_error", dz_identity_error},
                   {"F_identity_error", F_identity_error},
                   {"T3_identity_error", T3_identity_error},
                   {"time_map_error", time_map_error},
                   {"piece_residuals", {piece_residual[0], piece_residual[1], piece_residual[2]}},
                   {"endpoint_error", endpoint_error},
                   {"second_piece",
                    {{"horizontal_reading_residual", piece_residual[1]},
                     {"fixed_z_reading_residual", literal_piece2_residual}}}};
  if (ode_endpoint_error) j["ode_endpoint_error"] = *ode_endpoint_error;
  return j.dump(2);
}

void write_counterexample_csv(std::ostream& os, const std::vector<CounterexampleReport>& reports) {
  CsvWriter csv(os, {"n", "x_n", "eps_n", "delta_n", "T1", "T2", "T3", "two_n_minus_T3", "cost_t", "delta_y",
                     "verdict"});
  for (const auto& r : reports)
    csv.row({r.n, r.x_n, r.eps_n, r.delta_n, r.T1, r.T2, r.T3, r.gap, r.cost_t, r.delta_y, r.verdict ? 1.0 : 0.0});
}

// ---------------------------------------------------------------------------

namespace {

// Smallest T in [0, horizon] with h > 0 on (T, horizon], from samples refined
// by bracketing. Returns nullopt when h(horizon) <= 0.
std::optional<double> settle_time(const std::function<double(double)>& h, const std::vector<double>& samples,
                                  double horizon) {
  if (!(h(horizon) > 0.0)) return std::nullopt;
  std::size_t i = samples.size();
  while (i > 0 && h(samples[i - 1]) > 0.0) --i;
  if (i == 0) return 0.0;
  double lo = samples[i - 1], hi = i < samples.size() ? samples[i] : horizon;
  boost::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(h, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

SignTimeReport sign_time(const Polynomial& F, double a, double b, const MagneticPoint& start, double p_sign,
                         double T_max, double tol) {
  const auto c = integrate_magnetic(F, a, b, start, p_sign, {-T_max, T_max}, tol);
  if (c.cls != GeodesicClass::Homoclinic && c.cls != GeodesicClass::HeteroclinicDirectType)
    throw Error(ErrorCode::NotApplicable, "sign time needs a homoclinic or direct-type geodesic, got " +
                                              to_string(c.cls));
  SignTimeReport r;
  r.cls = c.cls;
  r.horizon_plus = c.path.tail_hi ? T_max : c.path.t_end();
  r.horizon_minus = c.path.tail_lo ? T_max : -c.path.t_begin();

  // Sample times: every step end plus midpoints, mapped to t >= 0.
  std::vector<double> plus, minus;
  for (std::size_t i = 0; i < c.path.size(); ++i) {
    const double t = c.path.times[i];
    const double tm = i + 1 < c.path.size() ? 0.5 * (t + c.path.times[i + 1]) : t;
    for (double s : {t, tm}) {
      if (s > 0.0) plus.push_back(s);
      if (s < 0.0) minus.push_back(-s);
    }
  }
  std::sort(plus.begin(), plus.end());
  std::sort(minus.begin(), minus.end());
  plus.erase(std::unique(plus.begin(), plus.end()), plus.end());
  minus.erase(std::unique(minus.begin(), minus.end()), minus.end());

  auto y_plus = [&](double t) { return c.at(t).y - start.y; };
  auto y_minus = [&](double t) { return start.y - c.at(-t).y; };
  const auto tp = settle_time(y_plus, plus, r.horizon_plus);
  const auto tm = settle_time(y_minus, minus, r.horizon_minus);
  r.certified = tp.has_value() && tm.has_value();
  r.T_plus = tp.value_or(std::numeric_limits<double>::infinity());
  r.T_minus = tm.value_or(std::numeric_limits<double>::infinity());
  r.T_star = std::max(r.T_plus, r.T_minus);

  if (c.cls == GeodesicClass::Homoclinic) {
    const double H = std::min(r.horizon_plus, r.horizon_minus);
    // -Cost_y(c,[-t,t]) = (z - y)(t) - (z - y)(-t)
    auto neg_cost = [&](double t) {
      const MagneticPoint p = c.at(t), q = c.at(-t);
      return (p.z - p.y) - (q.z - q.y);
    };
    std::vector<double> s;
    for (double t : plus)
      if (t <= H) s.push_back(t);
    r.T_cost = settle_time(neg_cost, s, H);
  }
  return r;
}

std::string SignTimeReport::to_json() const {
  nlohmann::json j{{"class", to_string(cls)},   {"T_star", T_star},
                   {"T_plus", T_plus},          {"T_minus", T_minus},
                   {"horizon_plus", horizon_plus}, {"horizon_minus", horizon_minus},
                   {"certified", certified}};
  if (T_cost) j["T_cost"] = *T_cost;
  return j.dump(2);
}

}  // namespace jetgeo
