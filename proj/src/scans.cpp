#include "jetgeo/scans.hpp"

#include <cmath>
#include <ostream>

#include "json.hpp"
#include "jetgeo/errors.hpp"
#include "jetgeo/io.hpp"
#include "jetgeo/parallel.hpp"
#include "jetgeo/periods.hpp"
#include "jetgeo/quadrature.hpp"

namespace jetgeo {

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  return g;
}

std::vector<double> logspace(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > 0.0)) throw Error(ErrorCode::InvalidArgument, "log grid needs positive ends");
  auto g = linspace(std::log(lo), std::log(hi), points);
  for (double& v : g) v = std::exp(v);
  return g;
}

void ScanReport::write_csv(std::ostream& os) const {
  CsvWriter csv(os, {"s", "theta2", "err"});
  for (const auto& r : rows) csv.row({r.s, r.theta2, r.err});
}

std::string ScanReport::to_json() const {
  nlohmann::json j;
  j["family"] = family;
  j["window"] = {window.lo, window.hi};
  j["strictly_increasing"] = strictly_increasing;
  j["all_negative"] = all_negative;
  j["notes"] = notes;
  auto& r = j["rows"] = nlohmann::json::array();
  for (const auto& row : rows) r.push_back({{"s", row.s}, {"theta2", row.theta2}, {"err", row.err}});
  if (fitted_exponent) j["fitted_exponent"] = *fitted_exponent;
  if (oracle_exponent) j["oracle_exponent"] = *oracle_exponent;
  if (alternative_exponent) j["alternative_exponent"] = *alternative_exponent;
  return j.dump(2);
}

ScanReport theta2_scan(const Polynomial& F, const Family& family, const std::vector<double>& grid,
                       GeodesicClass expected, double tol) {
  ScanReport rep;
  rep.rows.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const FamilyMember m = family(grid[i]);
    const Polynomial G = m.a + m.b * F;
    auto h = G.is_constant() ? std::nullopt : hill_interval_containing(G, m.x_inside);
    if (!h) throw Error(ErrorCode::NotHillInterval, "family member without a hill at s = " + format_double(grid[i]));
    if (classify(G, *h) != expected)
      throw Error(ErrorCode::NotHillInterval, "family member at s = " + format_double(grid[i]) + " is " +
                                                  to_string(classify(G, *h)) + ", expected " + to_string(expected));
    const QuadResult q = period_report(F, m.a, m.b, *h, tol).theta2;
    rep.rows[i] = {grid[i], q.value, q.error_estimate};
  });
  rep.strictly_increasing = rep.rows.size() >= 2;
  rep.all_negative = !rep.rows.empty();
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (!(rep.rows[i].theta2 < 0.0)) rep.all_negative = false;
    if (i == 0) continue;
    const auto &p = rep.rows[i - 1], &c = rep.rows[i];
    // increments must clear the combined quadrature error
    if (!(c.theta2 - p.theta2 > p.err + c.err)) rep.strictly_increasing = false;
  }
  if (!grid.empty()) rep.window = {grid.front(), grid.back()};
  return rep;
}

ScanReport theta2_scan_direct(const Polynomial& Fd, int points, double tol) {
  const DirectTypeFactorization d = direct_type_factorize(Fd);
  // G_s = 1 - (1 - s) q bump has minimum 1 - (1 - s) q_max, which stays above -1
  // exactly when s > 1 - 2/q_max; s < 1 keeps G_s non-constant.
  const Interval w{1.0 - 2.0 / d.q_max, 1.0};
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = w.lo + (w.hi - w.lo) * (i + 1) / (points + 1);

  ScanReport rep = theta2_scan(
      Fd, [](double s) { return FamilyMember{s, 1.0 - s, 0.5}; }, grid, GeodesicClass::HeteroclinicDirectType, tol);
  rep.family = "direct-type G_s = s + (1-s) F_d";
  rep.window = w;
  rep.notes.push_back("window from classification: (1 - 2/q_max, 1) = (" + format_double(w.lo) + ", 1)");
  const double alt = 2.0 / d.q_max;
  rep.notes.push_back("alternative window (2/q_max, 1) = (" + format_double(alt) + ", 1)" +
                      (alt >= 1.0 ? " is empty" : ""));
  // Just outside the window the hill through x = 1/2 is no longer [0, 1].
  const double probe = w.lo - 1e-3 * (w.hi - w.lo);
  const Polynomial Gp = probe + (1.0 - probe) * Fd;
  auto hp = hill_interval_containing(Gp, 0.5);
  const bool still_direct = hp && std::abs(hp->lo) < 1e-9 && std::abs(hp->hi - 1.0) < 1e-9 &&
                            classify(Gp, *hp) == GeodesicClass::HeteroclinicDirectType;
  rep.notes.push_back(std::string("probe s = ") + format_double(probe) +
                      (still_direct ? " still direct-type" : " leaves the direct-type class"));
  return rep;
}

namespace {

Polynomial homoclinic_F(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(2 * n) + 1, 0.0);
  c[0] = 1.0;
  c.back() = -2.0;
  return Polynomial(c);
}

}  // namespace

ScanReport theta2_scan_homoclinic(int n, const std::vector<double>& betas, double tol) {
  const Polynomial Fh = homoclinic_F(n);
  for (double b : betas)
    if (!(b > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
  auto fam = [n](double beta) { return FamilyMember{1.0 - beta, beta, 0.5 * std::pow(beta, -0.5 / n)}; };
  ScanReport rep = theta2_scan(Fh, fam, betas, GeodesicClass::Homoclinic, tol);
  rep.family = "homoclinic G_beta = 1 - 2 beta x^" + std::to_string(2 * n);

  // least-squares slope of log|theta2| against log beta
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : rep.rows) {
    if (r.theta2 == 0.0) continue;
    const double lx = std::log(r.s), ly = std::log(std::abs(r.theta2));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m >= 2 && m * sxx - sx * sx > 0.0) rep.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.oracle_exponent = -(2.0 * n + 1.0) / (2.0 * n);
  rep.alternative_exponent = (n + 1.0) / (2.0 * n);
  if (rep.fitted_exponent)
    rep.notes.push_back("fitted exponent " + format_double(*rep.fitted_exponent) + " vs substitution " +
                        format_double(*rep.oracle_exponent) + "; the (1/s)^((n+1)/2n) scaling gives exponent " +
                        format_double(-*rep.alternative_exponent) + " and does not match");
  return rep;
}

ScanReport theta2_scan_homoclinic(int n, Interval beta_range, int points, double tol) {
  return theta2_scan_homoclinic(n, logspace(beta_range.lo, beta_range.hi, points), tol);
}

LemmaCheck homoclinic_identity(int n, double tol) {
  const Polynomial Fh = homoclinic_F(n);
  auto h = hill_interval_containing(Fh, 0.5);
  if (!h) throw Error(ErrorCode::NotHillInterval, "no hill for F_h");
  LemmaCheck c;
  c.n = n;
  c.theta2 = period_report(Fh, 0.0, 1.0, *h, tol).theta2.value;
  // sqrt(1 - F^2) = (1 - F^2) / sqrt(1 - F^2)
  c.area = HillIntegrator(Fh, *h).integrate({1.0 - Fh * Fh}, h->lo, h->hi, tol)[0].value;
  c.rhs_stated = -2.0 / (2.0 * n - 1.0) * c.area;
  c.rhs_derived = -c.area / n;
  return c;
}

}  // namespace jetgeo
