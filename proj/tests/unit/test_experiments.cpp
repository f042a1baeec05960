#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "doctest.h"
#include "json.hpp"
#include "jetgeo/errors.hpp"
#include "jetgeo/experiments.hpp"

using namespace jetgeo;

namespace {

const Polynomial Fh{1, 0, -2};
const Polynomial Fc{1, 0, 0, -2};
const Polynomial Fd{1, 0, -24, 48, -24};

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("jetgeo_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("counterexample report") {
  const auto reps = counterexample_report(1, default_counterexample_grid());
  REQUIRE(reps.size() == default_counterexample_grid().size());
  CHECK_FALSE(reps.front().verdict);
  CHECK(reps.back().verdict);
  const auto I = *hill_interval_containing(Fc, 0.5);
  const double theta1 = period_report(Fc, 0.0, 1.0, I).theta1.value;
  for (const auto& r : reps) {
    CAPTURE(r.n);
    CHECK(r.eps_n > 0.0);
    CHECK(r.dz_identity_error <= 1e-9);
    CHECK(r.F_identity_error <= 1e-9);
    CHECK(r.T3_identity_error <= 1e-9);
    CHECK(r.time_map_error <= 1e-9);
    for (double p : r.piece_residual) CHECK(p <= 1e-8);
    CHECK(r.endpoint_error <= 1e-9);
    CHECK(r.verdict == (r.gap > 0.0));
    // gap is 2n - T3 evaluated without cancellation; T3 itself carries the
    // relative quadrature error of a time of order n
    CHECK(std::abs((2 * r.n - r.T3) - r.gap) <= 1e-9 + 1e-9 * r.n);
    CHECK(r.cost_t >= 0.0);
    CHECK(r.cost_t <= theta1 + 1e-9);
    // the fixed-z reading of the second piece is not horizontal
    CHECK(r.literal_piece2_residual > 1e-3);
    if (r.n <= 20) {
      REQUIRE(r.ode_endpoint_error.has_value());
      CHECK(*r.ode_endpoint_error <= 1e-8);
    }
  }
  CHECK(std::abs(reps.back().gap - theta1) <= 1e-3);
  for (std::size_t i = 1; i < reps.size(); ++i) CHECK(reps[i].cost_t >= reps[i - 1].cost_t - 1e-12);

  SUBCASE("higher odd degree") {
    const auto r5 = counterexample_report(2, {1, 100, 1e6});
    CHECK(r5.back().verdict);
    CHECK(r5.back().T3_identity_error <= 1e-9);
  }
  SUBCASE("csv and json") {
    std::ostringstream os;
    write_counterexample_csv(os, reps);
    CHECK(os.str().rfind("n,x_n,eps_n,delta_n,T1,T2,T3,two_n_minus_T3,cost_t,delta_y,verdict\r\n", 0) == 0);
    const auto j = nlohmann::json::parse(reps.back().to_json());
    CHECK(j["verdict_T3_lt_2n"].get<bool>());
  }
  SUBCASE("even or malformed input") {
    CHECK(code_of([] { counterexample_report(Fh, {1}); }) == ErrorCode::NotOdd);
    CHECK(code_of([] { counterexample_report(0, {1}); }) == ErrorCode::NotOdd);
    CHECK(code_of([] { counterexample_report(Polynomial{1, 0.1, 0, -2}, {1}); }) == ErrorCode::NotOdd);
  }
}

TEST_CASE("homoclinic segment of the soliton") {
  const auto I = *hill_interval_containing(Fh, 0.5);
  const auto s = homoclinic_segment(Fh, I, 3.0);
  CHECK(std::abs(s.x_n - 1.0 / std::cosh(6.0)) <= 1e-12);
  CHECK(std::abs(s.cost.cost_t - 2 * std::tanh(6.0)) <= 1e-9);
  const auto ends = geodesic_endpoints(Fh, 1.0, 3.0);
  CHECK(std::abs(ends.second.x - s.x_n) <= 1e-9);
  CHECK(std::abs(ends.second.y - ends.first.y - s.cost.delta_y) <= 1e-8);
}

TEST_CASE("sign time") {
  SUBCASE("soliton: y(t) = t - tanh 2t changes sign once") {
    const auto r = sign_time(Fh, 0.0, 1.0, {1.0, 0.0, 0.0});
    CHECK(r.cls == GeodesicClass::Homoclinic);
    CHECK(r.certified);
    boost::uintmax_t it = 100;
    const auto br = boost::math::tools::toms748_solve([](double t) { return t - std::tanh(2 * t); }, 0.5, 2.0,
                                                      boost::math::tools::eps_tolerance<double>(50), it);
    const double oracle = 0.5 * (br.first + br.second);
    CHECK(std::abs(r.T_plus - oracle) <= 1e-8);
    CHECK(std::abs(r.T_minus - oracle) <= 1e-8);
    CHECK(std::abs(r.T_star - oracle) <= 1e-8);
    REQUIRE(r.T_cost.has_value());
    CHECK(*r.T_cost >= 0.0);
    CHECK(nlohmann::json::parse(r.to_json()).contains("T_cost"));
  }
  SUBCASE("direct type from mid-hill") {
    const auto r = sign_time(Fd, 0.0, 1.0, {0.5, 0.0, 0.0});
    CHECK(r.cls == GeodesicClass::HeteroclinicDirectType);
    CHECK(r.certified);
    CHECK(std::isfinite(r.T_star));
    const auto c = integrate_magnetic(Fd, 0.0, 1.0, {0.5, 0.0, 0.0}, 1.0, {-50, 50});
    for (double t = r.T_star + 1e-6; t < 50; t += 0.37) {
      CHECK(c.at(t).y > 0.0);
      CHECK(c.at(-t).y < 0.0);
    }
    CHECK(std::abs(c.at(r.T_plus).y) <= 1e-9);
  }
  SUBCASE("x-periodic input") {
    CHECK(code_of([] { sign_time(Polynomial{0, 1}, 0.0, 1.0, {0.0, 0.0, 0.0}); }) == ErrorCode::NotApplicable);
  }
}

TEST_CASE("connect: vertical line through a critical point") {
  const MagneticPoint s{0.0, 0.0, 0.0}, t{0.0, 2.0, 2.0};
  const ConnectReport rep = connect(Fh, s, t);
  REQUIRE(rep.best.has_value());
  CHECK(rep.best->abnormal);
  CHECK(rep.best->T == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(rep.best->endpoint_residual <= 1e-9);
  CHECK_FALSE(rep.error.has_value());

  // every accepted candidate: invariants, length, and cost ranking equals time ranking
  double prev_T = 0.0, prev_cost = -1.0;
  for (std::size_t i = 0; i < rep.accepted; ++i) {
    const ConnectResult& r = rep.ranked[i];
    CHECK(r.endpoint_residual <= 1e-6);
    CHECK(r.length == r.T);
    CHECK(r.T <= r.cut_bound + 1e-9);
    if (!r.abnormal) {
      CHECK(r.trajectory.horizontality_residual() <= 1e-7);
      CHECK(r.trajectory.speed_residual() <= 1e-8);
    }
    const double cost = r.T - (t.y - s.y);
    CHECK(r.T >= prev_T);
    CHECK(cost >= prev_cost);
    prev_T = r.T;
    prev_cost = cost;
  }
  CHECK_FALSE(nlohmann::json::parse(rep.to_json())["ranked"].empty());
}

TEST_CASE("connect: short horizontal hop") {
  const MagneticPoint s{0.2, 0.0, 0.0};
  const auto c = integrate_magnetic(Fh, 0.1, 0.8, s, 1.0, {0, 0.6});
  const MagneticPoint t = c.at(0.6);
  ConnectConfig cfg;
  cfg.grid = 21;
  const ConnectReport rep = connect(Fh, s, t, cfg);
  REQUIRE(rep.best.has_value());
  CHECK(rep.best->T <= 0.6 + 1e-6);
  CHECK(rep.best->T >= std::hypot(t.x - s.x, t.y - s.y) - 1e-9);
  CHECK(rep.best->endpoint_residual <= 1e-6);
}

TEST_CASE("connect errors") {
  CHECK(code_of([] { connect(Fh, {0, 0, 0}, {0, 0, 0}); }) == ErrorCode::InvalidArgument);
  ConnectConfig cfg;
  cfg.grid = 5;
  cfg.max_T = 1.0;
  cfg.refine_starts = 2;
  const ConnectReport rep = connect(Polynomial{0, 1}, {0, 0, 0}, {0, 0, 5}, cfg);
  CHECK_FALSE(rep.best.has_value());
  REQUIRE(rep.error.has_value());
  CHECK(*rep.error == ErrorCode::NoCandidate);
}

TEST_CASE("figure data") {
  SUBCASE("homoclinic: a single bump decaying at both ends") {
    const auto dir = scratch_dir("homoclinic");
    FigureParams p;
    p.half_span = 8.0;
    const auto files = figure_data(FigureKind::Homoclinic, p, dir);
    REQUIRE(files.size() == 2);
    std::ifstream is(files[0]);
    std::string header;
    std::getline(is, header);
    CHECK(header == "t,x,theta0\r");
    std::vector<double> xs;
    std::string line;
    while (std::getline(is, line)) {
      std::istringstream ls(line);
      std::string t, x;
      std::getline(ls, t, ',');
      std::getline(ls, x, ',');
      xs.push_back(std::stod(x));
    }
    REQUIRE(xs.size() > 10);
    CHECK(xs.front() < 1e-6);
    CHECK(xs.back() < 1e-6);
    const auto peak = std::max_element(xs.begin(), xs.end());
    CHECK(*peak == doctest::Approx(1.0));
    CHECK(std::is_sorted(xs.begin(), peak));
    CHECK(std::is_sorted(peak, xs.end(), std::greater<>()));
    std::filesystem::remove_all(dir);
  }
  SUBCASE("x-periodic: a wave") {
    const auto dir = scratch_dir("xperiodic");
    FigureParams p;
    p.svg = false;
    const auto files = figure_data(FigureKind::XPeriodic, p, dir);
    REQUIRE(files.size() == 1);
    std::ifstream is(files[0]);
    std::string line;
    std::getline(is, line);
    int sign_changes = 0;
    double prev = 0.0;
    while (std::getline(is, line)) {
      const double x = std::stod(line.substr(line.find(',') + 1));
      if (prev != 0.0 && x * prev < 0) ++sign_changes;
      if (x != 0.0) prev = x;
    }
    CHECK(sign_changes >= 3);
    std::filesystem::remove_all(dir);
  }
  SUBCASE("kind names round trip") {
    for (auto k : {FigureKind::XPeriodic, FigureKind::Homoclinic, FigureKind::TurnBack, FigureKind::DirectType,
                   FigureKind::MinimizerSequence})
      CHECK(parse_figure_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_figure_kind("nope"), Error);
  }
}
