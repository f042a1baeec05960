#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "jetgeo/errors.hpp"
#include "jetgeo/experiments.hpp"
#include "jetgeo/magnetic.hpp"
#include "jetgeo/periods.hpp"
#include "jetgeo/quadrature.hpp"
#include "test_support.hpp"

using namespace jetgeo;

namespace {

const Polynomial Fh{1, 0, -2};
constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("endpoint-singular integrals with closed forms") {
  auto r = integrate_endpoint_singular([](double, double dl, double dr) { return 1.0 / std::sqrt(dl * dr); },
                                       {-1, 1}, 0.5, 0.5);
  CHECK(std::abs(r.value - pi) <= 1e-10);
  CHECK(r.finite);
  r = integrate_endpoint_singular([](double x, double, double dr) { return x / std::sqrt(dr * (1 + x)); }, {0, 1},
                                  0.0, 0.5);
  CHECK(std::abs(r.value - 1.0) <= 1e-10);
  r = integrate_endpoint_singular([](double, double dl, double) { return 1.0 / dl; }, {0, 1}, 1.0, 0.0);
  CHECK_FALSE(r.finite);
  CHECK(std::isinf(r.value));
  CHECK(r.value > 0);
  r = integrate_endpoint_singular([](double, double dl, double) { return -1.0 / dl; }, {0, 1}, 1.0, 0.0, 1e-10, -1.0);
  CHECK(r.value < 0);
  // smooth integrand, no singularity
  r = integrate_endpoint_singular([](double x, double, double) { return std::exp(x); }, {0, 2}, 0.0, 0.0);
  CHECK(std::abs(r.value - (std::exp(2.0) - 1.0)) <= 1e-10);
}

TEST_CASE("period report examples") {
  SUBCASE("F = x") {
    const Polynomial X{0, 1};
    const auto p = period_report(X, 0.0, 1.0, *hill_interval_containing(X, 0.0));
    CHECK(std::abs(p.L.value - 2 * pi) <= 1e-9);
    CHECK(std::abs(p.delta_y.value) <= 1e-12);
    CHECK(std::abs(p.delta_z.value - pi) <= 1e-9);
    CHECK(p.theta1.value == doctest::Approx(2 * pi).epsilon(1e-9));
  }
  SUBCASE("1 - 2x^2 on [0, 1]") {
    const auto p = period_report(Fh, 0.0, 1.0, *hill_interval_containing(Fh, 0.5));
    CHECK_FALSE(p.L.finite);
    CHECK(std::isinf(p.L.value));
    CHECK(std::abs(p.theta1.value - 2.0) <= 1e-8);
    // independent oracle: Theta2 = -2 int_0^1 sqrt(1 - F^2) / (2 n) with n = 1, i.e. -2/3
    CHECK(std::abs(p.theta2.value + 2.0 / 3.0) <= 1e-8);
  }
  SUBCASE("G = 1 has theta1 = 0") {
    const auto p = period_report(Fh, 1.0, 0.0, *hill_interval_containing(Fh, 0.5));
    CHECK(p.theta1.value == 0.0);
    CHECK(p.theta1.finite);
  }
  SUBCASE("rejects a non-hill interval") {
    HillInterval I;
    I.lo = 0.1;
    I.hi = 0.9;
    CHECK_THROWS_AS(period_report(Fh, 0.0, 1.0, I), Error);
  }
}

TEST_CASE("period integrals against Boost tanh-sinh") {
  std::mt19937_64 rng(77);
  boost::math::quadrature::tanh_sinh<double> ts;
  for (int t = 0; t < 12; ++t) {
    const auto inst = testsupport::random_periodic(rng);
    const Polynomial G = inst.a + inst.b * inst.F;
    const auto p = period_report(inst.F, inst.a, inst.b, inst.I);
    const double lo = inst.I.lo, hi = inst.I.hi;
    // Boost passes x together with xc = end - x; expand G about that end so
    // 1 - G^2 is formed from the increment of G, treating the end as exact.
    const Polynomial Dlo = G.taylor_shift(lo) - Polynomial::constant(G(lo));
    const Polynomial Dhi = G.taylor_shift(hi) - Polynomial::constant(G(hi));
    auto one_minus = [&](double, double xc) {
      const bool at_lo = xc <= 0;
      const double sigma = (at_lo ? G(lo) : G(hi)) > 0 ? 1.0 : -1.0;
      const double d = (at_lo ? Dlo : Dhi)(-xc);
      return (-sigma * d) * (2.0 + sigma * d);
    };
    auto Lf = [&](double x, double xc) { return 1.0 / std::sqrt(one_minus(x, xc)); };
    auto Yf = [&](double x, double xc) { return G(x) / std::sqrt(one_minus(x, xc)); };
    auto Zf = [&](double x, double xc) { return G(x) * inst.F(x) / std::sqrt(one_minus(x, xc)); };
    const double L = 2 * ts.integrate(Lf, lo, hi);
    const double Y = 2 * ts.integrate(Yf, lo, hi);
    const double Z = 2 * ts.integrate(Zf, lo, hi);
    CHECK(std::abs(p.L.value - L) / L <= 1e-7);
    CHECK(std::abs(p.delta_y.value - Y) / L <= 1e-7);
    CHECK(std::abs(p.delta_z.value - Z) / L <= 1e-7);
  }
}

TEST_CASE("period report invariants on random pencils") {
  std::mt19937_64 rng(78);
  for (int t = 0; t < 20; ++t) {
    const auto inst = testsupport::random_periodic(rng);
    const auto p = period_report(inst.F, inst.a, inst.b, inst.I);
    CHECK(p.L.finite);
    CHECK(p.theta1.finite);
    CHECK(p.theta1.value > 0.0);
    CHECK(std::abs(p.delta_y.value) <= p.L.value);
    CHECK(std::abs(p.theta1.value - (p.L.value - p.delta_y.value)) <= 1e-8 * p.L.value);
  }
}

TEST_CASE("cost over travel") {
  SUBCASE("frozen vertical line costs nothing") {
    const auto c = cost_over_travel(Fh, 1.0, 0.0, TravelInterval{});
    CHECK(c.cost_t == 0.0);
    CHECK(c.delta_t == 0.0);
  }
  SUBCASE("soliton travel out and back") {
    const auto I = *hill_interval_containing(Fh, 0.5);
    double prev = 0.0;
    for (double n : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      const double xn = 1.0 / std::cosh(2 * n);
      const auto c = cost_over_travel(Fh, 0.0, 1.0, I, TravelInterval{{{xn, 1.0}, {1.0, xn}}});
      CHECK(std::abs(c.delta_t - 2 * n) <= 1e-8 * n);
      CHECK(std::abs(c.cost_t - 2 * std::tanh(2 * n)) <= 1e-9);
      CHECK(std::abs(c.cost_t - (c.delta_t - c.delta_y)) <= 1e-8 * n);
      CHECK(std::abs(c.cost_y - (c.delta_y - c.delta_z)) <= 1e-8 * n);
      CHECK(c.cost_t >= prev);
      prev = c.cost_t;
    }
    CHECK(std::abs(prev - 2.0) <= 1e-8);
  }
  SUBCASE("quadrature cost matches the integrated trajectory") {
    const Polynomial F{0.1, 0.7, 0.0, -0.4};
    const double a = 0.2, b = 0.9;
    const auto c = integrate_magnetic(F, a, b, {0.0, 0.0, 0.0}, 1.0, {-3, 17});
    for (auto [t0, t1] : {std::pair{0.0, 1.0}, std::pair{-3.0, 4.5}, std::pair{0.7, 17.0}}) {
      const TravelInterval tr = travel_interval(c.path, t0, t1);
      CHECK(tr.is_continuous());
      const auto q = cost_over_travel(F, a, b, tr);
      const MagneticPoint p0 = c.at(t0), p1 = c.at(t1);
      CHECK(std::abs(q.delta_t - (t1 - t0)) <= 1e-6);
      CHECK(std::abs(q.delta_y - (p1.y - p0.y)) <= 1e-6);
      CHECK(std::abs(q.delta_z - (p1.z - p0.z)) <= 1e-6);
      CHECK(std::abs(q.cost_t - ((t1 - t0) - (p1.y - p0.y))) <= 1e-6);
      CHECK(q.cost_t >= 0.0);
    }
  }
}

TEST_CASE("time map inversion") {
  const auto I = *hill_interval_containing(Fh, 0.5);
  for (double n : {0.1, 1.0, 5.0, 15.0}) {
    const double x = invert_time_map(Fh, I, true, 1.0, n);
    CHECK(std::abs(x - 1.0 / std::cosh(2 * n)) <= 1e-10 * std::max(1.0 / std::cosh(2 * n), 1e-3));
  }
}

TEST_CASE("hill integrator endpoint factor") {
  const Polynomial G{1, 0, -6, 4};
  const auto I = *hill_interval_containing(G, 0.5);
  const HillIntegrator h(G, I);
  for (double x : {1e-9, 1e-4, 0.2, 0.5, 0.9, 1 - 1e-6}) {
    const double g = G(x);
    CHECK(h.one_minus_G2(x) == doctest::Approx((1 - g) * (1 + g)).epsilon(1e-6));
    CHECK(h.one_minus_G2(x) > 0.0);
  }
}

TEST_CASE("odd homoclinic: delta_y < delta_z for large n and the ratio tends to 1") {
  const Polynomial F{1, 0, 0, -2};
  const auto I = *hill_interval_containing(F, 0.5);
  double prev_gap = 1e300;
  bool crossed = false;
  for (double n : {1.0, 10.0, 100.0, 1e3, 1e4, 1e6}) {
    const auto s = homoclinic_segment(F, I, n);
    const double ratio = s.cost.delta_z / s.cost.delta_y;
    if (s.cost.delta_y < s.cost.delta_z) crossed = true;
    if (n >= 100.0) CHECK(s.cost.delta_y < s.cost.delta_z);
    CHECK(std::abs(ratio - 1.0) < prev_gap);
    prev_gap = std::abs(ratio - 1.0);
  }
  CHECK(crossed);
  CHECK(prev_gap < 1e-5);
}
