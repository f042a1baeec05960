#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "jetgeo/periods.hpp"
#include "jetgeo/poly.hpp"
#include "jetgeo/reduced_flow.hpp"

namespace testsupport {

using jetgeo::HillInterval;
using jetgeo::Polynomial;

inline Polynomial random_poly(std::mt19937_64& rng, int degree, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (double& v : c) v = u(rng);
  if (std::abs(c.back()) < 0.1) c.back() = c.back() < 0 ? -0.1 : 0.1;
  return Polynomial(c);
}

struct PeriodicInstance {
  Polynomial F;
  double a, b;
  HillInterval I;
  double x_inside;
};

// Random (F, a, b) whose hill through a random point is x-periodic.
inline PeriodicInstance random_periodic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(1, 4);
  for (;;) {
    const Polynomial F = random_poly(rng, deg(rng));
    const double x0 = u(rng);
    const double b = (0.4 + 1.2 * std::abs(u(rng))) * (u(rng) < 0 ? -1.0 : 1.0);
    const double g0 = 0.8 * u(rng);
    const double a = g0 - b * F(x0);
    const Polynomial G = a + b * F;
    const auto h = jetgeo::hill_interval_containing(G, x0);
    if (!h || h->clipped || h->hi - h->lo > 20.0) continue;
    if (jetgeo::classify(G, *h) != jetgeo::GeodesicClass::XPeriodic) continue;
    return {F, a, b, *h, x0};
  }
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace testsupport
