#include <algorithm>
#include <cmath>

#include "jetgeo/errors.hpp"
#include "jetgeo/poly.hpp"

namespace jetgeo {

namespace {

struct Contact {
  double x;
  double value;  // +1 or -1
};

std::vector<Contact> contacts(const Polynomial& F, Interval window) {
  std::vector<Contact> out;
  for (double v : {1.0, -1.0}) {
    for (const Root& r : real_roots(F - Polynomial::constant(v), window)) out.push_back({r.x, v});
  }
  std::sort(out.begin(), out.end(), [](const Contact& a, const Contact& b) { return a.x < b.x; });
  return out;
}

EndpointKind kind_at(const Polynomial& F, double x) {
  return is_critical_point(F, x) ? EndpointKind::Critical : EndpointKind::Regular;
}

}  // namespace

std::vector<HillInterval> hill_intervals(const Polynomial& F, Interval window) {
  if (F.is_constant()) {
    const double c = F[0];
    if (std::abs(std::abs(c) - 1.0) <= 1e-12)
      throw Error(ErrorCode::DegenerateHill, "constant polynomial with |F| = 1 has no interior");
    if (std::abs(c) > 1.0) return {};
    HillInterval h;
    h.lo = window.lo;
    h.hi = window.hi;
    h.lo_value = h.hi_value = c;
    h.clipped = true;
    return {h};
  }

  const std::vector<Contact> pts = contacts(F, window);
  std::vector<HillInterval> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i].x, b = pts[i + 1].x;
    if (!(b > a)) continue;
    if (!(std::abs(F(0.5 * (a + b))) < 1.0)) continue;
    HillInterval h;
    h.lo = a;
    h.hi = b;
    h.lo_value = pts[i].value;
    h.hi_value = pts[i + 1].value;
    h.lo_kind = kind_at(F, a);
    h.hi_kind = kind_at(F, b);
    out.push_back(h);
  }
  return out;
}

std::optional<HillInterval> hill_interval_containing(const Polynomial& F, double x) {
  if (F.is_constant() || !(std::abs(F(x)) <= 1.0 + 1e-12)) return std::nullopt;
  const double R = std::max(root_bound(F - Polynomial::constant(1.0)), root_bound(F + Polynomial::constant(1.0)));
  const double W = std::max(R, std::abs(x)) + 1.0;
  for (const HillInterval& h : hill_intervals(F, {-W, W})) {
    if (h.contains(x)) return h;
  }
  // x sits on a contact point within rounding of a hill end.
  for (const HillInterval& h : hill_intervals(F, {-W, W})) {
    const double slack = 1e-12 * (1.0 + std::abs(x));
    if (h.lo - slack <= x && x <= h.hi + slack) return h;
  }
  return std::nullopt;
}

bool validate_hill(const Polynomial& F, const HillInterval& I, int samples) {
  if (!(I.lo <= I.hi)) return false;
  if (I.clipped) {
    for (int i = 0; i <= samples; ++i) {
      const double x = I.lo + (I.hi - I.lo) * i / samples;
      if (!(std::abs(F(x)) < 1.0)) return false;
    }
    return true;
  }
  if (!(I.hi > I.lo)) return false;
  if (std::abs(std::abs(F(I.lo)) - 1.0) > 1e-9 || std::abs(std::abs(F(I.hi)) - 1.0) > 1e-9) return false;
  for (int i = 1; i < samples; ++i) {
    const double x = I.lo + (I.hi - I.lo) * i / samples;
    if (std::abs(F(x)) > 1.0) return false;
  }
  // No contact with |F| = 1 strictly inside.
  if (F.is_constant()) return false;
  const double pad = 1e-9 * (1.0 + (I.hi - I.lo));
  for (const Contact& c : contacts(F, I.interval())) {
    if (c.x > I.lo + pad && c.x < I.hi - pad) return false;
  }
  return true;
}

}  // namespace jetgeo
