#include <algorithm>
#include <cmath>

#include "jetgeo/errors.hpp"
#include "jetgeo/poly.hpp"

namespace jetgeo {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double bisect(const Polynomial& F, double u, double v) {
  double fu = F(u);
  for (int it = 0; it < 2000; ++it) {
    const double m = 0.5 * (u + v);
    if (m <= u || m >= v) break;
    const double fm = F(m);
    if (fm == 0.0) return m;
    if (sign_of(fm) == sign_of(fu)) {
      u = m;
      fu = fm;
    } else {
      v = m;
    }
  }
  const double x = std::abs(F(u)) <= std::abs(F(v)) ? u : v;
  if (!is_numerical_root(F, x)) throw RootNonConvergence(u, v, std::abs(F(x)));
  return x;
}

// Critical points of F are located first (recursively, down the derivative
// chain). F is monotone between consecutive critical points, so each such
// segment holds at most one simple root. A critical point at which F itself
// vanishes is a multiple root.
std::vector<Root> roots_rec(const Polynomial& F, double lo, double hi) {
  if (F.degree() == 0) return {};

  struct Break {
    double x;
    int crit_mult;
  };
  std::vector<Break> bps;
  bps.push_back({lo, 0});
  if (F.degree() >= 2) {
    for (const Root& c : roots_rec(F.derivative(), lo, hi)) {
      if (c.x == bps.back().x) {
        bps.back().crit_mult = std::max(bps.back().crit_mult, c.multiplicity);
      } else {
        bps.push_back({c.x, c.multiplicity});
      }
    }
  }
  if (hi != bps.back().x) bps.push_back({hi, 0});

  std::vector<Root> out;
  std::vector<char> is_root(bps.size(), 0);
  std::vector<double> fv(bps.size());
  for (std::size_t i = 0; i < bps.size(); ++i) {
    fv[i] = F(bps[i].x);
    if (is_numerical_root(F, bps[i].x)) {
      is_root[i] = 1;
      out.push_back({bps[i].x, bps[i].crit_mult + 1});
    }
  }
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    if (is_root[i] || is_root[i + 1]) continue;
    if (sign_of(fv[i]) * sign_of(fv[i + 1]) < 0) out.push_back({bisect(F, bps[i].x, bps[i + 1].x), 1});
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return a.x < b.x; });
  return out;
}

}  // namespace

std::vector<Root> real_roots(const Polynomial& F, Interval window) {
  if (!std::isfinite(window.lo) || !std::isfinite(window.hi) || window.lo > window.hi)
    throw Error(ErrorCode::InvalidArgument, "root window must be finite and ordered");
  if (F.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no isolated roots");
  return roots_rec(F, window.lo, window.hi);
}

}  // namespace jetgeo
