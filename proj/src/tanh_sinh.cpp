#include <cmath>
#include <numbers>

#include "jetgeo/errors.hpp"
#include "jetgeo/quadrature.hpp"

namespace jetgeo {

namespace {

constexpr double kTMax = 6.0;

// Abscissae for t > 0 as fractions of the interval length: near = distance to
// the closer end, far = distance to the other end; wf is the weight before
// scaling by the half-length.
struct Node {
  double near;
  double far;
  double wf;
};

struct LevelTable {
  std::vector<std::vector<Node>> levels;
  double center_wf = std::numbers::pi / 2;
};

Node make_node(double t) {
  const double u = 0.5 * std::numbers::pi * std::sinh(t);
  const double e = std::exp(-2.0 * u);
  const double cosh_u_inv2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
  return {e / (1.0 + e), 1.0 / (1.0 + e), 0.5 * std::numbers::pi * std::cosh(t) * cosh_u_inv2};
}

const LevelTable& table(int max_level) {
  static const LevelTable tab = [] {
    LevelTable t;
    constexpr int kLevels = 14;
    t.levels.resize(kLevels);
    for (int j = 1; j <= static_cast<int>(kTMax); ++j) t.levels[0].push_back(make_node(j));
    for (int l = 1; l < kLevels; ++l) {
      const double step = std::ldexp(1.0, -l);
      for (long j = 1;; j += 2) {
        const double tt = j * step;
        if (tt > kTMax) break;
        t.levels[static_cast<std::size_t>(l)].push_back(make_node(tt));
      }
    }
    return t;
  }();
  if (max_level >= static_cast<int>(tab.levels.size()))
    throw Error(ErrorCode::InvalidArgument, "tanh-sinh level out of range");
  return tab;
}

}  // namespace

namespace detail {

std::vector<QuadResult> tanh_sinh_batch(double len, std::size_t m, const BatchEval& eval, double tol, int max_level) {
  std::vector<QuadResult> out(m);
  if (len == 0.0) return out;
  const LevelTable& tab = table(max_level);
  const double half = 0.5 * len;

  std::vector<double> total(m, 0.0), prev(m, 0.0), level_sums(m);
  std::vector<double> dl, dr, w;

  for (int level = 0; level <= max_level; ++level) {
    const auto& nodes = tab.levels[static_cast<std::size_t>(level)];
    dl.clear();
    dr.clear();
    w.clear();
    if (level == 0) {
      dl.push_back(half);
      dr.push_back(half);
      w.push_back(half * tab.center_wf);
    }
    for (const Node& nd : nodes) {
      const double near = len * nd.near, far = len * nd.far, wt = half * nd.wf;
      if (near == 0.0 || wt == 0.0) continue;
      dl.push_back(near);
      dr.push_back(far);
      w.push_back(wt);
      dl.push_back(far);
      dr.push_back(near);
      w.push_back(wt);
    }
    std::fill(level_sums.begin(), level_sums.end(), 0.0);
    if (!dl.empty()) eval(dl.data(), dr.data(), w.data(), dl.size(), level_sums.data());

    const double hstep = std::ldexp(1.0, -level);
    bool done = level >= 3;
    for (std::size_t k = 0; k < m; ++k) {
      total[k] += level_sums[k];
      const double est = hstep * total[k];
      const double err = std::abs(est - prev[k]);
      out[k].value = est;
      out[k].error_estimate = err;
      out[k].levels = level;
      prev[k] = est;
      if (!std::isfinite(est) || err > tol * std::max(1.0, std::abs(est))) done = false;
    }
    if (done) return out;
  }
  for (const QuadResult& r : out) {
    if (!std::isfinite(r.value) || r.error_estimate > tol * std::max(1.0, std::abs(r.value)))
      throw QuadratureToleranceNotMet(r.value, r.error_estimate);
  }
  return out;
}

}  // namespace detail

QuadResult integrate_endpoint_singular(const EndpointIntegrand& f, Interval I, double order_lo, double order_hi,
                                       double tol, double divergence_sign) {
  if (!(I.hi >= I.lo) || !std::isfinite(I.lo) || !std::isfinite(I.hi))
    throw Error(ErrorCode::InvalidArgument, "integration interval must be finite and ordered");
  if (order_lo >= 1.0 || order_hi >= 1.0) {
    QuadResult r;
    r.value = divergence_sign < 0 ? -INFINITY : INFINITY;
    r.finite = false;
    return r;
  }
  const double lo = I.lo, hi = I.hi;
  auto eval = [&](const double* dl, const double* dr, const double* w, std::size_t n, double* sums) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = dl[i] <= dr[i] ? lo + dl[i] : hi - dr[i];
      s += w[i] * f(x, dl[i], dr[i]);
    }
    sums[0] += s;
  };
  return detail::tanh_sinh_batch(hi - lo, 1, eval, tol)[0];
}

}  // namespace jetgeo
