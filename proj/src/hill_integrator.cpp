#include <algorithm>
#include <cmath>

#include "jetgeo/errors.hpp"
#include "jetgeo/quadrature.hpp"
#include "jetgeo/simd/kernels.hpp"

namespace jetgeo {

namespace {

// p(s) / s^r, dropping the r lowest coefficients (known zeros).
Polynomial divide_power(const Polynomial& p, int r) {
  const auto c = p.coeffs();
  if (static_cast<std::size_t>(r) >= c.size()) return Polynomial();
  return Polynomial(std::vector<double>(c.begin() + r, c.end()));
}

int zero_order_at_origin(const Polynomial& p) {
  if (p.is_zero()) return 0;
  return vanishing_order(p, 0.0);
}

}  // namespace

HillIntegrator::HillIntegrator(const Polynomial& G, const HillInterval& I) : G_(G), I_(I) {
  if (!(I.hi > I.lo)) throw Error(ErrorCode::DegenerateHill, "hill interval has no interior");
  auto make = [&](double at, double dir, double value) {
    Anchor a;
    a.at = at;
    a.dir = dir;
    const double sigma = value < 0.0 ? -1.0 : 1.0;
    const Polynomial Gs = G.compose_affine(at, dir);
    const Polynomial A = 1.0 - sigma * Gs;
    a.m = (I.clipped || G.is_constant()) ? 0 : std::max(1, zero_order_at_origin(A));
    a.A_red = divide_power(A, a.m);
    a.B = 1.0 + sigma * Gs;
    return a;
  };
  lo_ = make(I.lo, 1.0, I.clipped ? G(I.lo) : I.lo_value);
  hi_ = make(I.hi, -1.0, I.clipped ? G(I.hi) : I.hi_value);
  if (G.degree() >= 2) {
    for (const Root& r : real_roots(G.derivative(), I.interval()))
      if (r.x > I.lo && r.x < I.hi) interior_crit_.push_back(r.x);
  }
}

const HillIntegrator::Anchor& HillIntegrator::anchor_for(double x) const {
  return x <= 0.5 * (I_.lo + I_.hi) ? lo_ : hi_;
}

double HillIntegrator::one_minus_G2(double x) const {
  const Anchor& a = anchor_for(x);
  const double s = std::abs(x - a.at);
  return std::pow(s, a.m) * a.A_red(s) * a.B(s);
}

std::vector<QuadResult> HillIntegrator::integrate_piece(const Anchor& a, const std::vector<Polynomial>& numerators,
                                                        double sa, double sb, double tol) const {
  const std::size_t m = numerators.size();
  std::vector<QuadResult> out(m);
  std::vector<Polynomial> nred(m);
  std::vector<double> expo(m);
  std::vector<std::size_t> live;
  for (std::size_t k = 0; k < m; ++k) {
    const Polynomial Ns = numerators[k].compose_affine(a.at, a.dir);
    if (Ns.is_zero()) continue;
    const int r = zero_order_at_origin(Ns);
    nred[k] = divide_power(Ns, r);
    expo[k] = r - 0.5 * a.m;
    if (sa == 0.0 && expo[k] <= -1.0) {
      out[k].value = nred[k][0] < 0.0 ? -INFINITY : INFINITY;
      out[k].finite = false;
      continue;
    }
    live.push_back(k);
  }
  if (live.empty() || sb <= sa) return out;

  // Geometric grading when the piece starts just off a singular anchor.
  std::vector<std::pair<double, double>> parts;
  if (sa > 0.0 && a.m > 0 && sb > 4.0 * sa) {
    double s0 = sa;
    while (s0 < sb) {
      const double s1 = std::min(sb, 4.0 * s0);
      parts.push_back({s0, s1});
      s0 = s1;
    }
  } else {
    parts.push_back({sa, sb});
  }

  const simd::Kernels& ker = simd::active();
  std::vector<double> s, At, Bt, Nt, wk;
  for (const auto& [p0, p1] : parts) {
    auto eval = [&](const double* dl, const double* dr, const double* w, std::size_t n, double* sums) {
      s.resize(n);
      At.resize(n);
      Bt.resize(n);
      Nt.resize(n);
      wk.resize(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = dl[i] <= dr[i] ? p0 + dl[i] : p1 - dr[i];
      ker.horner_batch(a.A_red.coeffs().data(), a.A_red.coeffs().size(), s.data(), At.data(), n);
      ker.horner_batch(a.B.coeffs().data(), a.B.coeffs().size(), s.data(), Bt.data(), n);
      for (std::size_t j = 0; j < live.size(); ++j) {
        const std::size_t k = live[j];
        const Polynomial& N = nred[k];
        ker.horner_batch(N.coeffs().data(), N.coeffs().size(), s.data(), Nt.data(), n);
        if (expo[k] == 0.0) {
          sums[j] += ker.ratio_sum(w, Nt.data(), At.data(), Bt.data(), n);
        } else {
          for (std::size_t i = 0; i < n; ++i) wk[i] = w[i] * std::pow(s[i], expo[k]);
          sums[j] += ker.ratio_sum(wk.data(), Nt.data(), At.data(), Bt.data(), n);
        }
      }
    };
    const auto res = detail::tanh_sinh_batch(p1 - p0, live.size(), eval, tol);
    for (std::size_t j = 0; j < live.size(); ++j) {
      QuadResult& o = out[live[j]];
      o.value += res[j].value;
      o.error_estimate += res[j].error_estimate;
      o.levels = std::max(o.levels, res[j].levels);
    }
  }
  return out;
}

std::vector<QuadResult> HillIntegrator::integrate(const std::vector<Polynomial>& numerators, double u, double v,
                                                  double tol) const {
  if (u > v) std::swap(u, v);
  // Sweeps taken from integrated paths may overshoot a turning point by rounding.
  const double slack = 1e-8 * (1.0 + std::abs(I_.lo) + std::abs(I_.hi));
  if (u < I_.lo - slack || v > I_.hi + slack)
    throw Error(ErrorCode::InvalidArgument, "integration range leaves the hill interval");
  u = std::max(u, I_.lo);
  v = std::min(v, I_.hi);

  // Pieces never straddle the hill midpoint, so each is expanded about the
  // one hill end it can approach.
  const double mid = 0.5 * (I_.lo + I_.hi);
  std::vector<double> pts{u};
  for (double c : interior_crit_)
    if (c > u && c < v) pts.push_back(c);
  if (mid > u && mid < v) pts.push_back(mid);
  pts.push_back(v);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<QuadResult> total(numerators.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double p = pts[i], q = pts[i + 1];
    if (q <= p) continue;
    const Anchor& a = q <= mid ? lo_ : hi_;
    double sa, sb;
    if (a.dir > 0) {
      sa = p - a.at;
      sb = q - a.at;
    } else {
      sa = a.at - q;
      sb = a.at - p;
    }
    const auto part = integrate_piece(a, numerators, std::max(0.0, sa), sb, tol);
    for (std::size_t k = 0; k < total.size(); ++k) {
      total[k].value += part[k].value;
      total[k].error_estimate += part[k].error_estimate;
      total[k].finite = total[k].finite && part[k].finite;
      total[k].levels = std::max(total[k].levels, part[k].levels);
    }
  }
  return total;
}

}  // namespace jetgeo
