#include "jetgeo/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace jetgeo {

double norm(const Vec<3>& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

template <std::size_t N>
NelderMeadResult<N> nelder_mead(const std::function<double(const Vec<N>&)>& f, const Vec<N>& x0,
                                const Vec<N>& step, const NelderMeadOptions& opt) {
  std::array<Vec<N>, N + 1> s;
  std::array<double, N + 1> fs;
  NelderMeadResult<N> out;
  auto eval = [&](const Vec<N>& x) {
    ++out.evals;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };
  s[0] = x0;
  fs[0] = eval(x0);
  for (std::size_t i = 0; i < N; ++i) {
    s[i + 1] = x0;
    s[i + 1][i] += step[i];
    fs[i + 1] = eval(s[i + 1]);
  }
  std::array<std::size_t, N + 1> idx;

  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t i = 1; i <= N; ++i)
      for (std::size_t k = 0; k < N; ++k) d = std::max(d, std::abs(s[i][k] - s[0][k]));
    return d;
  };
  auto combine = [](const Vec<N>& c, const Vec<N>& w, double t) {
    Vec<N> r;
    for (std::size_t k = 0; k < N; ++k) r[k] = c[k] + t * (w[k] - c[k]);
    return r;
  };

  while (out.evals < opt.max_evals) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fs[a] < fs[b]; });
    {
      auto s2 = s;
      auto f2 = fs;
      for (std::size_t i = 0; i <= N; ++i) {
        s[i] = s2[idx[i]];
        fs[i] = f2[idx[i]];
      }
    }
    if (diameter() < opt.diameter_tol) {
      out.converged = true;
      break;
    }
    Vec<N> c{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) c[k] += s[i][k] / N;

    const Vec<N> xr = combine(c, s[N], -1.0);
    const double fr = eval(xr);
    if (fr < fs[0]) {
      const Vec<N> xe = combine(c, s[N], -2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        s[N] = xe;
        fs[N] = fe;
      } else {
        s[N] = xr;
        fs[N] = fr;
      }
      continue;
    }
    if (fr < fs[N - 1]) {
      s[N] = xr;
      fs[N] = fr;
      continue;
    }
    const bool outside = fr < fs[N];
    const Vec<N> xc = combine(c, outside ? xr : s[N], 0.5);
    const double fc = eval(xc);
    if (fc < std::min(fr, fs[N])) {
      s[N] = xc;
      fs[N] = fc;
      continue;
    }
    // shrink towards the best vertex
    for (std::size_t i = 1; i <= N; ++i) {
      s[i] = combine(s[0], s[i], 0.5);
      fs[i] = eval(s[i]);
    }
  }
  const auto best = std::min_element(fs.begin(), fs.end()) - fs.begin();
  out.x = s[static_cast<std::size_t>(best)];
  out.fx = fs[static_cast<std::size_t>(best)];
  return out;
}

namespace {

template <std::size_t N>
double vnorm(const Vec<N>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Gaussian elimination with partial pivoting; false when singular.
template <std::size_t N>
bool solve(std::array<Vec<N>, N> A, Vec<N> b, Vec<N>& x) {
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < N; ++r)
      if (std::abs(A[r][c]) > std::abs(A[p][c])) p = r;
    if (!(std::abs(A[p][c]) > 0.0)) return false;
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < N; ++r) {
      const double m = A[r][c] / A[c][c];
      for (std::size_t k = c; k < N; ++k) A[r][k] -= m * A[c][k];
      b[r] -= m * b[c];
    }
  }
  for (std::size_t c = N; c-- > 0;) {
    double s = b[c];
    for (std::size_t k = c + 1; k < N; ++k) s -= A[c][k] * x[k];
    x[c] = s / A[c][c];
  }
  return true;
}

}  // namespace

template <std::size_t N>
Vec<N> gauss_newton_polish(const std::function<Vec<N>(const Vec<N>&)>& r, Vec<N> x, int iterations) {
  Vec<N> rx = r(x);
  double nx = vnorm(rx);
  for (int it = 0; it < iterations && std::isfinite(nx) && nx > 0.0; ++it) {
    std::array<Vec<N>, N> J;  // J[i][j] = d r_i / d x_j
    for (std::size_t j = 0; j < N; ++j) {
      const double h = 1e-7 * (1.0 + std::abs(x[j]));
      Vec<N> xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const Vec<N> rp = r(xp), rm = r(xm);
      for (std::size_t i = 0; i < N; ++i) J[i][j] = (rp[i] - rm[i]) / (2 * h);
    }
    Vec<N> neg, d{};
    for (std::size_t i = 0; i < N; ++i) neg[i] = -rx[i];
    if (!solve<N>(J, neg, d)) break;
    bool improved = false;
    for (double t = 1.0; t > 1e-3; t *= 0.5) {
      Vec<N> xt = x;
      for (std::size_t k = 0; k < N; ++k) xt[k] += t * d[k];
      const Vec<N> rt = r(xt);
      const double nt = vnorm(rt);
      if (nt < nx) {
        x = xt;
        rx = rt;
        nx = nt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return x;
}

template NelderMeadResult<3> nelder_mead<3>(const std::function<double(const Vec<3>&)>&, const Vec<3>&,
                                            const Vec<3>&, const NelderMeadOptions&);
template NelderMeadResult<2> nelder_mead<2>(const std::function<double(const Vec<2>&)>&, const Vec<2>&,
                                            const Vec<2>&, const NelderMeadOptions&);
template Vec<3> gauss_newton_polish<3>(const std::function<Vec<3>(const Vec<3>&)>&, Vec<3>, int);

}  // namespace jetgeo
