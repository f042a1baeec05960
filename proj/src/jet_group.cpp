#include "jetgeo/jet_group.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "jetgeo/errors.hpp"
#include "jetgeo/io.hpp"

namespace jetgeo {

namespace {

void require_same_k(const JetPoint& g, const JetPoint& h) {
  if (g.theta.size() != h.theta.size() || g.theta.empty())
    throw Error(ErrorCode::InvalidArgument, "jet points must share the same k >= 0");
}

// a^n / n! for n = 0..k
std::vector<double> scaled_powers(double a, int k) {
  std::vector<double> p(static_cast<std::size_t>(k) + 1);
  p[0] = 1.0;
  for (int n = 1; n <= k; ++n) p[static_cast<std::size_t>(n)] = p[static_cast<std::size_t>(n) - 1] * a / n;
  return p;
}

}  // namespace

JetPoint group_mul(const JetPoint& g, const JetPoint& h) {
  require_same_k(g, h);
  const int k = g.k();
  const auto w = scaled_powers(g.x, k);
  JetPoint out{g.x + h.x, std::vector<double>(g.theta.size())};
  for (int i = 0; i <= k; ++i) {
    double s = g.theta[static_cast<std::size_t>(i)];
    for (int j = 0; j <= i; ++j) s += w[static_cast<std::size_t>(i - j)] * h.theta[static_cast<std::size_t>(j)];
    out.theta[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

JetPoint group_inverse(const JetPoint& g) {
  if (g.theta.empty()) throw Error(ErrorCode::InvalidArgument, "jet point needs k >= 0");
  const int k = g.k();
  const auto w = scaled_powers(g.x, k);
  JetPoint h{-g.x, std::vector<double>(g.theta.size())};
  // g.theta_i + sum_{j<=i} w_{i-j} h.theta_j = 0, solved for h.theta_i (w_0 = 1).
  for (int i = 0; i <= k; ++i) {
    double s = -g.theta[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) s -= w[static_cast<std::size_t>(i - j)] * h.theta[static_cast<std::size_t>(j)];
    h.theta[static_cast<std::size_t>(i)] = s;
  }
  return h;
}

JetPoint carnot_dilate(const JetPoint& g, double u) {
  if (!(u > 0.0)) throw Error(ErrorCode::InvalidArgument, "dilation factor must be positive");
  JetPoint out{u * g.x, g.theta};
  double w = u;
  for (double& t : out.theta) {
    t *= w;
    w *= u;
  }
  return out;
}

JetPoint reflect_theta0(const JetPoint& g) {
  JetPoint out = g;
  if (!out.theta.empty()) out.theta[0] = -out.theta[0];
  return out;
}

JetPoint reflect_all_theta(const JetPoint& g) {
  JetPoint out = g;
  for (double& t : out.theta) t = -t;
  return out;
}

std::pair<double, double> project_plane(const JetPoint& g) {
  return {g.x, g.theta.empty() ? 0.0 : g.theta[0]};
}

std::vector<double> frame_X(const JetPoint& g) {
  std::vector<double> v(g.theta.size() + 1, 0.0);
  v[0] = 1.0;
  return v;
}

std::vector<double> frame_Y(const JetPoint& g) {
  const auto w = scaled_powers(g.x, g.k());
  std::vector<double> v(g.theta.size() + 1, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) v[i + 1] = w[i];
  return v;
}

JetPoint JetTrajectory::point(std::size_t i) const {
  const DVec& s = path.states[i];
  return {s[0] + x_offset, DVec(s.begin() + 2, s.end())};
}

JetPoint JetTrajectory::at(double t) const {
  const DVec s = path.at(t);
  return {s[0] + x_offset, DVec(s.begin() + 2, s.end())};
}

void JetTrajectory::write_csv(std::ostream& os) const {
  std::vector<std::string> header{"t", "x"};
  for (int i = 0; i <= k; ++i) header.push_back("theta" + std::to_string(i));
  CsvWriter csv(os, header);
  for (std::size_t i = 0; i < size(); ++i) {
    const JetPoint p = point(i);
    std::vector<double> row{path.times[i], p.x};
    row.insert(row.end(), p.theta.begin(), p.theta.end());
    csv.row(row);
  }
}

JetTrajectory integrate_jet_from(const Polynomial& F, const JetPoint& start, double x_start, double p0,
                                 Interval t_span, double tol) {
  if (start.theta.empty()) throw Error(ErrorCode::InvalidArgument, "jet point needs k >= 0");
  const double f0 = F(x_start);
  if (std::abs(p0 * p0 + f0 * f0 - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "reduced start is not on the energy level p^2 + F^2 = 1");
  const int k = start.k();
  const double off = start.x - x_start;

  FlowSpec spec;
  spec.G = F;
  spec.extra = static_cast<std::size_t>(k) + 1;
  spec.extra_rhs = [F, k, off](double x, double, double* out) {
    const double f = F(x);
    const double xc = x + off;
    double w = 1.0;
    for (int i = 0; i <= k; ++i) {
      out[i] = w * f;
      w *= xc / (i + 1);
    }
  };
  // Defect of d theta_i = xc^i / i! d theta_0 over one step, with theta_0'
  // taken from the step's own interpolant.
  spec.step_defect = [k, off](const FlowStep& st) {
    double worst = 0.0;
    const double a = st.t0, b = st.t1();
    for (int i = 1; i <= k; ++i) {
      const std::size_t idx = 2 + static_cast<std::size_t>(i);
      const double d_theta = st.component(b, idx) - st.component(a, idx);
      auto rate = [&](double t) {
        const double xc = st.component(t, 0) + off;
        double w = 1.0;
        for (int j = 1; j <= i; ++j) w *= xc / j;
        return w * st.derivative(t, 2);
      };
      worst = std::max(worst, std::abs(d_theta - gauss5(rate, a, b)));
    }
    return worst;
  };

  DVec y0{x_start, p0};
  y0.insert(y0.end(), start.theta.begin(), start.theta.end());
  JetTrajectory out;
  out.F = F;
  out.k = k;
  out.x_offset = off;
  out.path = run_flow(spec, y0, t_span, tol);
  return out;
}

JetTrajectory integrate_jet(const Polynomial& F, const HillInterval& I, const JetPoint& start, double x_start,
                            double p_sign, Interval t_span, double tol) {
  if (!I.contains(x_start)) throw Error(ErrorCode::InvalidArgument, "x_start must lie in the hill interval");
  if (F.degree() > start.k() && !F.is_zero())
    throw Error(ErrorCode::InvalidArgument, "deg F must not exceed k");
  const double f = F(x_start);
  const double p0 = (p_sign < 0 ? -1.0 : 1.0) * std::sqrt(std::max(0.0, (1.0 - f) * (1.0 + f)));
  JetTrajectory out = integrate_jet_from(F, start, x_start, p0, t_span, tol);
  out.I = I;
  return out;
}

}  // namespace jetgeo
