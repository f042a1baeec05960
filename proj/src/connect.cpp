#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/tools/minima.hpp>

#include "json.hpp"
#include "jetgeo/experiments.hpp"
#include "jetgeo/optimize.hpp"
#include "jetgeo/parallel.hpp"

namespace jetgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec<3> diff(const MagneticPoint& p, const MagneticPoint& q) { return {p.x - q.x, p.y - q.y, p.z - q.z}; }

// Shooting parameters: G(x_start) = cos(phi), p(0) = sin(phi), G = a + b F.
struct Shot {
  double phi = 0.0, b = 0.0;
};

struct Problem {
  Polynomial F;
  MagneticPoint start, target;
  double f0 = 0.0;
  double max_T = 0.0;
  double tol = 1e-10;

  double a_of(const Shot& s) const { return std::cos(s.phi) - s.b * f0; }

  // Horizon: cut-time bound for x-periodic pencils, max_T otherwise.
  std::pair<double, GeodesicClass> horizon(const Shot& s) const {
    const double a = a_of(s);
    const Polynomial G = a + s.b * F;
    if (G.is_constant()) return {max_T, GeodesicClass::Line};
    auto h = hill_interval_containing(G, start.x);
    if (!h) return {max_T, GeodesicClass::Line};
    const GeodesicClass cls = classify(G, *h);
    if (cls != GeodesicClass::XPeriodic) return {max_T, cls};
    double bound = max_T;
    try {
      bound = cut_time_bound(F, a, s.b, *h, tol);
    } catch (const QuadratureToleranceNotMet& e) {
      // near-separatrix hills: the best estimate is still a usable cap
      if (e.error_estimate <= 1e-6 * std::abs(e.value)) bound = e.value;
    }
    return {std::min(max_T, bound), cls};
  }

  MagneticTrajectory shoot(const Shot& s, double T) const {
    return integrate_magnetic_p(F, a_of(s), s.b, start, std::sin(s.phi), {0.0, std::max(T, 1e-12)}, tol);
  }
};

struct Seed {
  double residual;
  Shot shot;
  double T;
  std::size_t node;
};

// Local minima of |c(t) - target| along one shot, refined on the dense output.
std::vector<Seed> scan_shot(const Problem& P, const Shot& s, std::size_t node, int keep) {
  MagneticTrajectory c;
  try {
    c = P.shoot(s, P.horizon(s).first);
  } catch (const Error&) {
    return {};
  }
  auto dist = [&](double t) { return norm(diff(c.at(t), P.target)); };
  const auto& ts = c.path.times;
  std::vector<double> d(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) d[i] = dist(ts[i]);
  std::vector<Seed> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const bool left = i == 0 || d[i] <= d[i - 1];
    const bool right = i + 1 == ts.size() || d[i] <= d[i + 1];
    if (!(left && right)) continue;
    const double lo = i == 0 ? ts[0] : ts[i - 1];
    const double hi = i + 1 == ts.size() ? ts[i] : ts[i + 1];
    auto r = boost::math::tools::brent_find_minima(dist, lo, hi, 40);
    out.push_back({r.second, s, r.first, node});
  }
  std::sort(out.begin(), out.end(), [](const Seed& x, const Seed& y) { return x.residual < y.residual; });
  if (out.size() > static_cast<std::size_t>(keep)) out.resize(static_cast<std::size_t>(keep));
  return out;
}

struct Refined {
  Shot shot;
  double T = 0.0;
  std::size_t evals = 0;
};

Refined refine(const Problem& P, const Seed& seed, double dphi, double db, const ConnectConfig& cfg) {
  std::size_t evals = 0;
  auto residual_vec = [&](const Vec<3>& v) -> Vec<3> {
    ++evals;
    const Shot s{v[0], v[1]};
    const double cap = P.horizon(s).first;
    const double T = std::clamp(v[2], 0.0, cap);
    const double pen = std::max(0.0, v[2] - cap) + std::max(0.0, -v[2]);
    try {
      Vec<3> r = diff(P.shoot(s, T).at(T), P.target);
      // keep the penalty inside the vector so Gauss-Newton sees it too
      r[0] += std::copysign(pen, r[0]);
      return r;
    } catch (const Error&) {
      return {kInf, kInf, kInf};
    }
  };
  auto objective = [&](const Vec<3>& v) { return norm(residual_vec(v)); };

  NelderMeadOptions opt;
  opt.diameter_tol = cfg.simplex_diameter;
  opt.max_evals = cfg.max_evals;
  const Vec<3> x0{seed.shot.phi, seed.shot.b, seed.T};
  const Vec<3> step{0.5 * dphi, 0.5 * db, 0.05 * (1.0 + seed.T)};
  auto nm = nelder_mead<3>(objective, x0, step, opt);
  Vec<3> x = gauss_newton_polish<3>(residual_vec, nm.x, 8);
  if (!(objective(x) <= nm.fx)) x = nm.x;
  return {{x[0], x[1]}, std::clamp(x[2], 0.0, P.horizon({x[0], x[1]}).first), evals};
}

ConnectResult make_result(const Problem& P, const Shot& s, double T) {
  ConnectResult r;
  r.a = P.a_of(s);
  r.b = s.b;
  const double p0 = std::sin(s.phi);
  r.p_sign = p0 < 0.0 ? -1.0 : 1.0;
  r.T = T;
  r.length = T;
  const auto [cap, cls] = P.horizon(s);
  r.cls = cls;
  r.cut_bound = cls == GeodesicClass::XPeriodic ? cap : kInf;
  r.trajectory = P.shoot(s, T);
  r.endpoint_residual = norm(diff(r.trajectory.at(T), P.target));
  return r;
}

}  // namespace

ConnectReport connect(const Polynomial& F, const MagneticPoint& start, const MagneticPoint& target,
                      const ConnectConfig& cfg) {
  if (norm(diff(start, target)) == 0.0) throw Error(ErrorCode::InvalidArgument, "start and target coincide");
  if (cfg.grid < 3) throw Error(ErrorCode::InvalidArgument, "grid needs at least 3 nodes");

  Problem P;
  P.F = F;
  P.start = start;
  P.target = target;
  P.f0 = F(start.x);
  P.tol = cfg.tol;
  const double dx = std::abs(target.x - start.x), dy = std::abs(target.y - start.y),
               dz = std::abs(target.z - start.z);
  P.max_T = cfg.max_T > 0.0 ? cfg.max_T : 3.0 * (dx + dy + dz) + 5.0;

  double b_max = cfg.b_max;
  if (!(b_max > 0.0)) {
    // |b| up to 4 / (variation of F within unit distance of the endpoints)
    const double lo = std::min(start.x, target.x) - 1.0, hi = std::max(start.x, target.x) + 1.0;
    double var = 0.0;
    for (int i = 0; i <= 400; ++i) var = std::max(var, std::abs(F(lo + (hi - lo) * i / 400.0) - P.f0));
    b_max = var > 0.0 ? 4.0 / var : 1.0;
  }

  // Grid over phi in [0, pi] for each sign of p, and b in [-b_max, b_max].
  const int m = cfg.grid;
  const double dphi = std::numbers::pi / (m - 1), db = 2.0 * b_max / (m - 1);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<Shot> nodes;
  for (int sign : {1, -1})
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double phi = i * dphi + cfg.jitter * dphi * U(rng);
        double b = -b_max + j * db + cfg.jitter * db * U(rng);
        phi = std::clamp(phi, 0.0, std::numbers::pi);
        nodes.push_back({sign * phi, b});
      }

  std::vector<std::vector<Seed>> per_node(nodes.size());
  parallel_for(
      nodes.size(), [&](std::size_t k) { per_node[k] = scan_shot(P, nodes[k], k, 3); }, cfg.threads);

  ConnectReport rep;
  rep.evaluations = nodes.size();
  std::vector<Seed> seeds;
  for (const auto& v : per_node) seeds.insert(seeds.end(), v.begin(), v.end());
  std::sort(seeds.begin(), seeds.end(), [](const Seed& x, const Seed& y) {
    if (x.residual != y.residual) return x.residual < y.residual;
    return x.node < y.node;
  });

  // Diverse starting points: skip seeds close to one already chosen.
  std::vector<Seed> starts;
  for (const Seed& s : seeds) {
    if (starts.size() >= static_cast<std::size_t>(cfg.refine_starts)) break;
    const bool near = std::any_of(starts.begin(), starts.end(), [&](const Seed& o) {
      return std::abs(o.shot.phi - s.shot.phi) <= 1.5 * dphi && std::abs(o.shot.b - s.shot.b) <= 1.5 * db &&
             std::abs(o.T - s.T) < 0.5;
    });
    if (!near) starts.push_back(s);
  }

  std::vector<Refined> refined(starts.size());
  parallel_for(
      starts.size(), [&](std::size_t k) { refined[k] = refine(P, starts[k], dphi, db, cfg); }, cfg.threads);

  std::vector<ConnectResult> results;
  for (const auto& r : refined) {
    rep.evaluations += r.evals;
    try {
      results.push_back(make_result(P, r.shot, r.T));
    } catch (const Error&) {
    }
  }

  // Abnormal segment when both points sit over the same critical x.
  if (std::abs(start.x - target.x) <= 1e-12 && is_critical_point(F, start.x)) {
    const double Dy = target.y - start.y;
    const double s = Dy < 0.0 ? -1.0 : 1.0;
    ConnectResult r;
    r.a = s;
    r.b = 0.0;
    r.p_sign = 1.0;
    r.T = r.length = std::abs(Dy);
    r.abnormal = true;
    r.cut_bound = kInf;
    r.trajectory = integrate_magnetic_p(F, s, 0.0, start, 0.0, {0.0, std::max(r.T, 1e-12)}, cfg.tol);
    r.endpoint_residual = norm(diff(r.trajectory.at(r.T), target));
    results.push_back(std::move(r));
  }

  auto accepted = [&](const ConnectResult& r) {
    return r.endpoint_residual <= cfg.match_tol && r.T <= r.cut_bound + 1e-9;
  };
  std::sort(results.begin(), results.end(), [&](const ConnectResult& x, const ConnectResult& y) {
    const bool ax = accepted(x), ay = accepted(y);
    if (ax != ay) return ax;
    if (ax) {
      if (x.T != y.T) return x.T < y.T;
      if (x.endpoint_residual != y.endpoint_residual) return x.endpoint_residual < y.endpoint_residual;
    } else {
      if (x.endpoint_residual != y.endpoint_residual) return x.endpoint_residual < y.endpoint_residual;
      if (x.T != y.T) return x.T < y.T;
    }
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  // A shot along the vertical line is the abnormal segment itself; report it once, as abnormal.
  auto ab = std::find_if(results.begin(), results.end(), [](const ConnectResult& r) { return r.abnormal; });
  if (ab != results.end() && accepted(*ab)) {
    const double T_ab = ab->T;
    std::rotate(results.begin(), ab, ab + 1);
    results.erase(std::remove_if(results.begin() + 1, results.end(),
                                 [&](const ConnectResult& r) { return std::abs(r.T - T_ab) <= 1e-6 && accepted(r); }),
                  results.end());
  }
  // drop duplicates of the same geodesic segment
  for (const auto& r : results) {
    const bool dup = std::any_of(rep.ranked.begin(), rep.ranked.end(), [&](const ConnectResult& o) {
      return std::abs(o.a - r.a) < 1e-6 && std::abs(o.b - r.b) < 1e-6 && o.p_sign == r.p_sign &&
             std::abs(o.T - r.T) < 1e-6;
    });
    if (!dup) rep.ranked.push_back(r);
  }
  rep.accepted = static_cast<std::size_t>(std::count_if(rep.ranked.begin(), rep.ranked.end(), accepted));
  if (rep.accepted > 0) rep.best = rep.ranked.front();
  else rep.error = ErrorCode::NoCandidate;
  return rep;
}

std::string ConnectReport::to_json() const {
  auto one = [](const ConnectResult& r) {
    nlohmann::json j{{"a", r.a},
                     {"b", r.b},
                     {"p_sign", r.p_sign},
                     {"T", r.T},
                     {"length", r.length},
                     {"endpoint_residual", r.endpoint_residual},
                     {"class", to_string(r.cls)},
                     {"abnormal", r.abnormal}};
    if (std::isfinite(r.cut_bound)) j["cut_time_bound"] = r.cut_bound;
    return j;
  };
  nlohmann::json j;
  j["accepted"] = accepted;
  j["evaluations"] = evaluations;
  if (error) j["error"] = std::string(jetgeo::to_string(*error));
  if (best) j["best"] = one(*best);
  auto& arr = j["ranked"] = nlohmann::json::array();
  for (const auto& r : ranked) arr.push_back(one(r));
  return j.dump(2);
}

}  // namespace jetgeo
