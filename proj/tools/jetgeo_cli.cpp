// jetgeo command line: classification, tracing, period integrals, scans and
// the shooting / counterexample experiments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "jetgeo/errors.hpp"
#include "jetgeo/experiments.hpp"
#include "jetgeo/io.hpp"
#include "jetgeo/magnetic.hpp"
#include "jetgeo/periods.hpp"
#include "jetgeo/reduced_flow.hpp"
#include "jetgeo/scans.hpp"

using namespace jetgeo;
using nlohmann::json;

namespace {

// Options from a JSON config file, appended after the subcommand unless given
// on the command line. Keys are long option names without dashes.
std::vector<std::string> with_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") path = args[i + 1];
  if (path.empty()) return args;
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::InvalidArgument, "cannot read config " + path);
  const json cfg = json::parse(is);
  if (!cfg.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
  auto scalar = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_double(v.get<double>());
    return v.dump();  // objects, e.g. a pencil
  };
  for (const auto& [key, v] : cfg.items()) {
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
    if (given) continue;
    if (v.is_boolean()) {
      if (v.get<bool>()) args.push_back(flag);
      continue;
    }
    args.push_back(flag);
    // polynomial coefficient arrays stay one JSON token; other arrays expand
    if (v.is_array() && key != "poly")
      for (const auto& e : v) args.push_back(scalar(e));
    else
      args.push_back(v.is_array() ? v.dump() : scalar(v));
  }
  return args;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  return file;
}

std::vector<double> parse_grid(const std::string& spec) {
  // "lo:hi:points" (linear), "log:lo:hi:points" or "v1,v2,..."
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  if (spec.find(':') != std::string::npos) {
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    const bool log = parts.size() == 4 && parts[0] == "log";
    if (log) parts.erase(parts.begin());
    if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "grid spec is lo:hi:points");
    const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
    const int n = std::stoi(parts[2]);
    return log ? logspace(lo, hi, n) : linspace(lo, hi, n);
  }
  std::vector<double> g;
  for (std::string p; std::getline(ss, p, ',');) g.push_back(std::stod(p));
  return g;
}

MagneticPoint point3(const std::vector<double>& v) { return {v.at(0), v.at(1), v.at(2)}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesics of jet spaces J^k(R,R) and magnetic spaces R^3_F"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config;
  std::uint64_t seed = 1;
  app.add_option("--config", config, "JSON file with option defaults");
  app.add_option("--seed", seed, "seed for multi-start jitter");

  std::string poly = "[1,0,-2]";
  double tol = 1e-10;

  // classify
  auto* cls = app.add_subcommand("classify", "hill intervals of F in a window and their geodesic classes");
  std::vector<double> window{-10, 10};
  cls->add_option("--poly", poly, "ascending coefficients as JSON")->required();
  cls->add_option("--window", window, "search window a b")->expected(2);

  // trace
  auto* trace = app.add_subcommand("trace", "integrate a magnetic geodesic and write t,x,y,z");
  std::vector<double> pencil{0, 1}, start{0, 0, 0}, span{0, 10}, target;
  double p_sign = 1.0;
  std::string out;
  trace->add_option("--poly", poly)->required();
  trace->add_option("--pencil", pencil, "a b with G = a + b F")->expected(2);
  trace->add_option("--start", start, "x y z")->expected(3);
  trace->add_option("--span", span, "t0 t1 (must contain 0)")->expected(2);
  trace->add_option("--p-sign", p_sign, "sign of the initial x-momentum");
  trace->add_option("--out", out, "CSV path (default stdout)");
  trace->add_option("--tol", tol);

  // periods
  auto* per = app.add_subcommand("periods", "L, Delta y, Delta z, Theta1, Theta2 over a hill interval");
  std::vector<double> interval;
  per->add_option("--poly", poly)->required();
  per->add_option("--pencil", pencil)->expected(2);
  per->add_option("--interval", interval, "hill interval x0 x1 of G")->expected(2)->required();
  per->add_option("--tol", tol);

  // theta-scan
  auto* scan = app.add_subcommand("theta-scan", "Theta2 along a pencil family");
  std::string family = "direct", grid_spec;
  int points = 25;
  bool as_json = false;
  scan->add_option("--family", family, "direct | homoclinic:<n>");
  scan->add_option("--grid", grid_spec, "points, lo:hi:points, log:lo:hi:points or a,b,c");
  scan->add_option("--poly", poly, "direct-type F (family direct)");
  scan->add_option("--out", out, "CSV path (default stdout)");
  scan->add_flag("--json", as_json, "print the JSON report instead of CSV");
  scan->add_option("--tol", tol);

  // connect
  auto* con = app.add_subcommand("connect", "shoot magnetic geodesics between two points");
  ConnectConfig ccfg;
  con->add_option("--poly", poly)->required();
  con->add_option("--start", start)->expected(3)->required();
  con->add_option("--target", target)->expected(3)->required();
  con->add_option("--tol", ccfg.match_tol, "endpoint match tolerance");
  con->add_option("--grid", ccfg.grid, "grid nodes per axis");
  con->add_option("--b-max", ccfg.b_max);
  con->add_option("--max-T", ccfg.max_T);
  con->add_option("--starts", ccfg.refine_starts, "local refinements");
  con->add_option("--threads", ccfg.threads);

  // counterexample
  auto* cex = app.add_subcommand("counterexample", "three-piece competitor for F = 1 - 2x^(2m+1)");
  int m = 1;
  std::vector<double> n_grid = default_counterexample_grid();
  bool as_csv = false;
  cex->add_option("--m", m);
  cex->add_option("--n-grid", n_grid);
  cex->add_flag("--csv", as_csv, "CSV table instead of JSON");
  cex->add_option("--tol", tol);

  // sign-time
  auto* sgn = app.add_subcommand("sign-time", "time after which y keeps its sign");
  double T_max = 50.0;
  sgn->add_option("--poly", poly)->required();
  sgn->add_option("--pencil", pencil)->expected(2);
  sgn->add_option("--start", start)->expected(3);
  sgn->add_option("--p-sign", p_sign);
  sgn->add_option("--T-max", T_max);

  // figure
  auto* fig = app.add_subcommand("figure", "plane projections as CSV and SVG");
  std::string kind = "homoclinic", out_dir = "figures";
  std::vector<double> ns{2, 3, 4};
  fig->add_option("--kind", kind, "x-periodic | homoclinic | turn-back | direct-type | minimizer-sequence");
  fig->add_option("--out", out_dir, "output directory");
  fig->add_option("--poly", poly, "override the default polynomial");
  fig->add_option("--n", ns, "n values for minimizer-sequence");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = with_config(args);
    std::reverse(args.begin(), args.end());  // CLI11 takes the vector reversed
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::ofstream file;
    if (*cls) {
      const Polynomial F = parse_polynomial(poly);
      json j = json::array();
      for (const auto& h : hill_intervals(F, {window[0], window[1]})) {
        json e{{"interval", {h.lo, h.hi}},
               {"kinds", {to_string(h.lo_kind), to_string(h.hi_kind)}},
               {"values", {h.lo_value, h.hi_value}}};
        e["class"] = F.is_constant() ? "Line" : to_string(classify(F, h));
        j.push_back(e);
      }
      std::cout << j.dump(2) << "\n";
    } else if (*trace) {
      const Polynomial F = parse_polynomial(poly);
      const auto c = integrate_magnetic(F, pencil[0], pencil[1], point3(start), p_sign, {span[0], span[1]}, tol);
      c.write_csv(open_out(out, file));
      std::cerr << "class " << to_string(c.cls) << ", energy residual " << c.energy_residual()
                << ", horizontality residual " << c.horizontality_residual() << "\n";
    } else if (*per) {
      const Polynomial F = parse_polynomial(poly);
      const Polynomial G = pencil[0] + pencil[1] * F;
      auto h = G.is_constant() ? std::nullopt : hill_interval_containing(G, 0.5 * (interval[0] + interval[1]));
      const double slack = 1e-9 * (1.0 + std::abs(interval[0]) + std::abs(interval[1]));
      if (!h || std::abs(h->lo - interval[0]) > slack || std::abs(h->hi - interval[1]) > slack)
        throw Error(ErrorCode::NotHillInterval, "interval is not a hill interval of G = a + b F");
      json j = json::parse(period_report(F, pencil[0], pencil[1], *h, tol).to_json());
      j["class"] = to_string(classify(G, *h));
      std::cout << j.dump(2) << "\n";
    } else if (*scan) {
      ScanReport rep;
      if (family == "direct") {
        if (!grid_spec.empty()) points = std::stoi(grid_spec);
        rep = theta2_scan_direct(scan->count("--poly") ? parse_polynomial(poly) : Polynomial{1, 0, -24, 48, -24},
                                 points, tol);
      } else if (family.rfind("homoclinic:", 0) == 0) {
        const int n = std::stoi(family.substr(11));
        rep = grid_spec.empty() ? theta2_scan_homoclinic(n, Interval{0.25, 16.0}, points, tol)
                                : theta2_scan_homoclinic(n, parse_grid(grid_spec), tol);
      } else {
        throw Error(ErrorCode::InvalidArgument, "family must be direct or homoclinic:<n>");
      }
      for (const auto& note : rep.notes) std::cerr << note << "\n";
      if (as_json) std::cout << rep.to_json() << "\n";
      else rep.write_csv(open_out(out, file));
    } else if (*con) {
      ccfg.seed = seed;
      const auto rep = connect(parse_polynomial(poly), point3(start), point3(target), ccfg);
      std::cout << rep.to_json() << "\n";
      if (rep.error) {
        std::cerr << "error: " << to_string(*rep.error) << ": no candidate met the tolerance\n";
        return 3;
      }
    } else if (*cex) {
      const auto reps = counterexample_report(m, n_grid, tol);
      if (as_csv) {
        write_counterexample_csv(std::cout, reps);
      } else {
        json j = json::array();
        for (const auto& r : reps) j.push_back(json::parse(r.to_json()));
        std::cout << j.dump(2) << "\n";
      }
    } else if (*sgn) {
      const auto r = sign_time(parse_polynomial(poly), pencil[0], pencil[1], point3(start), p_sign, T_max);
      std::cout << r.to_json() << "\n";
    } else if (*fig) {
      FigureParams fp;
      if (fig->count("--poly")) fp.F = parse_polynomial(poly);
      fp.ns = ns;
      fp.connect.seed = seed;
      for (const auto& p : figure_data(parse_figure_kind(kind), fp, out_dir)) std::cout << p.string() << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
