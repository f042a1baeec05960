#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "jetgeo/experiments.hpp"
#include "jetgeo/io.hpp"

namespace jetgeo {

FigureKind parse_figure_kind(const std::string& s) {
  if (s == "x-periodic") return FigureKind::XPeriodic;
  if (s == "homoclinic") return FigureKind::Homoclinic;
  if (s == "turn-back") return FigureKind::TurnBack;
  if (s == "direct-type") return FigureKind::DirectType;
  if (s == "minimizer-sequence") return FigureKind::MinimizerSequence;
  throw Error(ErrorCode::InvalidArgument, "unknown figure kind '" + s + "'");
}

std::string to_string(FigureKind k) {
  switch (k) {
    case FigureKind::XPeriodic: return "x-periodic";
    case FigureKind::Homoclinic: return "homoclinic";
    case FigureKind::TurnBack: return "turn-back";
    case FigureKind::DirectType: return "direct-type";
    case FigureKind::MinimizerSequence: return "minimizer-sequence";
  }
  return "?";
}

namespace {

struct Defaults {
  Polynomial F;
  double x0, half_span;
};

Defaults defaults(FigureKind k) {
  switch (k) {
    case FigureKind::XPeriodic: return {Polynomial{0, 1}, 0.0, 2.0 * std::numbers::pi};
    case FigureKind::Homoclinic: return {Polynomial{1, 0, -2}, 1.0, 4.0};
    case FigureKind::TurnBack: return {Polynomial{1, 0, -6, 4}, 0.5, 6.0};
    case FigureKind::DirectType:
    case FigureKind::MinimizerSequence: return {Polynomial{1, 0, -24, 48, -24}, 0.5, 5.0};
  }
  return {};
}

std::vector<std::pair<double, double>> plane_points(const MagneticTrajectory& c, double t0, double t1, int n = 600) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= n; ++i) {
    const MagneticPoint p = c.at(t0 + (t1 - t0) * i / n);
    pts.emplace_back(p.x, p.y);
  }
  return pts;
}

}  // namespace

std::vector<std::filesystem::path> figure_data(FigureKind kind, const FigureParams& params,
                                               const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const Defaults d = defaults(kind);
  const Polynomial F = params.F.value_or(d.F);
  const double x0 = params.x0.value_or(d.x0);
  double H = params.half_span > 0.0 ? params.half_span : d.half_span;
  if (kind == FigureKind::MinimizerSequence && !params.ns.empty())
    H = std::max(H, *std::max_element(params.ns.begin(), params.ns.end()) + 0.5);

  const auto c = integrate_magnetic(F, 0.0, 1.0, {x0, 0.0, 0.0}, 1.0, {-H, H});
  std::vector<SvgSeries> series{{"c (x, theta0)", "#1f77b4", plane_points(c, -H, H)}};

  const std::string stem = to_string(kind);
  const auto csv_path = out_dir / (stem + ".csv");
  std::ofstream csv_os(csv_path, std::ios::binary);
  if (!csv_os) throw Error(ErrorCode::InvalidArgument, "cannot write " + csv_path.string());

  if (kind != FigureKind::MinimizerSequence) {
    CsvWriter csv(csv_os, {"t", "x", "theta0"});
    for (double t : c.sample_times()) {
      const MagneticPoint p = c.at(t);
      csv.row({t, p.x, p.y});
    }
  } else {
    CsvWriter csv(csv_os, {"series", "t", "x", "theta0"});
    for (double t : c.sample_times()) {
      const MagneticPoint p = c.at(t);
      csv.row_text({"c_d", format_double(t), format_double(p.x), format_double(p.y)});
    }
    const char* colors[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::size_t ci = 0;
    for (double n : params.ns) {
      const ConnectReport rep = connect(F, c.at(-n), c.at(n), params.connect);
      if (!rep.best) continue;
      const auto& cn = rep.best->trajectory;
      const std::string label = "c_" + format_double(n);
      for (std::size_t i = 0; i < cn.size(); ++i) {
        const MagneticPoint p = cn.point(i);
        csv.row_text({label, format_double(cn.path.times[i]), format_double(p.x), format_double(p.y)});
      }
      series.push_back({label + " (T = " + format_double(rep.best->T) + ")", colors[ci++ % 5],
                        plane_points(cn, 0.0, rep.best->T)});
    }
  }
  std::vector<std::filesystem::path> written{csv_path};
  if (params.svg) {
    const auto svg_path = out_dir / (stem + ".svg");
    std::ofstream svg_os(svg_path, std::ios::binary);
    write_svg(svg_os, series, stem + ": F = " + F.to_string());
    written.push_back(svg_path);
  }
  return written;
}

}  // namespace jetgeo
