#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "jetgeo/poly.hpp"

namespace jetgeo {

/// Locale-independent shortest round-trip formatting.
std::string format_double(double v);

/// RFC 4180 CSV with '.' as decimal separator.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);
  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  void row_text(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
  std::size_t width_;
};

std::string csv_escape(const std::string& cell);

/// Ascending coefficients, e.g. "[1,0,-2]" for 1 - 2x^2.
Polynomial parse_polynomial(const std::string& json_text);
std::string polynomial_to_json(const Polynomial& F);

/// {"a":...,"b":...}
std::pair<double, double> parse_pencil(const std::string& json_text);
std::string pencil_to_json(double a, double b);

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
};

/// Minimal SVG document with one polyline per series, scaled to fit.
void write_svg(std::ostream& os, const std::vector<SvgSeries>& series, const std::string& title,
               int width = 800, int height = 500);

}  // namespace jetgeo
