#include "jetgeo/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"

#include "jetgeo/errors.hpp"

namespace jetgeo {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os), width_(header.size()) {
  row_text(header);
}

void CsvWriter::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row_text(cells);
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw Error(ErrorCode::InvalidArgument, "CSV row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << csv_escape(cells[i]);
  os_ << "\r\n";
}

Polynomial parse_polynomial(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("polynomial JSON: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "polynomial must be a JSON array of coefficients");
  std::vector<double> c;
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, "polynomial coefficients must be numbers");
    c.push_back(v.get<double>());
  }
  return Polynomial(std::move(c));
}

std::string polynomial_to_json(const Polynomial& F) {
  std::string s = "[";
  const auto c = F.coeffs();
  if (c.empty()) s += "0";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + format_double(c[i]);
  return s + "]";
}

std::pair<double, double> parse_pencil(const std::string& json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    return {j.at("a").get<double>(), j.at("b").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("pencil JSON: ") + e.what());
  }
}

std::string pencil_to_json(double a, double b) {
  return "{\"a\":" + format_double(a) + ",\"b\":" + format_double(b) + "}";
}

void write_svg(std::ostream& os, const std::vector<SvgSeries>& series, const std::string& title, int width,
               int height) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!(xmax > xmin)) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (!(ymax > ymin)) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  const double margin = 40.0;
  const double sx = (width - 2 * margin) / (xmax - xmin);
  const double sy = (height - 2 * margin) / (ymax - ymin);
  auto esc = [](const std::string& t) {
    std::string o;
    for (char c : t) {
      if (c == '<') o += "&lt;";
      else if (c == '>') o += "&gt;";
      else if (c == '&') o += "&amp;";
      else o += c;
    }
    return o;
  };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << margin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << esc(title)
     << "</text>\n";
  int k = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << (s.color.empty() ? "black" : s.color)
       << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      os << format_double(margin + (x - xmin) * sx) << ',' << format_double(height - margin - (y - ymin) * sy)
         << ' ';
    }
    os << "\"/>\n";
    if (!s.label.empty())
      os << "<text x=\"" << width - 200 << "\" y=\"" << 24 + 16 * k << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
         << (s.color.empty() ? "black" : s.color) << "\">" << esc(s.label) << "</text>\n";
    ++k;
  }
  os << "</svg>\n";
}

}  // namespace jetgeo
