#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "jetgeo/errors.hpp"
#include "jetgeo/io.hpp"
#include "jetgeo/periods.hpp"

using namespace jetgeo;

TEST_CASE("number formatting round-trips") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1e-300, 6.283185307179586, 1.0 / 3.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("csv") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  std::ostringstream os;
  {
    CsvWriter w(os, {"s", "theta2", "err"});
    w.row({0.5, -1.25, 1e-12});
    w.row_text({"x,y", "1", "2"});
    CHECK_THROWS_AS(w.row({1.0}), Error);
  }
  CHECK(os.str() == "s,theta2,err\r\n0.5,-1.25,1e-12\r\n\"x,y\",1,2\r\n");
}

TEST_CASE("polynomial and pencil json") {
  const Polynomial F = parse_polynomial("[1,0,-2]");
  CHECK(F.degree() == 2);
  CHECK(F[2] == -2.0);
  CHECK(polynomial_to_json(F) == "[1,0,-2]");
  CHECK(parse_polynomial(polynomial_to_json(Polynomial{0.1, 0.2})).degree() == 1);
  CHECK_THROWS_AS(parse_polynomial("[1,"), Error);
  CHECK_THROWS_AS(parse_polynomial("{\"a\":1}"), Error);
  CHECK_THROWS_AS(parse_polynomial("[1,\"x\"]"), Error);
  const auto [a, b] = parse_pencil(R"({"a":0.25,"b":-1})");
  CHECK(a == 0.25);
  CHECK(b == -1.0);
  const auto p = parse_pencil(pencil_to_json(-0.5, 2.0));
  CHECK(p.first == -0.5);
  CHECK(p.second == 2.0);
  CHECK_THROWS_AS(parse_pencil(R"({"a":1})"), Error);
}

TEST_CASE("report json") {
  const Polynomial X{0, 1};
  const auto rep = period_report(X, 0.0, 1.0, *hill_interval_containing(X, 0.0));
  const std::string j = rep.to_json();
  CHECK(j.find("\"L\"") != std::string::npos);
  CHECK(j.find("\"theta2\"") != std::string::npos);
}

TEST_CASE("svg") {
  std::ostringstream os;
  write_svg(os, {{"a<b", "#ff0000", {{0, 0}, {1, 1}, {2, 0}}}}, "t & t");
  const std::string s = os.str();
  CHECK(s.find("<svg") != std::string::npos);
  CHECK(s.find("polyline") != std::string::npos);
  CHECK(s.find("a&lt;b") != std::string::npos);
  CHECK(s.find("t &amp; t") != std::string::npos);
}

TEST_CASE("error codes have names") {
  CHECK(to_string(ErrorCode::NotHillInterval) == "NotHillInterval");
  CHECK(to_string(ErrorCode::NoCandidate) == "NoCandidate");
  const Error e(ErrorCode::NotOdd, "m");
  CHECK(e.code() == ErrorCode::NotOdd);
}
