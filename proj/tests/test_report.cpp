#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <regex>

#include "support.hpp"
#include "wavedisk/report.hpp"

using namespace wavedisk;
using namespace testing_support;

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(-1e-300) == "-1e-300");
  CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
  Json j;
  j["a"] = 0.1;
  j["b"] = NAN;
  j["c"] = {1, 2.5, "x"};
  j["d"] = true;
  CHECK(dump_json(j) == "{\n  \"a\": 0.10000000000000001,\n  \"b\": null,\n  \"c\": [\n    1,\n    2.5,\n    \"x\"\n  ],\n  \"d\": true\n}\n");
  // 17 digits round-trip every double.
  for (double v : {1.0 / 3.0, std::sqrt(2.0), 6.02214076e23, -2.618033988749895})
    CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("analyze report at the critical speed") {
  const Json j = analyze_report(saturating_cubic(Rational(1)), Rational(2), Rational(1));
  CHECK(j["schema"] == "1");
  CHECK(j["regime"]["tag"] == "critical");
  REQUIRE(j["boundary_equilibria"]["U1"].size() == 1);
  CHECK(j["boundary_equilibria"]["U1"][0]["label"] == "E3");
  bool e3 = false;
  for (const auto& cm : j["center_manifolds"])
    if (cm["base"] == "E3" && cm["chart"] == "U1") {
      e3 = true;
      CHECK(cm["reduced_original_exact"][0] == "-1");
      CHECK(cm["reduced_original_exact"][1] == "-2");
      CHECK(cm["reduced_original_exact"][2] == "-1");
    }
  CHECK(e3);
  CHECK(j["center_manifolds"][0]["series_exact"][3] == "1/4");
  const Json& mism = j["center_manifolds"][0]["reference_form_mismatches"];
  REQUIRE(mism.size() == 2);
  std::map<std::string, std::string> computed;
  for (const auto& m : mism) computed[m["monomial"].get<std::string>()] = m["computed"].get<std::string>();
  CHECK(computed.at("u*w^2") == "-5/2");
  CHECK(computed.at("w^3") == "-3/2");
  CHECK(j["blowups"][0]["summary"] == Json::array({"none", "saddle", "saddle"}));
  CHECK(j["symmetry"]["odd_symmetric"] == true);
  std::set<std::string> labels;
  for (const auto& [chart, list] : j["boundary_equilibria"].items())
    for (const auto& e : list) labels.insert(e["label"].get<std::string>());
  CHECK(labels == std::set<std::string>{"E3", "E6", "E7"});
}

TEST_CASE("analyze report, super- and subcritical") {
  const Json a = analyze_report(saturating_cubic(Rational(1)), Rational(3), Rational(1));
  std::set<std::string> labels;
  for (const auto& [chart, list] : a["boundary_equilibria"].items())
    for (const auto& e : list) labels.insert(e["label"].get<std::string>());
  for (const char* l : {"E1", "E2", "E4", "E5", "E6"}) CHECK(labels.count(l) == 1);
  CHECK(a["boundary_equilibria"]["U1"][0]["stability"] == "source");
  CHECK(a["boundary_equilibria"]["U1"][1]["stability"] == "saddle");
  REQUIRE(a["finite_equilibria"].size() == 1);
  CHECK(a["finite_equilibria"][0]["label"] == "E0");

  const Json b = analyze_report(saturating_cubic(Rational(1)), Rational(1), Rational(1));
  CHECK(b["boundary_equilibria"]["U1"].empty());
  CHECK(b["regime"]["tag"] == "subcritical");
}

TEST_CASE("serialization is byte-identical across runs") {
  const auto f = saturating_cubic(Rational(1, 2));
  CHECK(dump_json(analyze_report(f, Rational(3), Rational(1, 2))) ==
        dump_json(analyze_report(f, Rational(3), Rational(1, 2), {{-10, 10, -10, 10}, 5, false})));
  const auto cells_a = sweep({1.0}, {1.5, 2.0}), cells_b = sweep_serial({1.0}, {1.5, 2.0});
  CHECK(sweep_csv(cells_a) == sweep_csv(cells_b));
  Json ja = Json::array(), jb = Json::array();
  for (const auto& c : cells_a) ja.push_back(to_json(c));
  for (const auto& c : cells_b) jb.push_back(to_json(c));
  CHECK(dump_json(ja) == dump_json(jb));
  const std::string csv = sweep_csv(cells_a);
  CHECK(csv.rfind("s,c,regime,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("profile csv") {
  ProfileSamples p;
  p.xi = {0, 0.5};
  p.phi = {1, 0.25};
  p.psi = {-1, 0.1};
  CHECK(profile_csv(p) == "xi,phi,psi\n0,1,-1\n0.5,0.25,0.10000000000000001\n");
}

TEST_CASE("portrait stays in the unit disk and uses primitives only") {
  PortraitOptions o;
  o.n_seeds = 8;
  for (double c : {1.0, 2.0, 3.0}) {
    const PortraitDocument d = build_portrait(Rational(1), to_rational(c), o);
    CHECK(d.max_radius() <= 1 + 1e-9);
    CHECK(!d.lines.empty());
    const std::string svg = portrait_svg(d);
    std::regex tag("<([a-zA-Z]+)");
    std::set<std::string> tags;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag); it != std::sregex_iterator(); ++it)
      tags.insert((*it)[1]);
    for (const auto& t : tags) CHECK((t == "svg" || t == "path" || t == "circle" || t == "text" || t == "g"));
    CHECK(svg.find("http") == svg.find("http://www.w3.org/2000/svg"));
    CHECK(svg == portrait_svg(build_portrait(Rational(1), to_rational(c), o)));
    const Json j = to_json(d);
    CHECK(j["schema"] == "1");
  }
  // Two positive connections into E0 above the minimal speed: they start on the
  // boundary, stay in phi > 0 and end near the origin.
  const PortraitDocument d3 = build_portrait(Rational(1), Rational(3), o);
  int into_origin = 0;
  for (const auto& l : d3.lines) {
    if (l.tag != "E1" && l.tag != "E2") continue;
    bool positive = l.points.front().y[2] < 1e-3;
    for (const auto& p : l.points) positive = positive && p.y[0] > 0;
    if (positive && std::hypot(l.points.back().y[0], l.points.back().y[1]) < 0.1) ++into_origin;
  }
  CHECK(into_origin == 2);
  // Below it nothing seeded at infinity reaches the origin without a sign change.
  const PortraitDocument d1 = build_portrait(Rational(1), Rational(1), o);
  for (const auto& l : d1.lines) {
    if (l.tag != "far_field") continue;
    bool crossed = false;
    for (const auto& p : l.points) crossed = crossed || p.y[0] < 0;
    CHECK(crossed);
  }
}
