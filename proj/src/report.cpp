#include "wavedisk/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wavedisk {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_json(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_number(v) : "null");
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        os << inner;
        write_json(os, j[k], indent + 1);
        os << (k + 1 < j.size() ? ",\n" : "\n");
      }
      os << pad << ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      std::size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        os << inner << Json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 1);
        os << (k + 1 < j.size() ? ",\n" : "\n");
      }
      os << pad << '}';
      return;
    }
    default: os << j.dump();
  }
}

Json vec(const Vec2& p) { return Json::array({p.x, p.y}); }

Json mat(const Mat2& m) { return Json::array({Json::array({m[0][0], m[0][1]}), Json::array({m[1][0], m[1][1]})}); }

template <typename T>
Json list(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x);
  return a;
}

Json exact_list(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string dump_json(const Json& j) {
  std::ostringstream os;
  write_json(os, j, 0);
  os << '\n';
  return os.str();
}

Json to_json(const Regime& r) {
  Json j;
  j["tag"] = to_string(r.tag);
  j["discriminant"] = r.discriminant;
  return j;
}

Json to_json(const Equilibrium& e) {
  Json j;
  j["label"] = e.label;
  j["chart"] = to_string(e.chart);
  j["coords"] = vec(e.coords);
  if (e.exact_coords) j["coords_exact"] = Json::array({to_string(e.exact_coords->x), to_string(e.exact_coords->y)});
  j["stability"] = to_string(e.stability);
  j["eigenvalues"] = Json::array();
  for (const auto& ev : e.eigenvalues) j["eigenvalues"].push_back(Json::array({ev.real(), ev.imag()}));
  j["jacobian"] = mat(e.jacobian);
  return j;
}

Json to_json(const CenterManifold& cm) {
  Json j;
  j["base"] = cm.base.label;
  j["chart"] = to_string(cm.base.chart);
  j["coords"] = vec(cm.base.coords);
  j["order"] = cm.order;
  j["mu"] = cm.mu;
  j["P"] = mat(cm.P);
  j["series"] = list(cm.series);
  j["reduced"] = list(cm.reduced);
  if (cm.series_exact) j["series_exact"] = exact_list(*cm.series_exact);
  if (cm.reduced_exact) j["reduced_exact"] = exact_list(*cm.reduced_exact);
  if (cm.center_axis) j["center_axis"] = *cm.center_axis;
  if (cm.reduced_original) j["reduced_original"] = list(*cm.reduced_original);
  if (cm.reduced_original_exact) j["reduced_original_exact"] = exact_list(*cm.reduced_original_exact);
  return j;
}

Json to_json(const BlowupReport& b) {
  Json j;
  j["parent"] = b.parent.label;
  j["chart"] = to_string(b.parent.chart);
  j["summary"] = list(b.summary());
  j["directions"] = Json::array();
  for (const auto& ch : b.charts) {
    Json d;
    d["direction"] = to_string(ch.direction);
    d["rescale_power"] = ch.rescale_power;
    d["equilibria"] = Json::array();
    for (const auto& e : ch.equilibria) d["equilibria"].push_back(to_json(e));
    j["directions"].push_back(d);
  }
  return j;
}

Json to_json(const WaveReport& w) {
  Json j;
  j["s"] = w.s;
  j["c"] = w.c;
  j["regime"] = to_json(w.regime);
  j["orbit_class"] = to_string(w.orbit_class);
  Json seed;
  seed["label"] = to_string(w.seed.label);
  seed["branch"] = to_string(w.seed.branch);
  seed["eps"] = w.seed.eps;
  seed["chart_point"] = vec(w.seed.chart_point);
  seed["plane"] = vec(w.seed.plane);
  j["seed"] = seed;
  j["phi_zero_crossings"] = w.phi_zero_crossings;
  j["psi_zero_crossings"] = w.psi_zero_crossings;
  j["phi_at_psi_crossings"] = list(w.phi_at_psi_crossings);
  j["fate"] = {{"tag", to_string(w.fate.tag)}, {"label", w.fate.label}};
  j["asymptotic_rate"] = optional_number(w.asymptotic_rate);
  j["eps_robust"] = w.eps_robust ? Json(*w.eps_robust) : Json(nullptr);
  j["profile_rows"] = w.profile ? Json(w.profile->size()) : Json(nullptr);
  return j;
}

Json analyze_report(const ReactionTerm& f, const Rational& c, const std::optional<Rational>& s,
                    const AnalyzeOptions& opts) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "analyze";
  j["reaction"] = f.source().empty() ? to_string(f.numerator(), "u") + " / (" + to_string(f.denominator(), "u") + ")"
                                     : f.source();
  if (s) {
    j["s"] = s->get_d();
    j["s_exact"] = to_string(*s);
  }
  j["c"] = c.get_d();
  j["c_exact"] = to_string(c);

  if (s) {
    j["regime"] = to_json(regime_of(*s, c));
  } else {
    try {
      const double cs = minimal_speed_spectral(f);
      const double cd = c.get_d();
      const RegimeTag tag = std::abs(cd - cs) <= 1e-12 ? RegimeTag::critical
                            : cd > cs                  ? RegimeTag::supercritical
                                                       : RegimeTag::subcritical;
      j["regime"] = {{"tag", to_string(tag)}, {"minimal_speed", cs}};
    } catch (const ModelError& e) {
      j["regime"] = {{"tag", nullptr}, {"error", e.what()}};
    }
  }

  const PlanarSystem poly = desingularize(make_tw_system(f, c));
  j["field"] = {{"phi", to_string(poly.rhs_phi.num, "phi", "psi")}, {"psi", to_string(poly.rhs_psi.num, "phi", "psi")}};

  std::vector<Equilibrium> finite = opts.parallel ? finite_equilibria(poly, opts.box) : finite_equilibria_serial(poly, opts.box);
  int other = 0;
  for (auto& e : finite)
    e.label = (e.coords.x == 0.0 && e.coords.y == 0.0) ? "E0" : "F" + std::to_string(++other);
  j["finite_equilibria"] = Json::array();
  for (const auto& e : finite) j["finite_equilibria"].push_back(to_json(e));

  Json center = Json::array();
  Json blowups = Json::array();
  auto try_center = [&](auto&& build, const Equilibrium& e) {
    try {
      center.push_back(to_json(build()));
    } catch (const std::exception& ex) {
      center.push_back({{"base", e.label}, {"chart", to_string(e.chart)}, {"error", ex.what()}});
    }
  };
  for (const auto& e : finite)
    if (e.stability == StabilityClass::nonhyperbolic_one_zero)
      try_center([&] { return center_manifold(poly, e, opts.cm_order); }, e);
  for (std::size_t k = 0; s && k < center.size(); ++k) {
    Json& cj = center[k];
    if (cj.value("base", "") != "E0" || cj.contains("error")) continue;
    const auto e0 = std::find_if(finite.begin(), finite.end(), [](const Equilibrium& e) { return e.label == "E0"; });
    if (e0 == finite.end()) continue;
    const CenterManifold cm = center_manifold(poly, *e0, opts.cm_order);
    if (!cm.N1_exact || !cm.N2_exact || !cm.mu_exact) continue;
    const BivariatePolynomial w_dot = BivariatePolynomial::y() * *cm.mu_exact + *cm.N2_exact;
    cj["eigen_form"] = {{"u", to_string(*cm.N1_exact, "u", "w")}, {"w", to_string(w_dot, "u", "w")}};
    const auto [ref_u, ref_w] = tabulated_origin_eigen_form(*s, c);
    Json mism = Json::array();
    for (const auto& m : compare_eigen_form(cm, ref_u, ref_w))
      mism.push_back({{"component", m.component == 0 ? "u" : "w"},
                      {"monomial", to_string(BivariatePolynomial::monomial(m.i, m.j), "u", "w")},
                      {"computed", to_string(m.computed)},
                      {"reference", to_string(m.reference)}});
    cj["reference_form_mismatches"] = mism;
  }

  Json boundary;
  for (auto ch : {ChartId::U1, ChartId::V1, ChartId::U2, ChartId::V2}) {
    const ChartSystem cs = chart_system(poly, ch);
    Json list_json = Json::array();
    try {
      auto eqs = boundary_equilibria(cs);
      if (s) label_boundary_equilibria(eqs, ch);
      else
        for (std::size_t k = 0; k < eqs.size(); ++k) eqs[k].label = to_string(ch) + "_" + std::to_string(k + 1);
      for (const auto& e : eqs) {
        list_json.push_back(to_json(e));
        if (e.stability == StabilityClass::nonhyperbolic_one_zero)
          try_center([&] { return center_manifold(cs, e, opts.cm_order); }, e);
        if (e.stability == StabilityClass::nonhyperbolic_double_zero) {
          try {
            blowups.push_back(to_json(nilpotent_sector_report(cs, e)));
          } catch (const std::exception& ex) {
            blowups.push_back({{"parent", e.label}, {"chart", to_string(ch)}, {"error", ex.what()}});
          }
        }
      }
      boundary[to_string(ch)] = list_json;
    } catch (const std::exception& ex) {
      boundary[to_string(ch)] = {{"error", ex.what()}};
    }
  }
  j["boundary_equilibria"] = boundary;
  j["center_manifolds"] = center;
  j["blowups"] = blowups;
  j["symmetry"] = {{"odd_symmetric", is_odd_symmetric(poly)}};
  return j;
}

std::string profile_csv(const ProfileSamples& p) {
  std::string out = "xi,phi,psi\n";
  for (std::size_t k = 0; k < p.size(); ++k)
    out += format_number(p.xi[k]) + ',' + format_number(p.phi[k]) + ',' + format_number(p.psi[k]) + '\n';
  return out;
}

namespace {

const char* kFamilyColumns[] = {"E1", "E2", "E3", "sign_changing", "far_field"};

}  // namespace

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::string out = "s,c,regime,c_spectral,c_shooting,gap,positive_families";
  for (const char* name : kFamilyColumns) out += std::string(",") + name;
  out += '\n';
  for (const auto& cell : cells) {
    out += format_number(cell.s) + ',' + format_number(cell.c) + ',' + to_string(cell.regime.tag) + ',' +
           format_number(cell.c_spectral) + ',' + format_number(cell.c_shooting) + ',' + format_number(cell.gap) + ',' +
           std::to_string(cell.count(OrbitClass::positive_monotone_to_E0));
    for (const char* name : kFamilyColumns) {
      const FamilyRun* f = cell.family(name);
      out += ',';
      if (f) out += to_string(f->report.orbit_class);
    }
    out += '\n';
  }
  return out;
}

Json to_json(const SweepCell& cell) {
  Json j;
  j["s"] = cell.s;
  j["c"] = cell.c;
  j["regime"] = to_json(cell.regime);
  j["c_spectral"] = cell.c_spectral;
  j["c_shooting"] = cell.c_shooting;
  j["gap"] = cell.gap;
  j["families"] = Json::object();
  for (const auto& f : cell.families) j["families"][f.name] = to_json(f.report);
  return j;
}

double PortraitDocument::max_radius() const {
  double r = 0;
  auto take = [&r](const DiskPoint& d) { r = std::max(r, std::hypot(d.y[0], d.y[1])); };
  for (const auto& m : markers) take(m.point);
  for (const auto& l : lines)
    for (const auto& p : l.points) take(p);
  return r;
}

PortraitDocument build_portrait(const Rational& s, const Rational& c, const PortraitOptions& opts) {
  const double sd = s.get_d(), cd = c.get_d();
  PortraitDocument doc;
  doc.s = sd;
  doc.c = cd;
  doc.regime = to_string(regime_of(s, c).tag);
  const PlanarSystem poly = desingularize(make_tw_system(saturating_cubic(s), c));

  for (const auto& e : finite_equilibria(poly, {-10, 10, -10, 10}))
    doc.markers.push_back({(e.coords.x == 0.0 && e.coords.y == 0.0) ? "E0" : "F", to_string(e.stability),
                           disk_embed(e.coords), false});
  for (auto ch : {ChartId::U1, ChartId::V1, ChartId::U2, ChartId::V2}) {
    auto eqs = boundary_equilibria(chart_system(poly, ch));
    label_boundary_equilibria(eqs, ch);
    for (const auto& e : eqs) {
      const DiskPoint d = disk_from_chart(ch, e.coords);
      auto same = std::find_if(doc.markers.begin(), doc.markers.end(), [&d](const PortraitMarker& m) {
        return std::hypot(m.point.y[0] - d.y[0], m.point.y[1] - d.y[1], m.point.y[2] - d.y[2]) < 1e-9;
      });
      if (same == doc.markers.end()) doc.markers.push_back({e.label, to_string(e.stability), d, true});
      else if (same->label.find(e.label) == std::string::npos) same->label += "/" + e.label;
    }
  }

  std::vector<FanSeed> seeds = ring_seeds(opts.n_seeds, opts.ring_radius);
  for (auto& m : manifold_seeds(sd, cd)) seeds.push_back(m);
  DiskOptions d;
  d.horizon = opts.horizon;
  d.rescale_near_axis = true;
  d.max_frames = 20000;
  const auto trajs = opts.parallel ? portrait_fan(poly, seeds, d) : portrait_fan_serial(poly, seeds, d);
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    PortraitPolyline line;
    line.tag = seeds[i].tag;
    const auto& fr = trajs[i].frames;
    const std::size_t n = fr.size();
    const std::size_t keep = std::min(n, opts.max_points);
    for (std::size_t k = 0; k < keep; ++k) {
      const std::size_t idx = keep == 1 ? 0 : k * (n - 1) / (keep - 1);
      const Frame& f = fr[idx];
      line.points.push_back(f.chart == ChartId::Finite ? disk_embed(f.p) : disk_from_chart(f.chart, f.p));
    }
    doc.lines.push_back(std::move(line));
  }
  return doc;
}

Json to_json(const PortraitDocument& d) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "portrait";
  j["s"] = d.s;
  j["c"] = d.c;
  j["regime"] = d.regime;
  j["max_radius"] = d.max_radius();
  j["markers"] = Json::array();
  for (const auto& m : d.markers)
    j["markers"].push_back({{"label", m.label},
                            {"stability", m.stability},
                            {"at_infinity", m.at_infinity},
                            {"y", Json::array({m.point.y[0], m.point.y[1], m.point.y[2]})}});
  j["lines"] = Json::array();
  for (const auto& l : d.lines) {
    Json pts = Json::array();
    for (const auto& p : l.points) pts.push_back(Json::array({p.y[0], p.y[1]}));
    j["lines"].push_back({{"tag", l.tag}, {"points", pts}});
  }
  return j;
}

namespace {

std::string line_color(const std::string& tag) {
  if (tag == "ring") return "#9a9a9a";
  if (tag == "center_manifold") return "#1f5fa8";
  if (tag.starts_with("sign_changing")) return "#2a8a3a";
  if (tag.starts_with("far_field")) return "#8a5a2a";
  return "#c0392b";
}

std::string marker_color(const std::string& stability) {
  if (stability == "source") return "#c0392b";
  if (stability == "sink") return "#1f5fa8";
  if (stability == "saddle") return "#2a8a3a";
  return "#000000";
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string portrait_svg(const PortraitDocument& d) {
  const double cx = 320, cy = 340, R = 300;
  auto X = [&](const DiskPoint& p) { return fixed(cx + R * p.y[0]); };
  auto Y = [&](const DiskPoint& p) { return fixed(cy - R * p.y[1]); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"680\" viewBox=\"0 0 640 680\">\n";
  os << "<text x=\"20\" y=\"24\" font-family=\"monospace\" font-size=\"14\">s=" << format_number(d.s)
     << " c=" << format_number(d.c) << " regime=" << d.regime << "</text>\n";
  os << "<circle cx=\"" << fixed(cx) << "\" cy=\"" << fixed(cy) << "\" r=\"" << fixed(R)
     << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  for (const auto& l : d.lines) {
    if (l.points.size() < 2) continue;
    os << "<path fill=\"none\" stroke=\"" << line_color(l.tag) << "\" stroke-width=\"1\" d=\"M" << X(l.points[0]) << ' '
       << Y(l.points[0]);
    for (std::size_t k = 1; k < l.points.size(); ++k) os << " L" << X(l.points[k]) << ' ' << Y(l.points[k]);
    os << "\"/>\n";
  }
  for (const auto& m : d.markers) {
    os << "<circle cx=\"" << X(m.point) << "\" cy=\"" << Y(m.point) << "\" r=\"4\" fill=\"" << marker_color(m.stability)
       << "\"/>\n";
    os << "<text x=\"" << fixed(cx + R * m.point.y[0] * 1.04 + 4) << "\" y=\"" << fixed(cy - R * m.point.y[1] * 1.04 - 4)
       << "\" font-family=\"monospace\" font-size=\"12\">" << m.label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace wavedisk
