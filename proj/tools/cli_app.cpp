#include "cli_app.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wavedisk/report.hpp"

namespace wavedisk::cli {

namespace {

const std::vector<std::string> kKeys = {"s",      "c",        "tol",     "rtol",   "atol",   "eps",
                                        "delta",  "out",      "format",  "reaction", "family", "xi_span",
                                        "n_seeds", "s_list",  "c_list"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + key + ": " + v);
  }
  if (used != v.size() || !std::isfinite(x)) throw ConfigError("invalid number for " + key + ": " + v);
  return x;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

void apply(RunConfig& cfg, const std::string& key, const std::string& v) {
  if (key == "s") cfg.s = v;
  else if (key == "c") cfg.c = v;
  else if (key == "tol") cfg.tol = to_number(key, v);
  else if (key == "rtol") cfg.rtol = to_number(key, v);
  else if (key == "atol") cfg.atol = to_number(key, v);
  else if (key == "eps") cfg.eps = to_number(key, v);
  else if (key == "delta") cfg.delta = to_number(key, v);
  else if (key == "out") cfg.out = v;
  else if (key == "format") {
    cfg.formats.clear();
    for (const auto& f : split_list(v)) {
      if (f != "json" && f != "csv" && f != "svg") throw ConfigError("unknown format: " + f);
      cfg.formats.insert(f);
    }
    if (cfg.formats.empty()) throw ConfigError("empty format list");
  } else if (key == "reaction") cfg.reaction = v;
  else if (key == "family") cfg.family = v;
  else if (key == "xi_span") cfg.xi_span = to_number(key, v);
  else if (key == "n_seeds") {
    const double n = to_number(key, v);
    if (n != std::floor(n) || std::abs(n) > 1e6) throw ConfigError("n_seeds must be an integer");
    cfg.n_seeds = static_cast<int>(n);
  } else if (key == "s_list") cfg.s_list = split_list(v);
  else if (key == "c_list") cfg.c_list = split_list(v);
  else if (key.rfind("param.", 0) == 0 && key.size() > 6) cfg.params[key.substr(6)] = v;
  else throw ConfigError("unknown config key: " + key);
}

Rational positive_rational(const std::string& name, const std::string& v) {
  Rational q;
  try {
    q = parse_rational(v);
  } catch (const std::exception&) {
    throw ConfigError("invalid value for " + name + ": " + v);
  }
  if (sgn(q) <= 0) throw ConfigError(name + " must be positive");
  return q;
}

Params bound_params(const RunConfig& cfg) {
  Params p;
  for (const auto& [k, v] : cfg.params) {
    try {
      p[k] = parse_rational(v);
    } catch (const std::exception&) {
      throw ConfigError("invalid parameter value: " + k + "=" + v);
    }
  }
  return p;
}

void write_file(const RunConfig& cfg, const std::string& name, const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  const auto path = std::filesystem::path(cfg.out) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << content;
  if (!f) throw ConfigError("cannot write " + path.string());
}

void require_builtin_reaction(const RunConfig& cfg, const char* cmd) {
  if (cfg.reaction) throw ConfigError(std::string(cmd) + " supports only the built-in reaction u^3/(1+s u^2)");
}

WaveOptions wave_options(const RunConfig& cfg) {
  WaveOptions w;
  w.rtol = cfg.rtol;
  w.atol = cfg.atol;
  return w;
}

ShootingOptions shooting_options(const RunConfig& cfg) {
  ShootingOptions o;
  o.delta = cfg.delta;
  o.rtol = cfg.rtol;
  o.atol = cfg.atol;
  return o;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const Rational c = positive_rational("c", cfg.c);
  std::optional<Rational> s;
  std::optional<ReactionTerm> f;
  if (cfg.reaction) {
    f = parse_reaction(*cfg.reaction, bound_params(cfg));
  } else {
    s = positive_rational("s", cfg.s);
    f = saturating_cubic(*s);
  }
  const Json j = analyze_report(*f, c, s);
  if (cfg.wants("json")) write_file(cfg, "analyze.json", dump_json(j));
  std::size_t nb = 0;
  for (const auto& [chart, eqs] : j["boundary_equilibria"].items())
    if (eqs.is_array()) nb += eqs.size();
  out << "analyze: regime=" << (j["regime"]["tag"].is_string() ? j["regime"]["tag"].get<std::string>() : "unknown")
      << " finite=" << j["finite_equilibria"].size() << " boundary=" << nb << '\n';
  return kExitOk;
}

int cmd_minspeed(const RunConfig& cfg, std::ostream& out) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "minspeed";
  j["tol"] = cfg.tol;
  double gap = 0;
  if (cfg.reaction) {
    const ReactionTerm f = parse_reaction(*cfg.reaction, bound_params(cfg));
    const double a = f.numerator().coeff(1, 0).get_d() / f.denominator().coeff(0, 0).get_d();
    if (!(a > 0)) throw ConfigError("monostable mode needs f'(0) > 0");
    const ShootingResult r = minimal_speed_shooting_kpp(f, cfg.tol);
    const double linear = 2 * std::sqrt(a);
    gap = std::abs(r.c_star - linear);
    j["mode"] = "monostable";
    j["reaction"] = *cfg.reaction;
    j["linear_speed"] = linear;
    j["shooting"] = r.c_star;
    j["bracket"] = Json::array({r.lo, r.hi});
  } else {
    const Rational s = positive_rational("s", cfg.s);
    const double spectral = minimal_speed_spectral(s.get_d());
    const ShootingResult r = minimal_speed_shooting(s.get_d(), cfg.tol, shooting_options(cfg));
    gap = std::abs(r.c_star - spectral);
    j["mode"] = "saturating_cubic";
    j["s"] = s.get_d();
    j["spectral"] = spectral;
    j["shooting"] = r.c_star;
    j["bracket"] = Json::array({r.lo, r.hi});
  }
  j["gap"] = gap;
  const bool ok = gap <= 10 * cfg.tol;
  j["agree"] = ok;
  if (cfg.wants("json")) write_file(cfg, "minspeed.json", dump_json(j));
  out << "minspeed: shooting=" << format_number(j["shooting"].get<double>()) << " gap=" << format_number(gap)
      << (ok ? "" : " (exceeds 10 tol)") << '\n';
  return ok ? kExitOk : kExitNumerical;
}

WaveSeed profile_seed(double s, double c, const std::string& family, double eps) {
  if (family == "E1") return seed_at_infinity(s, c, SeedLabel::E1, eps);
  if (family == "E2") return seed_at_infinity(s, c, SeedLabel::E2, eps);
  if (family == "E3") return seed_at_infinity(s, c, SeedLabel::E3_center, eps);
  if (family == "sign_changing") {
    switch (regime_of(s, c).tag) {
      case RegimeTag::supercritical: return seed_at_infinity(s, c, SeedLabel::E1, eps, SeedBranch::lower);
      case RegimeTag::critical: return seed_at_infinity(s, c, SeedLabel::E3_center, eps, SeedBranch::lower);
      case RegimeTag::subcritical: break;
    }
    throw ConfigError("the sign-changing family needs c at or above the minimal speed");
  }
  throw ConfigError("unknown family: " + family + " (E1, E2, E3, sign_changing)");
}

int cmd_profile(const RunConfig& cfg, std::ostream& out) {
  require_builtin_reaction(cfg, "profile");
  const double s = positive_rational("s", cfg.s).get_d();
  const double c = positive_rational("c", cfg.c).get_d();
  if (!(cfg.xi_span > 0)) throw ConfigError("xi_span must be positive");
  const WaveSeed seed = profile_seed(s, c, cfg.family, cfg.eps);
  const WaveOptions wo = wave_options(cfg);
  WaveReport rep = classify_wave(s, c, seed, wo);
  bool robust = true;
  for (double e : {cfg.eps * 10, cfg.eps / 10}) {
    if (e > 0.1) continue;
    robust = robust && classify_wave(s, c, profile_seed(s, c, cfg.family, e), wo).orbit_class == rep.orbit_class;
  }
  rep.eps_robust = robust;
  ProfileSamples p = reconstruct_profile(s, c, seed.plane, cfg.xi_span, cfg.family == "sign_changing");
  try {
    rep.asymptotic_rate = asymptotic_rate(p, wo.rate_threshold);
  } catch (const std::domain_error&) {
  }
  if (cfg.wants("csv")) write_file(cfg, "profile.csv", profile_csv(p));
  rep.profile = std::move(p);
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = "profile";
  j["family"] = cfg.family;
  j["report"] = to_json(rep);
  j["phi_crossings_in_profile"] = count_zero_crossings(*rep.profile, ProfileColumn::phi);
  j["psi_crossings_in_profile"] = count_zero_crossings(*rep.profile, ProfileColumn::psi);
  if (cfg.wants("json")) write_file(cfg, "profile.json", dump_json(j));
  out << "profile: " << to_string(rep.orbit_class) << " rows=" << rep.profile->size() << '\n';
  return kExitOk;
}

int cmd_portrait(const RunConfig& cfg, std::ostream& out) {
  require_builtin_reaction(cfg, "portrait");
  if (cfg.n_seeds < 1) throw ConfigError("n_seeds must be at least 1");
  const Rational s = positive_rational("s", cfg.s);
  const Rational c = positive_rational("c", cfg.c);
  PortraitOptions po;
  po.n_seeds = cfg.n_seeds;
  const PortraitDocument doc = build_portrait(s, c, po);
  if (doc.max_radius() > 1 + 1e-9) throw NumericalError("portrait point outside the unit disk");
  if (cfg.wants("svg")) write_file(cfg, "portrait.svg", portrait_svg(doc));
  if (cfg.wants("json")) write_file(cfg, "portrait.json", dump_json(to_json(doc)));
  out << "portrait: regime=" << doc.regime << " lines=" << doc.lines.size() << '\n';
  return kExitOk;
}

std::vector<double> unique_values(const std::string& name, const std::vector<std::string>& items, std::ostream& err) {
  std::vector<double> out;
  for (const auto& it : items) {
    const double v = positive_rational(name, it).get_d();
    if (std::find(out.begin(), out.end(), v) != out.end()) {
      err << "warning: duplicate " << name << " value " << it << " ignored\n";
      continue;
    }
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(name + " list is empty");
  return out;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_builtin_reaction(cfg, "sweep");
  const auto s_list = unique_values("s", cfg.s_list.empty() ? std::vector<std::string>{cfg.s} : cfg.s_list, err);
  const auto c_list = unique_values("c", cfg.c_list.empty() ? std::vector<std::string>{cfg.c} : cfg.c_list, err);
  SweepOptions so;
  so.tol = cfg.tol;
  so.shooting = shooting_options(cfg);
  so.waves = wave_options(cfg);
  const auto cells = sweep(s_list, c_list, so);
  if (cfg.wants("csv")) write_file(cfg, "sweep.csv", sweep_csv(cells));
  if (cfg.wants("json")) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = "sweep";
    j["cells"] = Json::array();
    for (const auto& cell : cells) j["cells"].push_back(to_json(cell));
    write_file(cfg, "sweep.json", dump_json(j));
  }
  out << "sweep: rows=" << cells.size() << '\n';
  return kExitOk;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  int n = 0;
  while (std::getline(ss, line)) {
    ++n;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(n) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(n) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

RunConfig resolve_config(const std::map<std::string, std::string>& file, const Overrides& cli) {
  RunConfig cfg;
  for (const auto& [k, v] : file) apply(cfg, k, v);
  for (const auto& [k, v] : cli.values) apply(cfg, k, v);
  for (const auto& kv : cli.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects k=v, got " + kv);
    cfg.params[trim(kv.substr(0, eq))] = trim(kv.substr(eq + 1));
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  const std::pair<const char*, double> tols[] = {
      {"tol", cfg.tol}, {"rtol", cfg.rtol}, {"atol", cfg.atol}, {"eps", cfg.eps}, {"delta", cfg.delta}};
  for (const auto& [name, v] : tols)
    if (!(v >= 1e-14 && v <= 1e-2)) throw ConfigError(std::string(name) + " must lie in [1e-14, 1e-2]");
  if (cfg.out.empty()) throw ConfigError("output directory is empty");
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traveling waves of u_t = u_xx + u^3/(1+s u^2) on the compactified phase plane"};
  app.require_subcommand(1);
  app.fallthrough();
  std::map<std::string, std::string> given;
  std::map<std::string, CLI::Option*> opts;
  std::string config_path;
  std::vector<std::string> params;
  for (const auto& key : kKeys) {
    std::string flag = "--" + key;
    for (auto& ch : flag)
      if (ch == '_') ch = '-';
    opts[key] = app.add_option(flag, given[key]);
  }
  app.add_option("--config", config_path, "flat key=value file");
  app.add_option("--param", params, "parameter binding k=v")->take_all();

  CLI::App* analyze = app.add_subcommand("analyze", "equilibria, center manifolds and blow-ups at (s, c)");
  CLI::App* minspeed = app.add_subcommand("minspeed", "spectral and shooting minimal speeds");
  CLI::App* profile = app.add_subcommand("profile", "wave profile of one family");
  CLI::App* portrait = app.add_subcommand("portrait", "disk portrait as SVG");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "orbit classes over an (s, c) grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    std::map<std::string, std::string> file;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("cannot read config file " + config_path);
      std::stringstream buf;
      buf << f.rdbuf();
      file = parse_config_text(buf.str());
    }
    Overrides ov;
    for (const auto& key : kKeys)
      if (opts[key]->count() > 0) ov.values[key] = given[key];
    ov.params = params;
    const RunConfig cfg = resolve_config(file, ov);

    if (analyze->parsed()) return cmd_analyze(cfg, out);
    if (minspeed->parsed()) return cmd_minspeed(cfg, out);
    if (profile->parsed()) return cmd_profile(cfg, out);
    if (portrait->parsed()) return cmd_portrait(cfg, out);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, out, err);
    err << "error: no subcommand\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace wavedisk::cli
