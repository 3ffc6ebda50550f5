#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using namespace wavedisk::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wavedisk");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wavedisk_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config text parsing") {
  const auto kv = parse_config_text("# comment\n s = 2 \nc=3 # trailing\n\nparam.a = 1/2\n");
  CHECK(kv.at("s") == "2");
  CHECK(kv.at("c") == "3");
  CHECK(kv.at("param.a") == "1/2");
  CHECK(kv.size() == 3);
  CHECK_THROWS_AS(parse_config_text("no equals sign\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("= 3\n"), ConfigError);
}

TEST_CASE("precedence: command line over config file over defaults") {
  const RunConfig d = resolve_config({}, {});
  CHECK(d.s == "1");
  CHECK(d.tol == 1e-3);
  const RunConfig f = resolve_config({{"s", "4"}, {"tol", "1e-4"}, {"param.a", "2"}}, {});
  CHECK(f.s == "4");
  CHECK(f.tol == 1e-4);
  CHECK(f.params.at("a") == "2");
  Overrides o;
  o.values["s"] = "0.5";
  o.params = {"a=3"};
  const RunConfig g = resolve_config({{"s", "4"}, {"tol", "1e-4"}, {"param.a", "2"}}, o);
  CHECK(g.s == "0.5");
  CHECK(g.tol == 1e-4);
  CHECK(g.params.at("a") == "3");
  CHECK_THROWS_AS(resolve_config({{"bogus", "1"}}, {}), ConfigError);
  CHECK_THROWS_AS(resolve_config({{"tol", "0.5"}}, {}), ConfigError);
  CHECK_THROWS_AS(resolve_config({{"rtol", "1e-16"}}, {}), ConfigError);
  CHECK_THROWS_AS(resolve_config({{"format", "json,pdf"}}, {}), ConfigError);
}

TEST_CASE("config file drives a run and flags override it") {
  const fs::path dir = fresh_dir("config");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "s = 4\nc = 3\nformat = json\n";
  }
  const Result r = run_cli({"analyze", "--config", (dir / "run.cfg").string(), "--out", (dir / "a").string()});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(slurp(dir / "a" / "analyze.json"));
  CHECK(j["s_exact"] == "4");
  CHECK_FALSE(fs::exists(dir / "a" / "analyze.csv"));

  const Result r2 = run_cli({"analyze", "--config", (dir / "run.cfg").string(), "--s", "1", "--out", (dir / "b").string()});
  REQUIRE(r2.code == kExitOk);
  j = nlohmann::json::parse(slurp(dir / "b" / "analyze.json"));
  CHECK(j["s_exact"] == "1");
  CHECK(j["c_exact"] == "3");
}

TEST_CASE("exit codes") {
  const fs::path dir = fresh_dir("codes");
  CHECK(run_cli({"minspeed", "--s", "-1", "--out", dir.string()}).code == kExitConfig);
  CHECK(run_cli({"minspeed", "--s", "abc", "--out", dir.string()}).code == kExitConfig);
  CHECK(run_cli({"portrait", "--n-seeds", "0", "--out", dir.string()}).code == kExitConfig);
  CHECK(run_cli({"profile", "--c", "1", "--family", "E1", "--out", dir.string()}).code == kExitConfig);
  CHECK(run_cli({"analyze", "--tol", "1", "--out", dir.string()}).code == kExitConfig);
  CHECK(run_cli({"analyze", "--config", (dir / "missing.cfg").string()}).code == kExitConfig);
  CHECK(run_cli({}).code == kExitConfig);
  CHECK(run_cli({"analyze", "--reaction", "u^3/(1+s*u^2)", "--out", dir.string()}).code == kExitConfig);
  CHECK(run_cli({"minspeed", "--reaction", "u*(1-u)*(1+a*u)", "--param", "a=10", "--out", dir.string()}).code ==
        kExitNumerical);
  const Result ok = run_cli({"minspeed", "--s", "4", "--format", "json", "--out", dir.string()});
  CHECK(ok.code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "minspeed.json"));
  CHECK(j["schema"] == "1");
  CHECK(std::abs(j["shooting"].get<double>() - 1.0) <= 1e-2);
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands{
      {"analyze", "--s", "1", "--c", "2"},
      {"profile", "--s", "1", "--c", "3", "--family", "E2"},
      {"portrait", "--s", "1", "--c", "3", "--n-seeds", "6"},
      {"sweep", "--s-list", "1", "--c-list", "1.5,2,2.5"},
      {"minspeed", "--reaction", "a*u*(1-u)", "--param", "a=1"}};
  int k = 0;
  for (const auto& cmd : commands) {
    CAPTURE(cmd[0]);
    const fs::path a = fresh_dir("det_a" + std::to_string(k)), b = fresh_dir("det_b" + std::to_string(k));
    ++k;
    auto ca = cmd, cb = cmd;
    ca.insert(ca.end(), {"--out", a.string()});
    cb.insert(cb.end(), {"--out", b.string()});
    REQUIRE(run_cli(ca).code == kExitOk);
    REQUIRE(run_cli(cb).code == kExitOk);
    int files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
      ++files;
      const std::string body = slurp(e.path());
      CHECK(body == slurp(b / e.path().filename()));
      if (e.path().extension() == ".json") {
        const auto j = nlohmann::json::parse(body);
        CHECK(j["schema"] == "1");
      }
    }
    CHECK(files >= 1);
  }
}

TEST_CASE("sweep grid and duplicates") {
  const fs::path dir = fresh_dir("sweep");
  const Result r = run_cli({"sweep", "--s-list", "1,1", "--c-list", "1,2,3", "--format", "csv", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.err.find("duplicate") != std::string::npos);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("subcritical") != std::string::npos);
  CHECK(csv.find(",critical") != std::string::npos);
  CHECK(csv.find("supercritical") != std::string::npos);
}

TEST_CASE("profile rows are ordered and the portrait stays on the disk") {
  const fs::path dir = fresh_dir("profile");
  REQUIRE(run_cli({"profile", "--s", "1", "--c", "2", "--family", "sign_changing", "--out", dir.string()}).code == kExitOk);
  std::ifstream csv(dir / "profile.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "xi,phi,psi");
  double last = -INFINITY;
  int rows = 0;
  while (std::getline(csv, line)) {
    const double xi = std::stod(line.substr(0, line.find(',')));
    CHECK(xi > last);
    last = xi;
    ++rows;
  }
  CHECK(rows > 10);

  REQUIRE(run_cli({"portrait", "--s", "1", "--c", "1", "--n-seeds", "4", "--out", dir.string()}).code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "portrait.json"));
  for (const auto& l : j["lines"])
    for (const auto& p : l["points"]) CHECK(std::hypot(p[0].get<double>(), p[1].get<double>()) <= 1 + 1e-9);
}
