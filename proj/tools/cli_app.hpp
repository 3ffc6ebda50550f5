#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavedisk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Resolved settings for one run.
struct RunConfig {
  std::string s = "1";
  std::string c = "3";
  double tol = 1e-3;
  double rtol = 1e-10;
  double atol = 1e-12;
  double eps = 1e-4;
  double delta = 1e-3;
  std::string out = "out";
  std::set<std::string> formats{"json", "csv", "svg"};
  std::optional<std::string> reaction;
  std::map<std::string, std::string> params;
  std::string family = "E2";
  double xi_span = 1e12;
  int n_seeds = 16;
  std::vector<std::string> s_list, c_list;

  bool wants(const std::string& fmt) const { return formats.count(fmt) > 0; }
};

/// Values given on the command line; unset entries fall back to the config file.
struct Overrides {
  std::map<std::string, std::string> values;
  std::vector<std::string> params;  ///< "k=v"
};

/// Parses flat "key = value" lines; '#' starts a comment. Keys "param.k" bind parameters.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Defaults, then the config file entries, then the command-line overrides.
RunConfig resolve_config(const std::map<std::string, std::string>& file, const Overrides& cli);

/// Throws ConfigError when a tolerance lies outside [1e-14, 1e-2] or a list is malformed.
void validate(const RunConfig& cfg);

/// Entry point shared by the executable and the black-box tests.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace wavedisk::cli
