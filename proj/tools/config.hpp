#pragma once

// "key = value" configuration files for the command-line front end.

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace fdyn::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  /// xmin xmax ymin ymax
  std::optional<std::array<double, 4>> viewport;
  std::optional<std::pair<int, int>> resolution;
  std::optional<int> max_iter;
  std::optional<int> period_max;
  std::optional<double> bailout_constant;
  std::optional<std::string> output_path;
};

/// Parses file contents; unknown or repeated keys and malformed values throw ConfigError.
Config parse_config(std::string_view text);
Config load_config(const std::string& path);

/// Each setter validates one value and throws ConfigError with the key name.
void set_key(Config& c, const std::string& key, std::string_view value);

double parse_real(std::string_view s);
int parse_int(std::string_view s);
/// "RE,IM" or "RE".
std::complex<double> parse_complex(std::string_view s);

}  // namespace fdyn::cli
