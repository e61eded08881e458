#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace fdyn::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// Splits on whitespace and commas.
std::vector<std::string_view> fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != ',') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

double parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("not a finite real number: '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw ConfigError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::complex<double> parse_complex(std::string_view s) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) return {parse_real(s), 0.0};
  return {parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1))};
}

void set_key(Config& c, const std::string& key, std::string_view value) {
  value = trim(value);
  try {
    if (key == "viewport") {
      const auto f = fields(value);
      if (f.size() != 4) throw ConfigError("expected 4 reals");
      std::array<double, 4> v{};
      for (int k = 0; k < 4; ++k) v[static_cast<std::size_t>(k)] = parse_real(f[static_cast<std::size_t>(k)]);
      if (!(v[0] < v[1] && v[2] < v[3])) throw ConfigError("need xmin < xmax and ymin < ymax");
      c.viewport = v;
    } else if (key == "resolution") {
      const auto f = fields(value);
      if (f.size() != 2) throw ConfigError("expected 2 integers");
      const int nx = parse_int(f[0]), ny = parse_int(f[1]);
      if (nx < 1 || ny < 1 || nx > 16384 || ny > 16384) throw ConfigError("must lie in 1..16384");
      c.resolution = {nx, ny};
    } else if (key == "max_iter") {
      const int v = parse_int(value);
      if (v < 1) throw ConfigError("must be >= 1");
      c.max_iter = v;
    } else if (key == "period_max") {
      const int v = parse_int(value);
      if (v < 1 || v > 64) throw ConfigError("must lie in 1..64");
      c.period_max = v;
    } else if (key == "bailout_constant") {
      const double v = parse_real(value);
      if (v < 10.0) throw ConfigError("must be >= 10");
      c.bailout_constant = v;
    } else if (key == "output_path") {
      if (value.empty()) throw ConfigError("must not be empty");
      c.output_path = std::string(value);
    } else {
      throw ConfigError("unknown key");
    }
  } catch (const ConfigError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

Config parse_config(std::string_view text) {
  Config c;
  std::vector<std::string> seen;
  int lineno = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key(trim(s.substr(0, eq)));
    for (const auto& k : seen) {
      if (k == key) throw ConfigError(where + key + ": repeated key");
    }
    seen.push_back(key);
    try {
      set_key(c, key, s.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace fdyn::cli
