#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace emsde {

/// Line-oriented `key = value` file; `#` starts a comment, blank lines are
/// ignored. Keys are validated against a fixed list and values are kept as
/// text until an accessor converts them.
class Config {
 public:
  /// Throws ConfigError naming the line on syntax errors, unknown or repeated keys.
  static Config parse(std::istream& in);
  static Config parse_string(std::string_view text);
  static Config load(const std::string& path);

  static const std::vector<std::string>& known_keys();

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string text(const std::string& key, const std::string& fallback) const;
  /// Finite real.
  double real(const std::string& key, double fallback) const;
  /// Non-negative integer; accepts exponent notation such as 1e5.
  std::uint64_t count(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<std::uint64_t> counts(const std::string& key,
                                    const std::vector<std::uint64_t>& fallback) const;
  std::vector<std::string> words(const std::string& key) const;

  void set(const std::string& key, const std::string& value);

 private:
  std::map<std::string, std::string> values_;
};

double parse_real(std::string_view s, const std::string& what);
std::uint64_t parse_count(std::string_view s, const std::string& what);
std::vector<std::string> split_list(std::string_view s);

}  // namespace emsde
