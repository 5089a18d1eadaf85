#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gw/image.hpp"

namespace gw {

// Flat "key = value" text with '#' comments. Entries keep file order.
// Every error is a ConfigError carrying the offending line or key.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, const std::string& source = "<config>");
  static KeyValueConfig load(const std::filesystem::path& path);

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
  std::optional<std::string> get(const std::string& key) const;
  bool has(const std::string& key) const { return get(key).has_value(); }
  // Replaces an existing value or appends.
  void set(const std::string& key, std::string value);

  std::string to_text() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Value parsers; `key` only feeds the error message.
long parse_long(const std::string& key, const std::string& value);
double parse_double(const std::string& key, const std::string& value);
Rgb parse_rgb(const std::string& key, const std::string& value);              // "r,g,b"
std::pair<int, int> parse_pair(const std::string& key, const std::string& value,
                               char sep);                                     // "a<sep>b"

// Shortest text that reads back to the same double.
std::string format_double(double v);

}  // namespace gw
