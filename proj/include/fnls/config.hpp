#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fnls {

// One key = value line of a run configuration, with its source location for
// error reporting. Keys inside a [section] are flattened to "section.key".
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

// Flat key = value configuration text: full-line or trailing '#' comments,
// [section] headers, duplicate keys rejected.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_text(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const;
  // Typed access; a present key that fails to parse as the requested type is
  // a configuration error citing file:line.
  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;

  // Rejects any key not in `known` (schema check), citing its location.
  void require_keys_among(const std::vector<std::string>& known) const;

  const std::vector<ConfigEntry>& entries() const { return entries_; }
  const std::string& origin() const { return origin_; }

 private:
  const ConfigEntry* find(const std::string& key) const;
  [[noreturn]] void fail(const ConfigEntry& e, const std::string& what) const;

  std::string origin_ = "<none>";
  std::vector<ConfigEntry> entries_;
};

// Deterministic echo of the effective parameters of a run: a config file that
// reproduces the run when loaded (floats at 17 significant digits). The
// subcommand is recorded as the first key.
struct EchoPair {
  std::string key;
  std::string value;
};
std::string render_config_echo(const std::string& subcommand, const std::vector<EchoPair>& pairs);

std::string echo_value(double v);
std::string echo_value(long long v);
std::string echo_value(bool v);

}  // namespace fnls
