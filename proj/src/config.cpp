#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fnls/config.hpp"
#include "fnls/errors.hpp"
#include "fnls/report.hpp"

namespace fnls {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' && c != '-')
      return false;
  return true;
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), path);
}

Config Config::from_text(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(line) + ": unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!valid_key(section))
        throw ConfigError(origin + ":" + std::to_string(line) + ": invalid section name");
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line) + ": expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (!valid_key(key))
      throw ConfigError(origin + ":" + std::to_string(line) + ": invalid key '" + key + "'");
    if (value.empty())
      throw ConfigError(origin + ":" + std::to_string(line) + ": empty value for key '" + key +
                        "'");
    if (!section.empty()) key = section + "." + key;
    if (cfg.find(key))
      throw ConfigError(origin + ":" + std::to_string(line) + ": duplicate key '" + key + "'");
    cfg.entries_.push_back({key, value, line});
  }
  return cfg;
}

const ConfigEntry* Config::find(const std::string& key) const {
  for (const ConfigEntry& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

void Config::fail(const ConfigEntry& e, const std::string& what) const {
  throw ConfigError(origin_ + ":" + std::to_string(e.line) + ": key '" + e.key + "': " + what);
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

double Config::number(const std::string& key, double fallback) const {
  const ConfigEntry* e = find(key);
  if (!e) return fallback;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(e->value.c_str(), &end);
  if (end != e->value.c_str() + e->value.size() || errno == ERANGE)
    fail(*e, "expected a number, got '" + e->value + "'");
  return v;
}

long long Config::integer(const std::string& key, long long fallback) const {
  const ConfigEntry* e = find(key);
  if (!e) return fallback;
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(e->value.c_str(), &end, 10);
  if (end != e->value.c_str() + e->value.size() || errno == ERANGE)
    fail(*e, "expected an integer, got '" + e->value + "'");
  return v;
}

bool Config::boolean(const std::string& key, bool fallback) const {
  const ConfigEntry* e = find(key);
  if (!e) return fallback;
  if (e->value == "true") return true;
  if (e->value == "false") return false;
  fail(*e, "expected true or false, got '" + e->value + "'");
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  const ConfigEntry* e = find(key);
  return e ? e->value : fallback;
}

void Config::require_keys_among(const std::vector<std::string>& known) const {
  for (const ConfigEntry& e : entries_) {
    bool ok = false;
    for (const std::string& k : known) ok = ok || k == e.key;
    if (!ok) fail(e, "unknown key for this subcommand");
  }
}

std::string render_config_echo(const std::string& subcommand, const std::vector<EchoPair>& pairs) {
  std::string out = "subcommand = " + subcommand + "\n";
  for (const EchoPair& p : pairs) out += p.key + " = " + p.value + "\n";
  return out;
}

std::string echo_value(double v) { return format_double(v); }
std::string echo_value(long long v) { return std::to_string(v); }
std::string echo_value(bool v) { return v ? "true" : "false"; }

}  // namespace fnls
