#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "fnls/config.hpp"
#include "fnls/errors.hpp"
#include "fnls/report.hpp"
#include "json.hpp"

using namespace fnls;
using doctest::Contains;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

AuditReport sample_report() {
  AuditReport rep;
  rep.name = "probe_audit";
  rep.param("alpha", 0.75);
  rep.param("M", 512ll);
  rep.param("gauged", true);
  rep.param("label", std::string("a\"b\\c\nd"));
  rep.extremals.push_back({"worst", std::numeric_limits<double>::infinity(), {{"k", 3.0}}});
  rep.extremals.push_back({"best", 0.1, {}});
  rep.tables.push_back({"scan", {"n", "value"}, {{0.0, 1.5}, {1.0, 2.5}}});
  rep.note("first \"note\"");
  rep.note(std::string("control\x01then tab\t"));
  rep.pass = true;
  rep.runtime_seconds = 3.25;
  return rep;
}

}  // namespace

TEST_CASE("configuration text: comments, sections, typed access") {
  Config cfg = Config::from_text(
      "# full-line comment\n"
      "alpha = 0.75  # trailing comment\n"
      "\n"
      "[run]\n"
      "steps = 12\n"
      "name = probe\n"
      "flag = true\n",
      "inline");

  CHECK(cfg.origin() == "inline");
  CHECK(cfg.entries().size() == 4);
  CHECK(cfg.entries()[0].line == 2);
  CHECK(cfg.has("alpha"));
  CHECK_FALSE(cfg.has("steps"));  // section keys are flattened
  CHECK(cfg.number("alpha", 0.0) == 0.75);
  CHECK(cfg.integer("run.steps", 0) == 12);
  CHECK(cfg.text("run.name", "") == "probe");
  CHECK(cfg.boolean("run.flag", false));

  // absent keys fall back
  CHECK(cfg.number("missing", 2.5) == 2.5);
  CHECK(cfg.integer("missing", -3) == -3);
  CHECK(cfg.boolean("missing", true));
  CHECK(cfg.text("missing", "dflt") == "dflt");
}

TEST_CASE("configuration text: malformed lines are rejected with their location") {
  CHECK_THROWS_WITH_AS(Config::from_text("a = 1\na = 2\n", "inline"),
                       Contains("inline:2: duplicate key 'a'"), ConfigError);
  CHECK_THROWS_WITH_AS(Config::from_text("just words\n", "inline"),
                       Contains("inline:1: expected 'key = value'"), ConfigError);
  CHECK_THROWS_WITH_AS(Config::from_text("a =\n", "inline"),
                       Contains("empty value for key 'a'"), ConfigError);
  CHECK_THROWS_WITH_AS(Config::from_text("[unclosed\n", "inline"),
                       Contains("unterminated section header"), ConfigError);
  CHECK_THROWS_WITH_AS(Config::from_text("[bad name]\n", "inline"),
                       Contains("invalid section name"), ConfigError);
  CHECK_THROWS_WITH_AS(Config::from_text("a b = 1\n", "inline"),
                       Contains("invalid key 'a b'"), ConfigError);
  // flattening makes "x.y" collide with y inside [x]
  CHECK_THROWS_WITH_AS(Config::from_text("x.y = 1\n[x]\ny = 2\n", "inline"),
                       Contains("inline:3: duplicate key 'x.y'"), ConfigError);
}

TEST_CASE("typed access failures cite file, line, and key") {
  Config cfg = Config::from_text("a = word\nb = 1.5\nc = yes\nd = 1e-3\ne = -12\nf = 1.5x\n",
                                 "cfg.txt");
  CHECK_THROWS_WITH_AS(cfg.number("a", 0.0), Contains("cfg.txt:1: key 'a': expected a number"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(cfg.integer("b", 0), Contains("cfg.txt:2: key 'b': expected an integer"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(cfg.boolean("c", false), Contains("expected true or false, got 'yes'"),
                       ConfigError);
  CHECK(cfg.number("d", 0.0) == 1e-3);
  CHECK(cfg.integer("e", 0) == -12);
  CHECK_THROWS_WITH_AS(cfg.number("f", 0.0), Contains("expected a number, got '1.5x'"),
                       ConfigError);
  // out-of-range magnitudes are rejected, not saturated
  Config wide = Config::from_text("big = 3000000000000000000000\n", "cfg.txt");
  CHECK_THROWS_WITH_AS(wide.integer("big", 0), Contains("expected an integer"), ConfigError);
}

TEST_CASE("unknown keys are rejected by the schema check") {
  Config cfg = Config::from_text("a = 1\nb.c = 2\n", "inline");
  CHECK_NOTHROW(cfg.require_keys_among({"a", "b.c", "unused"}));
  CHECK_THROWS_WITH_AS(cfg.require_keys_among({"a"}),
                       Contains("key 'b.c': unknown key for this subcommand"), ConfigError);
}

TEST_CASE("config echo reloads to bit-identical values") {
  std::vector<EchoPair> pairs{{"alpha", echo_value(0.1)},
                              {"M", echo_value(512ll)},
                              {"gauged", echo_value(true)},
                              {"third", echo_value(1.0 / 3.0)}};
  const std::string echo = render_config_echo("simulate", pairs);
  CHECK(echo.rfind("subcommand = simulate\n", 0) == 0);

  Config cfg = Config::from_text(echo, "echo");
  CHECK(cfg.text("subcommand", "") == "simulate");
  CHECK(cfg.number("alpha", 0.0) == 0.1);
  CHECK(cfg.integer("M", 0) == 512);
  CHECK(cfg.boolean("gauged", false));
  CHECK(cfg.number("third", 0.0) == 1.0 / 3.0);

  CHECK(echo_value(0.1) == "0.10000000000000001");
  CHECK(echo_value(1.0) == "1");
  CHECK(echo_value(false) == "false");
  CHECK(echo_value(42ll) == "42");
}

TEST_CASE("seventeen-digit rendering survives a strtod round trip") {
  const double corpus[] = {0.1,
                           1.0 / 3.0,
                           1e300,
                           1e-300,
                           -2.5e-308,
                           3.141592653589793,
                           123456789.123456789,
                           std::numeric_limits<double>::denorm_min(),
                           -0.0};
  for (double x : corpus) {
    const std::string s = format_double(x);
    const double back = std::strtod(s.c_str(), nullptr);
    CHECK(back == x);
    CHECK(std::signbit(back) == std::signbit(x));
  }
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("csv tables: header quoting and ragged-row rejection") {
  AuditReport::Table t{"scan",
                       {"plain", "with,comma", "with\"quote", "multi\nline"},
                       {{1.0, 2.0, 3.0, 4.0}}};
  const std::string csv = table_to_csv(t);
  CHECK(csv ==
        "plain,\"with,comma\",\"with\"\"quote\",\"multi\nline\"\n"
        "1,2,3,4\n");

  t.rows.push_back({1.0});
  CHECK_THROWS_WITH_AS(table_to_csv(t),
                       Contains("table 'scan' has a row width different from its header"),
                       InputError);
}

TEST_CASE("json rendering: canonical masking, escaping, non-finite values") {
  AuditReport rep = sample_report();
  const std::string live = to_json(rep);
  const std::string canon = to_json_canonical(rep);

  // the two forms differ only in the runtime field
  const std::string key = "\"runtime_seconds\": ";
  const auto cut_live = live.find(key);
  const auto cut_canon = canon.find(key);
  REQUIRE(cut_live != std::string::npos);
  CHECK(live.substr(0, cut_live) == canon.substr(0, cut_canon));
  CHECK(live.substr(cut_live + key.size(), 4) == "3.25");
  CHECK(canon.substr(cut_canon + key.size(), 4) == "null");

  // independent parse of the canonical document
  nlohmann::json doc = nlohmann::json::parse(canon);
  CHECK(doc["name"] == "probe_audit");
  CHECK(doc["pass"] == true);
  CHECK(doc["runtime_seconds"].is_null());
  CHECK(doc["params"]["alpha"] == 0.75);
  CHECK(doc["params"]["M"] == 512);
  CHECK(doc["params"]["gauged"] == true);
  CHECK(doc["params"]["label"] == "a\"b\\c\nd");
  CHECK(doc["extremals"][0]["label"] == "worst");
  CHECK(doc["extremals"][0]["value"].is_null());  // no JSON literal for inf
  CHECK(doc["extremals"][0]["where"]["k"] == 3.0);
  CHECK(doc["extremals"][1]["value"] == 0.1);
  // tables carry their row count; the data itself lives in the csv files
  CHECK(doc["tables"][0]["name"] == "scan");
  CHECK(doc["tables"][0]["rows"] == 2);
  CHECK(doc["notes"][0] == "first \"note\"");
  CHECK(doc["notes"][1] == std::string("control\x01then tab\t"));

  // raw escape sequences as written
  CHECK(canon.find("a\\\"b\\\\c\\nd") != std::string::npos);
  CHECK(canon.find("\\u0001") != std::string::npos);
  CHECK(canon.find("then tab\\t") != std::string::npos);
}

TEST_CASE("report files land on disk byte-identical to the canonical form") {
  AuditReport rep = sample_report();
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "fnls_io_scratch";
  fs::remove_all(dir);

  const std::vector<std::string> written = write_report_files(rep, dir.string());
  REQUIRE(written.size() == 2);  // json plus one csv per table
  CHECK(fs::path(written[0]).filename() == "probe_audit.json");
  CHECK(fs::path(written[1]).filename() == "probe_audit_scan.csv");
  CHECK(slurp(written[0]) == to_json_canonical(rep));
  CHECK(slurp(written[1]) == table_to_csv(rep.tables[0]));

  fs::remove_all(dir);
}
