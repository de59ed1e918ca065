#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fnls {

// Self-describing result of one audit: the full parameter echo needed to
// re-run it, extremal values with their lattice coordinates, scan tables,
// human-readable notes (anomalies, regime warnings) and the overall verdict.
// All floating-point output is rendered with 17 significant digits; given
// identical parameters the serialized bytes are independent of thread count.
// runtime_seconds is wall-clock provenance, the one field that is not
// reproducible between runs.
struct AuditReport {
  using ParamValue = std::variant<double, long long, bool, std::string>;

  struct Extremal {
    std::string label;
    double value = 0.0;
    std::vector<std::pair<std::string, double>> where;
  };

  struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
  };

  std::string name;
  std::vector<std::pair<std::string, ParamValue>> params;
  std::vector<Extremal> extremals;
  std::vector<Table> tables;
  std::vector<std::string> notes;
  bool pass = false;
  double runtime_seconds = 0.0;

  void param(const std::string& key, ParamValue value) { params.emplace_back(key, std::move(value)); }
  void note(std::string text) { notes.push_back(std::move(text)); }
};

// "%.17g" rendering used for every floating-point value we serialize.
std::string format_double(double x);

std::string to_json(const AuditReport& report);
std::string table_to_csv(const AuditReport::Table& table);

// Writes <name>.json plus one <name>_<table>.csv per table into out_dir
// (created if needed). Returns the paths written. The JSON on disk is the
// canonical form below, so identical parameters give identical bytes.
std::vector<std::string> write_report_files(const AuditReport& report, const std::string& out_dir);

// to_json with runtime_seconds replaced by null: the canonical byte-stable
// form written to disk and compared by reproducibility checks.
std::string to_json_canonical(const AuditReport& report);

}  // namespace fnls
