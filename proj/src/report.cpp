#include "fnls/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fnls/errors.hpp"

namespace fnls {

namespace {

// JSON string escaping per RFC 8259 (control chars, quote, backslash).
void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
}

// JSON has no literal for non-finite numbers; render them as null so the
// document stays parseable (audits flag such values in notes separately).
void append_json_number(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  out += format_double(x);
}

void append_param_value(std::string& out, const AuditReport::ParamValue& v) {
  if (const double* d = std::get_if<double>(&v)) {
    append_json_number(out, *d);
  } else if (const long long* i = std::get_if<long long>(&v)) {
    out += std::to_string(*i);
  } else if (const bool* b = std::get_if<bool>(&v)) {
    out += *b ? "true" : "false";
  } else {
    append_json_string(out, std::get<std::string>(v));
  }
}

std::string render_json(const AuditReport& r, bool mask_runtime) {
  std::string out;
  out.reserve(4096);
  out += "{\n  \"name\": ";
  append_json_string(out, r.name);
  out += ",\n  \"params\": {";
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    append_json_string(out, r.params[i].first);
    out += ": ";
    append_param_value(out, r.params[i].second);
  }
  out += r.params.empty() ? "}" : "\n  }";
  out += ",\n  \"extremals\": [";
  for (std::size_t i = 0; i < r.extremals.size(); ++i) {
    const auto& e = r.extremals[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"label\": ";
    append_json_string(out, e.label);
    out += ", \"value\": ";
    append_json_number(out, e.value);
    out += ", \"where\": {";
    for (std::size_t j = 0; j < e.where.size(); ++j) {
      if (j) out += ", ";
      append_json_string(out, e.where[j].first);
      out += ": ";
      append_json_number(out, e.where[j].second);
    }
    out += "}}";
  }
  out += r.extremals.empty() ? "]" : "\n  ]";
  out += ",\n  \"tables\": [";
  for (std::size_t i = 0; i < r.tables.size(); ++i) {
    const auto& t = r.tables[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"name\": ";
    append_json_string(out, t.name);
    out += ", \"columns\": [";
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      if (j) out += ", ";
      append_json_string(out, t.columns[j]);
    }
    out += "], \"rows\": ";
    out += std::to_string(t.rows.size());
    out += "}";
  }
  out += r.tables.empty() ? "]" : "\n  ]";
  out += ",\n  \"notes\": [";
  for (std::size_t i = 0; i < r.notes.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    append_json_string(out, r.notes[i]);
  }
  out += r.notes.empty() ? "]" : "\n  ]";
  out += ",\n  \"pass\": ";
  out += r.pass ? "true" : "false";
  out += ",\n  \"runtime_seconds\": ";
  if (mask_runtime) {
    out += "null";
  } else {
    append_json_number(out, r.runtime_seconds);
  }
  out += "\n}\n";
  return out;
}

// CSV field quoting per RFC 4180: quote when the field contains a comma,
// quote or newline; double embedded quotes.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string to_json(const AuditReport& report) { return render_json(report, false); }

std::string to_json_canonical(const AuditReport& report) { return render_json(report, true); }

std::string table_to_csv(const AuditReport::Table& table) {
  std::string out;
  out.reserve(64 * (table.rows.size() + 1));
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j) out += ',';
    out += csv_field(table.columns[j]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw InputError("table '" + table.name + "' has a row width different from its header");
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_double(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> write_report_files(const AuditReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());

  std::vector<std::string> written;
  auto emit = [&](const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + p.string() + "' for writing");
    f << content;
    f.close();
    if (!f) throw ConfigError("failed writing '" + p.string() + "'");
    written.push_back(p.string());
  };

  // Artifacts must be byte-identical across reruns and thread counts, so the
  // volatile wall-clock field is masked; runtime is reported on stdout instead.
  emit(fs::path(out_dir) / (report.name + ".json"), to_json_canonical(report));
  for (const auto& t : report.tables)
    emit(fs::path(out_dir) / (report.name + "_" + t.name + ".csv"), table_to_csv(t));
  return written;
}

}  // namespace fnls
