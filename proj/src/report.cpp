#include "ymbounds/report.hpp"

#include <cstdio>
#include <sstream>

#include "ymbounds/errors.hpp"

namespace ymb {
namespace {

std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

ReportFormat report_format_from_string(const std::string& text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "structured-text" || text == "text") return ReportFormat::Text;
  throw ValidationError("output format must be 'csv' or 'structured-text', got '" + text + "'");
}

void Report::add_bound(const std::string& id, const std::string& anchor, const std::string& params,
                       const BoundReport& b, double std_error) {
  add(CheckRow{id, anchor, params, b.value, std_error, b.bound, to_string(b.side), b.margin, b.satisfied});
}

bool Report::all_pass() const {
  for (const auto& r : rows_) {
    if (!r.pass) return false;
  }
  return true;
}

std::vector<CheckRow> Report::failures() const {
  std::vector<CheckRow> out;
  for (const auto& r : rows_) {
    if (!r.pass) out.push_back(r);
  }
  return out;
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& r : rows_) {
    os << csv_field(r.check_id) << "," << csv_field(r.anchor) << "," << csv_field(r.params) << "," << format_number(r.value) << ","
       << format_number(r.std_error) << "," << format_number(r.bound) << "," << r.side << ","
       << format_number(r.margin) << "," << (r.pass ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

std::string Report::to_text() const {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto& r : rows_) {
    os << "[" << r.check_id << "]\n"
       << "anchor = " << r.anchor << "\n"
       << "params = " << r.params << "\n"
       << "value = " << format_number(r.value) << "\n"
       << "std_error = " << format_number(r.std_error) << "\n"
       << "bound = " << format_number(r.bound) << "\n"
       << "side = " << r.side << "\n"
       << "margin = " << format_number(r.margin) << "\n"
       << "verdict = " << (r.pass ? "PASS" : "FAIL") << "\n\n";
    failed += r.pass ? 0 : 1;
  }
  os << "[summary]\nchecks = " << rows_.size() << "\nfailed = " << failed << "\nverdict = "
     << (failed == 0 ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string Report::render(ReportFormat format) const { return format == ReportFormat::Csv ? to_csv() : to_text(); }

}  // namespace ymb
