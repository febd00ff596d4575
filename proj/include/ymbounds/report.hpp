#pragma once

// Check tables: one row per verified bound or invariant, emitted as CSV or as
// a key = value text report.

#include <string>
#include <vector>

#include "ymbounds/bounds.hpp"

namespace ymb {

struct CheckRow {
  std::string check_id;
  std::string anchor;  ///< which bound or identity the row exercises
  std::string params;  ///< semicolon-separated key=value list
  double value = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  std::string side;  ///< "upper", "lower" or "equal"
  double margin = 0.0;
  bool pass = false;
};

enum class ReportFormat { Csv, Text };

ReportFormat report_format_from_string(const std::string& text);

class Report {
 public:
  void add(CheckRow row) { rows_.push_back(std::move(row)); }
  void add_bound(const std::string& id, const std::string& anchor, const std::string& params,
                 const BoundReport& b, double std_error = 0.0);

  const std::vector<CheckRow>& rows() const { return rows_; }
  bool all_pass() const;
  std::vector<CheckRow> failures() const;

  std::string to_csv() const;
  std::string to_text() const;
  std::string render(ReportFormat format) const;

 private:
  std::vector<CheckRow> rows_;
};

/// Shortest round-trippable-enough fixed formatting used in every report ("%.10g").
std::string format_number(double v);

inline constexpr const char* kCsvHeader = "check_id,anchor,params,value,std_error,bound,side,margin,verdict";

}  // namespace ymb
