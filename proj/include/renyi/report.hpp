#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "renyi/metrology.hpp"

namespace renyi::report {

enum class LogBase { E, Two };

// --bits wins; otherwise RENYI_LOG_BASE ("2"/"bits" or "e"/"nats"); default e. Throws on unknown values.
LogBase resolve_log_base(bool bitsFlag);
double in_units(double nats, LogBase base);
std::string unit_name(LogBase base);

// Checks whose bound and measured values are logarithms and therefore follow the log base.
bool is_entropic(const std::string& checkName);

struct Row {
  std::string scenario;
  BoundCheck check;
  Index cutoff = 0;
  Index gridSize = 0;
  bool informational = false;  // reference comparison, not a proven bound
};

std::vector<std::string> csv_header();
void write_csv(std::ostream& out, const std::vector<Row>& rows, LogBase base);
nlohmann::json rows_to_json(const std::vector<Row>& rows, LogBase base);
// Rows that are bounds and whose slack falls below -tol (nats).
int violation_count(const std::vector<Row>& rows, double tol = kSlackTol);

}  // namespace renyi::report
