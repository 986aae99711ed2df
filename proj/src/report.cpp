#include "renyi/report.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>

#include "renyi/io.hpp"

namespace renyi::report {

LogBase resolve_log_base(bool bitsFlag) {
  if (bitsFlag) return LogBase::Two;
  const char* env = std::getenv("RENYI_LOG_BASE");
  if (!env || !*env) return LogBase::E;
  const std::string v(env);
  if (v == "2" || v == "bits") return LogBase::Two;
  if (v == "e" || v == "nats") return LogBase::E;
  throw ValidationError("RENYI_LOG_BASE must be e, nats, 2 or bits");
}

double in_units(double nats, LogBase base) { return (base == LogBase::Two ? nats / std::log(2.0) : nats) + 0.0; }

std::string unit_name(LogBase base) { return base == LogBase::Two ? "bits" : "nats"; }

bool is_entropic(const std::string& name) {
  const std::string suffix = "_tradeoff";
  if (name.size() >= suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) return true;
  return name == "measurement_below_holevo" || name == "holevo_below_asymmetry" || name == "asymmetry_below_entropy";
}

namespace {

struct Scaled {
  double bound, measured, slack;
};

Scaled scaled(const Row& r, LogBase base) {
  if (!is_entropic(r.check.name)) return {r.check.bound, r.check.measured, r.check.slack};
  return {in_units(r.check.bound, base), in_units(r.check.measured, base), in_units(r.check.slack, base)};
}

}  // namespace

std::vector<std::string> csv_header() {
  return {"scenario_id", "bound_name", "bound_value", "measured_value", "slack", "alpha", "beta", "n_c", "gridSize"};
}

void write_csv(std::ostream& out, const std::vector<Row>& rows, LogBase base) {
  io::write_csv_row(out, csv_header());
  for (const auto& r : rows) {
    const Scaled s = scaled(r, base);
    io::write_csv_row(out, {r.scenario, r.check.name, io::csv_number(s.bound), io::csv_number(s.measured),
                            io::csv_number(s.slack), io::csv_number(r.check.alpha), io::csv_number(r.check.beta),
                            std::to_string(r.cutoff), std::to_string(r.gridSize)});
  }
}

nlohmann::json rows_to_json(const std::vector<Row>& rows, LogBase base) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    const Scaled s = scaled(r, base);
    out.push_back({{"scenario_id", r.scenario},
                   {"bound_name", r.check.name},
                   {"bound_value", s.bound},
                   {"measured_value", s.measured},
                   {"slack", s.slack},
                   {"alpha", r.check.alpha},
                   {"beta", r.check.beta},
                   {"n_c", r.cutoff},
                   {"gridSize", r.gridSize},
                   {"informational", r.informational}});
  }
  return out;
}

int violation_count(const std::vector<Row>& rows, double tol) {
  int n = 0;
  for (const auto& r : rows)
    if (!r.informational && !r.check.holds(tol)) ++n;
  return n;
}

}  // namespace renyi::report
