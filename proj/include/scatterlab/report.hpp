// Run reports: one row per estimator check, emitted as CSV and JSON.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scatterlab {

struct ExperimentConfig;

// oracle_kind names what the comparison value is:
//   exact       - algebraic identity or conservation law (zero tolerance class)
//   closed_form - analytic formula evaluated independently
//   quadrature  - independent numerical integral of a known quantity
//   mc          - Monte Carlo cross-estimate
//   bound       - one-sided threshold
//   self        - internal consistency of the run
struct ReportRow {
  std::string estimator;
  std::string cone;  // empty when not cone-specific
  double R = 0.0;    // 0 when not applicable
  double T = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  double oracle_value = 0.0;
  double band = 0.0;
  std::string oracle_kind = "self";
  std::string status = "info";  // pass | fail | info
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RunReport {
  std::uint64_t config_hash = 0;
  std::string config_echo;
  std::vector<ReportRow> rows;
  std::vector<StageTiming> timings;  // excluded from the reproducible surface

  int n_pass() const;
  int n_fail() const;

  // |value - oracle| <= band  ->  pass
  void add_check(ReportRow row);
  // value <= band  ->  pass (one-sided)
  void add_bound(ReportRow row);
  void add_info(ReportRow row);
};

// report.csv and report.json are byte-reproducible for fixed (config, seed);
// stage timings go to a separate timings.csv.
void write_report_csv(const RunReport& r, const std::string& path);
void write_report_json(const RunReport& r, const ExperimentConfig& cfg,
                       const std::string& path);
void write_timings_csv(const RunReport& r, const std::string& path);
std::string report_csv_text(const RunReport& r);

}  // namespace scatterlab
