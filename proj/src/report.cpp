#include "scatterlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "scatterlab/config.hpp"

namespace scatterlab {

int RunReport::n_pass() const {
  int n = 0;
  for (const auto& r : rows) n += (r.status == "pass");
  return n;
}

int RunReport::n_fail() const {
  int n = 0;
  for (const auto& r : rows) n += (r.status == "fail");
  return n;
}

void RunReport::add_check(ReportRow row) {
  row.status = (std::abs(row.value - row.oracle_value) <= row.band) ? "pass" : "fail";
  rows.push_back(std::move(row));
}

void RunReport::add_bound(ReportRow row) {
  row.status = (row.value <= row.band) ? "pass" : "fail";
  rows.push_back(std::move(row));
}

void RunReport::add_info(ReportRow row) {
  row.status = "info";
  rows.push_back(std::move(row));
}

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_csv_text(const RunReport& r) {
  std::string out =
      "estimator,cone,R,T,value,std_error,oracle_value,band,oracle_kind,status\n";
  for (const auto& row : r.rows) {
    out += csv_quote(row.estimator) + ',' + csv_quote(row.cone) + ',' +
           g17(row.R) + ',' + g17(row.T) + ',' + g17(row.value) + ',' +
           g17(row.std_error) + ',' + g17(row.oracle_value) + ',' +
           g17(row.band) + ',' + row.oracle_kind + ',' + row.status + '\n';
  }
  return out;
}

void write_report_csv(const RunReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << report_csv_text(r);
}

void write_report_json(const RunReport& r, const ExperimentConfig& cfg,
                       const std::string& path) {
  nlohmann::ordered_json j;
  char hash_buf[24];
  std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                static_cast<unsigned long long>(r.config_hash));
  j["config_hash"] = hash_buf;
  j["preset"] = cfg.preset;
  j["config"] = r.config_echo;
  j["n_pass"] = r.n_pass();
  j["n_fail"] = r.n_fail();
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    o["estimator"] = row.estimator;
    o["cone"] = row.cone;
    o["R"] = row.R;
    o["T"] = row.T;
    o["value"] = row.value;
    o["std_error"] = row.std_error;
    o["oracle_value"] = row.oracle_value;
    o["band"] = row.band;
    o["oracle_kind"] = row.oracle_kind;
    o["status"] = row.status;
    j["rows"].push_back(std::move(o));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

void write_timings_csv(const RunReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "stage,seconds\n";
  for (const auto& t : r.timings) out << csv_quote(t.stage) << ',' << g17(t.seconds) << '\n';
}

}  // namespace scatterlab
