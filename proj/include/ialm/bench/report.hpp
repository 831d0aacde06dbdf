#pragma once

#include <ialm/bench/grid.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ialm::bench {

enum class ReportFormat { Csv, Json };

namespace detail {
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
} // namespace detail

inline std::string to_csv(const std::vector<RunRecord>& records) {
  std::string out =
      "start_x1,start_x2,final_x1,final_x2,class,outer,inner,runtime_ms,status\n";
  for (const auto& r : records) {
    out += detail::fmt(r.start[0]) + ',' + detail::fmt(r.start[1]) + ',';
    out += detail::fmt(r.final_x[0]) + ',' + detail::fmt(r.final_x[1]) + ',';
    out += to_string(r.cls);
    out += ',' + std::to_string(r.outer_iters) + ',' +
           std::to_string(r.inner_iters) + ',';
    out += detail::fmt(r.runtime_s * 1e3);
    out += ',';
    out += to_string(r.status);
    out += '\n';
  }
  return out;
}

/// Scatter data sufficient to regenerate the start-point/termination-mark
/// figure in any plotting tool: one row per start point with its class.
inline std::string to_scatter_csv(const std::vector<RunRecord>& records) {
  std::string out = "start_x1,start_x2,class\n";
  for (const auto& r : records) {
    out += detail::fmt(r.start[0]) + ',' + detail::fmt(r.start[1]) + ',';
    out += to_string(r.cls);
    out += '\n';
  }
  return out;
}

inline void to_json(nlohmann::json& j, const AggregateStats& s) {
  j = {{"formulation", s.formulation},
       {"runs", s.runs},
       {"solved", s.solved},
       {"global_count", s.global_count},
       {"local_count", s.local_count},
       {"other_count", s.other_count},
       {"global_fraction", s.global_fraction},
       {"median_outer", s.median_outer},
       {"max_outer", s.max_outer},
       {"median_inner", s.median_inner},
       {"max_inner", s.max_inner},
       {"median_runtime_s", s.median_runtime_s},
       {"max_runtime_s", s.max_runtime_s}};
}

inline void from_json(const nlohmann::json& j, AggregateStats& s) {
  j.at("formulation").get_to(s.formulation);
  j.at("runs").get_to(s.runs);
  j.at("solved").get_to(s.solved);
  j.at("global_count").get_to(s.global_count);
  j.at("local_count").get_to(s.local_count);
  j.at("other_count").get_to(s.other_count);
  j.at("global_fraction").get_to(s.global_fraction);
  j.at("median_outer").get_to(s.median_outer);
  j.at("max_outer").get_to(s.max_outer);
  j.at("median_inner").get_to(s.median_inner);
  j.at("max_inner").get_to(s.max_inner);
  j.at("median_runtime_s").get_to(s.median_runtime_s);
  j.at("max_runtime_s").get_to(s.max_runtime_s);
}

inline void to_json(nlohmann::json& j, const RunRecord& r) {
  j = {{"start", {r.start[0], r.start[1]}},
       {"final_x", std::vector<double>(r.final_x.begin(), r.final_x.end())},
       {"class", to_string(r.cls)},
       {"outer", r.outer_iters},
       {"inner", r.inner_iters},
       {"runtime_ms", r.runtime_s * 1e3},
       {"status", to_string(r.status)}};
}

inline nlohmann::json report_json(const AggregateStats& stats,
                                  const std::vector<RunRecord>& records) {
  nlohmann::json j;
  j["stats"] = stats;
  j["records"] = records;
  return j;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out)
    throw std::runtime_error("write failed: " + path);
}

inline void emit_report(const AggregateStats& stats,
                        const std::vector<RunRecord>& records,
                        ReportFormat format, const std::string& path) {
  if (format == ReportFormat::Csv)
    write_file(path, to_csv(records));
  else
    write_file(path, report_json(stats, records).dump(2) + "\n");
  write_file(path + ".scatter.csv", to_scatter_csv(records));
}

} // namespace ialm::bench
