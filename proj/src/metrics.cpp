#include "grw/metrics.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace grw {

double peak_bandwidth(const MemSpec& spec) {
  if (spec.f_mem_hz <= 0 || spec.t_rrd_cycles <= 0 || spec.n_chn == 0 ||
      spec.access_bytes == 0) {
    throw std::invalid_argument("memory spec fields must be positive");
  }
  return spec.f_mem_hz / spec.t_rrd_cycles * spec.n_chn * spec.access_bytes;
}

namespace {

uint64_t measured_cycles(const SimReport& r) {
  return r.window_cycles ? r.window_cycles : r.total_cycles;
}
uint64_t measured_bytes(const SimReport& r) {
  return r.window_cycles ? r.window_bytes : r.row_bytes + r.col_bytes + r.aux_bytes;
}
uint64_t measured_steps(const SimReport& r) {
  return r.window_cycles ? r.window_steps : r.completed_steps;
}

}  // namespace

double effective_bandwidth(const SimReport& report, double cycles_per_second) {
  uint64_t cycles = measured_cycles(report);
  if (cycles == 0) throw std::invalid_argument("no cycles to measure");
  double seconds = static_cast<double>(cycles) / cycles_per_second;
  return static_cast<double>(measured_bytes(report)) / seconds;
}

double throughput_msteps(const SimReport& report, double cycles_per_second) {
  uint64_t cycles = measured_cycles(report);
  if (cycles == 0) throw std::invalid_argument("no cycles to measure");
  double seconds = static_cast<double>(cycles) / cycles_per_second;
  return static_cast<double>(measured_steps(report)) / seconds / 1e6;
}

double bandwidth_utilization(const SimReport& report, const MemModelParams& mem,
                             double cycles_per_second) {
  MemSpec spec;
  spec.f_mem_hz = cycles_per_second;
  spec.t_rrd_cycles = mem.service_interval_cycles;
  spec.n_chn = 2 * report.n_pipelines;  // one row + one column channel per pipeline
  spec.access_bytes = 8;
  double util = effective_bandwidth(report, cycles_per_second) / peak_bandwidth(spec);
  assert(util >= 0.0 && util <= 1.0 + 1e-9);
  return util;
}

double bubble_ratio(const SimReport& report) {
  uint64_t window = measured_cycles(report);
  if (window == 0 || report.n_pipelines == 0) {
    throw std::invalid_argument("empty measurement window");
  }
  return static_cast<double>(report.window_bubbles) /
         (static_cast<double>(window) * report.n_pipelines);
}

double bubble_ratio_pipeline(const SimReport& report, uint32_t pipe) {
  uint64_t window = measured_cycles(report);
  if (window == 0) throw std::invalid_argument("empty measurement window");
  return static_cast<double>(report.bubbles.at(pipe)) / static_cast<double>(window);
}

const char* kCsvHeader = "run_id,algo,graph,N,cycles,steps,msteps,util,bubble_ratio";

std::string csv_row(const SimReport& r, const MemModelParams& mem,
                    double cycles_per_second) {
  std::ostringstream os;
  os << r.run_id << ',' << r.algo << ',' << r.graph << ',' << r.n_pipelines << ','
     << r.total_cycles << ',' << r.completed_steps << ',';
  if (measured_cycles(r) == 0) {  // empty run: zero metrics
    os << "0,0,0";
  } else {
    os << throughput_msteps(r, cycles_per_second) << ','
       << bandwidth_utilization(r, mem, cycles_per_second) << ',' << bubble_ratio(r);
  }
  return os.str();
}

namespace {

using nlohmann::json;

json stages_to_json(const std::vector<StageStats>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back({{"busy", s.busy}, {"idle", s.idle}});
  return a;
}

std::vector<StageStats> stages_from_json(const json& a) {
  std::vector<StageStats> v;
  for (const auto& e : a) v.push_back({e.at("busy"), e.at("idle")});
  return v;
}

}  // namespace

std::string report_to_json(const SimReport& r) {
  json j;
  j["run_id"] = r.run_id;
  j["algo"] = r.algo;
  j["graph"] = r.graph;
  j["n_pipelines"] = r.n_pipelines;
  j["total_cycles"] = r.total_cycles;
  j["completed_steps"] = r.completed_steps;
  j["completed_queries"] = r.completed_queries;
  j["stage_busy"] = {{"row_access", stages_to_json(r.row_stage)},
                     {"sampling", stages_to_json(r.sampling_stage)},
                     {"column_access", stages_to_json(r.column_stage)}};
  j["bubbles"] = r.bubbles;
  j["channel_accesses"] = r.channel_accesses;
  j["dispatch_counts"] = r.dispatch_counts;
  j["bytes"] = {{"row", r.row_bytes}, {"col", r.col_bytes}, {"aux", r.aux_bytes}};
  j["window"] = {{"start", r.window_start},   {"cycles", r.window_cycles},
                 {"steps", r.window_steps},   {"bytes", r.window_bytes},
                 {"accesses", r.window_accesses}, {"bubbles", r.window_bubbles}};
  return j.dump(2);
}

SimReport report_from_json(const std::string& text) {
  json j = json::parse(text);
  SimReport r;
  r.run_id = j.at("run_id");
  r.algo = j.at("algo");
  r.graph = j.at("graph");
  r.n_pipelines = j.at("n_pipelines");
  r.total_cycles = j.at("total_cycles");
  r.completed_steps = j.at("completed_steps");
  r.completed_queries = j.at("completed_queries");
  r.row_stage = stages_from_json(j.at("stage_busy").at("row_access"));
  r.sampling_stage = stages_from_json(j.at("stage_busy").at("sampling"));
  r.column_stage = stages_from_json(j.at("stage_busy").at("column_access"));
  r.bubbles = j.at("bubbles").get<std::vector<uint64_t>>();
  r.channel_accesses = j.at("channel_accesses").get<std::vector<uint64_t>>();
  r.dispatch_counts = j.at("dispatch_counts").get<std::vector<uint64_t>>();
  r.row_bytes = j.at("bytes").at("row");
  r.col_bytes = j.at("bytes").at("col");
  r.aux_bytes = j.at("bytes").at("aux");
  r.window_start = j.at("window").at("start");
  r.window_cycles = j.at("window").at("cycles");
  r.window_steps = j.at("window").at("steps");
  r.window_bytes = j.at("window").at("bytes");
  r.window_bubbles = j.at("window").at("bubbles");
  r.window_accesses = j.at("window").at("accesses");
  return r;
}

std::string export_report(const SimReport& report, ExportFormat format,
                          const MemModelParams& mem, double cycles_per_second,
                          bool csv_header) {
  switch (format) {
    case ExportFormat::Json:
      return report_to_json(report);
    case ExportFormat::Csv: {
      std::string out;
      if (csv_header) {
        out += kCsvHeader;
        out += '\n';
      }
      out += csv_row(report, mem, cycles_per_second);
      out += '\n';
      return out;
    }
  }
  throw std::invalid_argument("unknown export format");
}

}  // namespace grw
