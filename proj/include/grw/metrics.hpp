#pragma once

#include <iosfwd>
#include <string>

#include "grw/sim.hpp"

namespace grw {

// Peak random-access rate model. t_rrd is expressed in memory-clock cycles,
// so f_mem / t_rrd_cycles is the per-channel transaction rate.
struct MemSpec {
  double f_mem_hz = 320e6;
  double t_rrd_cycles = 1.0;
  uint32_t n_chn = 32;
  uint32_t access_bytes = 8;
};

// Bytes per second across all channels. Throws std::invalid_argument on
// nonpositive fields.
double peak_bandwidth(const MemSpec& spec);

// Bytes actually fetched for traversal divided by wall time. Uses the
// post-warmup window when the report has one. Throws on zero cycles.
double effective_bandwidth(const SimReport& report, double cycles_per_second);

// Millions of completed walk hops per second.
double throughput_msteps(const SimReport& report, double cycles_per_second);

// effective / peak, where the peak uses the simulated channel count and the
// core clock; clamped assertion keeps it in [0, 1].
double bandwidth_utilization(const SimReport& report, const MemModelParams& mem,
                             double cycles_per_second);

// Sampling-stage idle-while-backlogged fraction over the measurement window,
// aggregated across pipelines. Throws when the window is empty.
double bubble_ratio(const SimReport& report);
double bubble_ratio_pipeline(const SimReport& report, uint32_t pipe);

enum class ExportFormat { Csv, Json };

// CSV column order is fixed:
// run_id,algo,graph,N,cycles,steps,msteps,util,bubble_ratio
extern const char* kCsvHeader;
std::string export_report(const SimReport& report, ExportFormat format,
                          const MemModelParams& mem, double cycles_per_second,
                          bool csv_header = true);

std::string report_to_json(const SimReport& report);
SimReport report_from_json(const std::string& text);

std::string csv_row(const SimReport& report, const MemModelParams& mem,
                    double cycles_per_second);

}  // namespace grw
