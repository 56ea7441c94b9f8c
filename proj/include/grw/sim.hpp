#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "grw/layout.hpp"
#include "grw/mem_model.hpp"
#include "grw/walk.hpp"

namespace grw {

// Raised when an internal invariant breaks (maps to CLI exit code 3).
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SimMode : uint8_t {
  Combined,      // routed tasks + asynchronous access engines
  SchedulerOnly, // routed tasks, synchronous (one-outstanding) memory
  AsyncOnly,     // static query binding, asynchronous engines
  Baseline,      // bulk-synchronous lockstep model (reference-oracle timing)
};

const char* sim_mode_name(SimMode m);
SimMode sim_mode_from_name(const std::string& name);

struct SimConfig {
  uint32_t n_pipelines = 16;
  uint32_t pipe_fifo_depth = 0;   // 0 = 1 + 4*log2(N), the zero-bubble sizing
  uint32_t stage_fifo_depth = 32; // shallow inter-stage FIFOs
  uint32_t metadata_queue_depth = 512;
  uint32_t router_latency = 0;    // 0 = 2*log2(N)
  uint32_t async_batch_slots = 512;  // ring slots per pipeline in AsyncOnly mode
  MemModelParams mem;
  uint64_t seed = 1;
  SimMode mode = SimMode::Combined;
  uint64_t max_cycles = 0;        // 0 = run until all queries finish
  uint64_t warmup_cycles = 0;     // 0 = 10 * (latency + 4*log2(N))
  bool trace = false;
  uint64_t trace_limit = 1u << 20;
  bool count_alias_bytes = false;
  uint32_t path_write_granularity = 16;
  AlgoParams algo;

  void validate() const;
  uint32_t effective_pipe_depth() const;
  uint32_t effective_router_latency() const;
  uint64_t effective_warmup() const;
};

struct TraceEvent {
  uint64_t cycle;
  std::string unit;
  std::string event;
  uint32_t query_id;
  uint32_t hop;
};

struct StageStats {
  uint64_t busy = 0;
  uint64_t idle = 0;
};

struct SimReport {
  uint64_t total_cycles = 0;
  uint64_t completed_steps = 0;   // sampled hops collected
  uint64_t completed_queries = 0;
  uint32_t n_pipelines = 0;
  std::vector<StageStats> row_stage;     // per pipeline
  std::vector<StageStats> sampling_stage;
  std::vector<StageStats> column_stage;
  std::vector<uint64_t> bubbles;         // sampling idle while backlogged, post-warmup
  std::vector<uint64_t> channel_accesses;  // row channels then column channels
  std::vector<uint64_t> dispatch_counts;   // scheduler deliveries per pipeline
  uint64_t row_bytes = 0;
  uint64_t col_bytes = 0;
  uint64_t aux_bytes = 0;

  // Post-warmup measurement window.
  uint64_t window_start = 0;
  uint64_t window_cycles = 0;
  uint64_t window_steps = 0;
  uint64_t window_bytes = 0;
  uint64_t window_accesses = 0;
  uint64_t window_bubbles = 0;

  // Run metadata for exports.
  std::string run_id;
  std::string algo;
  std::string graph;

  std::vector<TraceEvent> trace;

  bool operator==(const SimReport& other) const;
};

struct SimResult {
  PathSink paths;
  SimReport report;

  SimResult(uint32_t granularity) : paths(granularity) {}
};

// Deterministic cycle-level run. The layout's channel counts must equal the
// pipeline count (one row and one column channel per pipeline).
SimResult simulate(const SimConfig& cfg, const CsrGraph& g, const MemoryLayout& layout,
                   const std::vector<Query>& queries);

}  // namespace grw
