#pragma once

#include "grw/sim.hpp"

namespace grw {

struct OracleConfig {
  AlgoParams algo;
  uint64_t seed = 1;
  uint32_t path_write_granularity = 16;
};

// Sequential ground truth: one walk at a time, same sampler math and draw
// schedule as the pipelined simulator, so paths match it exactly for a given
// seed.
PathSink run_sequential(const CsrGraph& g, const std::vector<Query>& queries,
                        const OracleConfig& cfg);

// Exact next-hop distribution over curr's neighbors by direct enumeration.
// prev is consulted only by second-order kinds; schema_pos by MetaPath.
std::vector<double> transition_distribution(const CsrGraph& g, VertexId curr,
                                            VertexId prev, const AlgoParams& params,
                                            uint32_t schema_pos = 0);

// Bulk-synchronous static baseline: query i is bound to pipeline i mod N,
// all live walks advance in lockstep rounds, every hop pays the full
// (2*latency + kBaselineStageCycles) serial cost, and slots of terminated
// walks stay idle until the batch drains. Functional output is identical to
// simulate().
constexpr uint32_t kBaselineStageCycles = 2;

struct BaselineConfig {
  uint32_t n_pipelines = 16;
  uint32_t fixed_latency_cycles = 100;
  uint32_t batch_size = 0;  // 0 = all queries in one batch
  AlgoParams algo;
  uint64_t seed = 1;
  uint32_t path_write_granularity = 16;
};

SimResult static_batch_baseline(const BaselineConfig& cfg, const CsrGraph& g,
                                const std::vector<Query>& queries);

}  // namespace grw
