#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "grw/sampling.hpp"

namespace grw {

struct Query {
  uint32_t query_id = 0;
  VertexId v_start = 0;
};

// Stateless per-hop task. `hop` counts sampled hops completed so far; a task
// at hop h samples hop h+1. prev == curr except mid-walk in second-order
// algorithms. Stage fields (rp, sampled_index, next_vertex) are transient,
// attached between pipeline stages.
struct WalkTask {
  // In-flight stage data first (keeps the 8-byte members packed).
  RowPointerEntry rp;
  VertexId prev = 0;
  VertexId curr = 0;
  uint32_t query_id = 0;
  uint32_t hop = 0;
  uint32_t sampled_index = 0;
  VertexId next_vertex = 0;
  uint16_t schema_pos = 0;
  uint16_t rejection_attempt = 0;
};

static_assert(sizeof(WalkTask) <= 64, "task must fit one 512-bit pipeline word");

WalkTask make_task(const Query& q, const AlgoParams& params);

// Pure: rotates (prev <- curr, curr <- next), bumps hop, advances the
// MetaPath schema position cyclically.
WalkTask advance(const WalkTask& t, VertexId next, const AlgoParams& params);

// True when the walk must not take another hop: the hop cap is reached,
// the vertex is a dead end (candidate_count covers MetaPath filtering),
// or a PPR teleport coin (r, only consulted for hop >= 1) fires.
bool should_terminate(const WalkTask& t, uint32_t candidate_count,
                      const AlgoParams& params, uint64_t r);

// Streaming path collector. Elements may arrive out of hop order (tagged by
// (query_id, hop)); flushes happen in hop order whenever write_granularity
// contiguous elements are buffered, and at query termination.
class PathSink {
 public:
  explicit PathSink(uint32_t write_granularity = 16);

  void open_query(uint32_t query_id, VertexId v_start);
  // Throws std::runtime_error on duplicate (query_id, hop).
  void collect(uint32_t query_id, uint32_t hop, VertexId vertex);
  void finish_query(uint32_t query_id);

  struct FlushEvent {
    uint32_t query_id;
    uint32_t count;
    bool at_termination;
  };
  const std::vector<FlushEvent>& flush_events() const { return flush_events_; }

  const std::vector<VertexId>& path(uint32_t query_id) const;
  size_t num_queries() const { return paths_.size(); }
  uint64_t total_steps() const { return total_steps_; }  // sampled hops only

  // "query_id: v0 v1 v2 ..." lines in query order.
  void write_paths(std::ostream& out) const;

 private:
  struct PerQuery {
    std::vector<VertexId> elems;   // dense by hop
    std::vector<bool> present;
    uint32_t contiguous = 0;       // ready prefix length
    uint32_t flushed = 0;
    bool finished = false;
  };
  void maybe_flush(uint32_t query_id, PerQuery& q, bool at_term);

  uint32_t granularity_;
  std::vector<PerQuery> paths_;
  std::vector<FlushEvent> flush_events_;
  uint64_t total_steps_ = 0;
};

}  // namespace grw
