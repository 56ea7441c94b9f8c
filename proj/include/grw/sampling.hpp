#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "grw/layout.hpp"
#include "grw/rng.hpp"

namespace grw {

struct AlgoParams {
  AlgoKind kind = AlgoKind::Urw;
  double alpha = 0.15;             // PPR teleport probability
  double p = 1.0, q = 1.0;         // Node2Vec bias factors
  std::vector<uint32_t> schema;    // MetaPath cyclic type schema
  uint32_t max_len = 80;           // hop cap

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;

  bool second_order() const {
    return kind == AlgoKind::Node2VecReject || kind == AlgoKind::Node2VecReservoir;
  }
};

// Unbiased index in [0, degree) via widening multiply (no modulo bias).
// Throws std::invalid_argument if degree is 0.
uint32_t sample_uniform(uint32_t degree, uint64_t r);

// Two-level alias draw; r1 picks the slot, r2 is the coin.
uint32_t sample_alias(const AliasTable& t, uint64_t r1, uint64_t r2);
uint32_t sample_alias_slot(double prob, uint32_t alias, uint32_t slot, uint64_t r2);

// Node2Vec rejection sampling with envelope max(1/p, 1, 1/q). The membership
// oracle answers "is x an out-neighbor of prev".
uint32_t sample_node2vec_reject(VertexId prev, std::span<const VertexId> curr_neighbors,
                                const std::function<bool(VertexId)>& prev_adjacent,
                                double p, double q, RngStream& stream,
                                uint32_t* attempts = nullptr);

// Single-pass weighted reservoir over (index, weight) candidates.
// Throws std::invalid_argument when no candidate has positive weight.
struct WeightedCandidate {
  uint32_t index;
  double weight;
};
uint32_t sample_reservoir_weighted(std::span<const WeightedCandidate> candidates,
                                   RngStream& stream);

// Indices of neighbors whose vertex type equals expected_type, order kept.
std::vector<uint32_t> filter_metapath(std::span<const VertexId> neighbors,
                                      const std::vector<uint32_t>& vertex_types,
                                      uint32_t expected_type);

// Neighborhood view shared by the simulator and the sequential oracle so the
// sampler math (and its RNG draw schedule) is identical on both paths.
struct NeighborView {
  uint32_t degree = 0;
  std::function<VertexId(uint32_t)> neighbor;          // local index -> vertex
  std::function<double(uint32_t)> weight;              // local index -> weight
  std::function<bool(VertexId)> prev_adjacent;         // Node2Vec membership
  std::function<MemoryLayout::AliasSlot(uint32_t)> alias;  // DeepWalk table
  std::function<uint32_t(VertexId)> type_of;           // MetaPath labels
};

NeighborView make_graph_view(const CsrGraph& g, VertexId curr, VertexId prev);

// Outcome of one sampling-stage evaluation for the task identified by
// (query_id, hop). Draw indices are derived from (seed_key, query, hop) so any
// executor reproduces the same choice.
struct PickResult {
  bool terminated = false;   // dead end, teleport, or no type match
  uint32_t index = 0;        // local neighbor index when !terminated
  uint32_t attempts = 1;     // rejection attempts charged to the stage
  uint32_t draws = 0;        // RNG draws consumed
};

PickResult pick_next(const NeighborView& view, const AlgoParams& params,
                     uint64_t seed_key, uint64_t query_id, uint32_t hop,
                     VertexId prev, uint32_t schema_pos);

// Stream identity for a task's draws: one stream per query, counters
// partitioned by hop.
constexpr uint64_t kDrawsPerHop = 1ull << 16;
inline RngStream task_stream(uint64_t seed_key, uint64_t query_id, uint32_t hop) {
  return RngStream(seed_key, query_id, static_cast<uint64_t>(hop) * kDrawsPerHop);
}

}  // namespace grw
