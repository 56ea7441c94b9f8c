#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "grw/alias.hpp"
#include "grw/graph.hpp"

namespace grw {

// The sampling algorithm decides the row-pointer entry class: 64-bit for
// uniform/rejection sampling, 128-bit when a weight block is referenced,
// 256-bit when an alias table is referenced.
enum class AlgoKind : uint8_t {
  Urw,
  Ppr,
  DeepWalk,
  Node2VecReject,
  Node2VecReservoir,
  MetaPath,
};

const char* algo_name(AlgoKind k);
AlgoKind algo_from_name(const std::string& name);

uint32_t rp_entry_width_bits(AlgoKind k);

// Channel-tagged pointer record. Bit budgets: channel 6, cl_start 34,
// degree 24 (first word); aux_offset 40 and aux_size 24 (second word,
// wide classes only).
struct RowPointerEntry {
  uint64_t cl_start = 0;
  uint64_t aux_offset = 0;  // alias table (256-bit) or weight block (128-bit)
  uint32_t channel_id = 0;
  uint32_t degree = 0;
  uint32_t aux_size = 0;

  bool operator==(const RowPointerEntry&) const = default;
};

struct RpBudget {
  static constexpr uint32_t kChannelBits = 6;
  static constexpr uint32_t kClStartBits = 34;
  static constexpr uint32_t kDegreeBits = 24;
  static constexpr uint32_t kAuxOffsetBits = 40;
  static constexpr uint32_t kAuxSizeBits = 24;
};

// Serialized form: width_bits/64 little-endian words. Throws
// std::invalid_argument when a field exceeds its bit budget.
std::array<uint64_t, 4> encode_rp_entry(const RowPointerEntry& e, uint32_t width_bits);
RowPointerEntry decode_rp_entry(const std::array<uint64_t, 4>& words, uint32_t width_bits);

// Per-channel placement of a CSR graph: row-pointer entries are partitioned
// across row channels by striding the vertex id (channel = v mod N), which
// keeps the lookup O(1), balances cardinality within one, and spreads
// id-correlated hub vertices instead of piling them onto one channel.
// Neighbor-list blocks are dealt to column channels round-robin. Block
// granularity 0 keeps each whole list in one channel (the default); k > 0
// shuffles fixed-size k-edge blocks of the global column list instead.
class MemoryLayout {
 public:
  uint32_t n_row_channels() const { return n_row_channels_; }
  uint32_t n_col_channels() const { return n_col_channels_; }
  uint32_t block_granularity() const { return block_granularity_; }
  AlgoKind algo() const { return algo_; }

  uint32_t row_channel_of(VertexId v) const { return v % n_row_channels_; }
  // Index of v's entry within its row channel store.
  uint64_t row_index_of(VertexId v) const { return v / n_row_channels_; }
  const RowPointerEntry& rp_of(VertexId v) const {
    return rp_store_[row_channel_of(v)][row_index_of(v)];
  }

  // Column placement of neighbor j of v.
  struct ColAddr {
    uint32_t channel;
    uint64_t offset;
  };
  ColAddr locate_neighbor(const RowPointerEntry& e, uint32_t j) const;

  VertexId col_value(ColAddr a) const { return cl_store_[a.channel][a.offset]; }
  double col_weight(ColAddr a) const { return weight_store_[a.channel][a.offset]; }
  bool has_weights() const { return !weight_store_.empty(); }

  // Alias slot i of the table referenced by e (DeepWalk class).
  struct AliasSlot {
    double prob;
    uint32_t alias;
  };
  AliasSlot alias_slot(const RowPointerEntry& e, uint32_t i) const {
    return alias_store_[e.channel_id][e.aux_offset + i];
  }

  const std::vector<std::vector<RowPointerEntry>>& rp_store() const { return rp_store_; }
  const std::vector<std::vector<VertexId>>& cl_store() const { return cl_store_; }
  uint64_t num_vertices() const { return num_vertices_; }

  friend MemoryLayout build_layout(const CsrGraph& g, uint32_t n_row_channels,
                                   uint32_t n_col_channels, AlgoKind algo,
                                   uint32_t block_granularity);

 private:
  uint32_t n_row_channels_ = 1;
  uint32_t n_col_channels_ = 1;
  uint32_t block_granularity_ = 0;
  AlgoKind algo_ = AlgoKind::Urw;
  uint64_t num_vertices_ = 0;
  std::vector<std::vector<RowPointerEntry>> rp_store_;
  std::vector<std::vector<VertexId>> cl_store_;
  std::vector<std::vector<double>> weight_store_;
  std::vector<std::vector<AliasSlot>> alias_store_;
};

MemoryLayout build_layout(const CsrGraph& g, uint32_t n_row_channels,
                          uint32_t n_col_channels, AlgoKind algo,
                          uint32_t block_granularity = 0);

}  // namespace grw
