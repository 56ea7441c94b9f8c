#include "grw/layout.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace grw {

const char* algo_name(AlgoKind k) {
  switch (k) {
    case AlgoKind::Urw: return "urw";
    case AlgoKind::Ppr: return "ppr";
    case AlgoKind::DeepWalk: return "deepwalk";
    case AlgoKind::Node2VecReject: return "node2vec-reject";
    case AlgoKind::Node2VecReservoir: return "node2vec-reservoir";
    case AlgoKind::MetaPath: return "metapath";
  }
  return "?";
}

AlgoKind algo_from_name(const std::string& name) {
  if (name == "urw") return AlgoKind::Urw;
  if (name == "ppr") return AlgoKind::Ppr;
  if (name == "deepwalk") return AlgoKind::DeepWalk;
  if (name == "node2vec-reject") return AlgoKind::Node2VecReject;
  if (name == "node2vec-reservoir") return AlgoKind::Node2VecReservoir;
  if (name == "metapath") return AlgoKind::MetaPath;
  throw std::invalid_argument("unknown algorithm: " + name);
}

uint32_t rp_entry_width_bits(AlgoKind k) {
  switch (k) {
    case AlgoKind::Urw:
    case AlgoKind::Ppr:
    case AlgoKind::Node2VecReject:
      return 64;
    case AlgoKind::Node2VecReservoir:
    case AlgoKind::MetaPath:
      return 128;
    case AlgoKind::DeepWalk:
      return 256;
  }
  return 64;
}

namespace {

void check_budget(uint64_t value, uint32_t bits, const char* field) {
  if (bits < 64 && value >= (1ull << bits)) {
    throw std::invalid_argument(std::string(field) + " exceeds its bit budget");
  }
}

}  // namespace

std::array<uint64_t, 4> encode_rp_entry(const RowPointerEntry& e, uint32_t width_bits) {
  if (width_bits != 64 && width_bits != 128 && width_bits != 256) {
    throw std::invalid_argument("row-pointer width must be 64, 128 or 256 bits");
  }
  check_budget(e.channel_id, RpBudget::kChannelBits, "channel_id");
  check_budget(e.cl_start, RpBudget::kClStartBits, "cl_start");
  check_budget(e.degree, RpBudget::kDegreeBits, "degree");
  std::array<uint64_t, 4> w{0, 0, 0, 0};
  w[0] = (static_cast<uint64_t>(e.channel_id)) |
         (e.cl_start << RpBudget::kChannelBits) |
         (static_cast<uint64_t>(e.degree)
          << (RpBudget::kChannelBits + RpBudget::kClStartBits));
  if (width_bits >= 128) {
    check_budget(e.aux_offset, RpBudget::kAuxOffsetBits, "aux_offset");
    check_budget(e.aux_size, RpBudget::kAuxSizeBits, "aux_size");
    w[1] = e.aux_offset | (static_cast<uint64_t>(e.aux_size) << RpBudget::kAuxOffsetBits);
  }
  return w;
}

RowPointerEntry decode_rp_entry(const std::array<uint64_t, 4>& w, uint32_t width_bits) {
  RowPointerEntry e;
  e.channel_id = static_cast<uint32_t>(w[0] & ((1ull << RpBudget::kChannelBits) - 1));
  e.cl_start = (w[0] >> RpBudget::kChannelBits) & ((1ull << RpBudget::kClStartBits) - 1);
  e.degree = static_cast<uint32_t>(
      (w[0] >> (RpBudget::kChannelBits + RpBudget::kClStartBits)) &
      ((1ull << RpBudget::kDegreeBits) - 1));
  if (width_bits >= 128) {
    e.aux_offset = w[1] & ((1ull << RpBudget::kAuxOffsetBits) - 1);
    e.aux_size = static_cast<uint32_t>((w[1] >> RpBudget::kAuxOffsetBits) &
                                       ((1ull << RpBudget::kAuxSizeBits) - 1));
  }
  return e;
}

MemoryLayout::ColAddr MemoryLayout::locate_neighbor(const RowPointerEntry& e,
                                                    uint32_t j) const {
  if (block_granularity_ == 0) {
    return {e.channel_id, e.cl_start + j};
  }
  // cl_start holds the global column offset in block mode.
  uint64_t g = e.cl_start + j;
  uint64_t block = g / block_granularity_;
  uint32_t channel = static_cast<uint32_t>(block % n_col_channels_);
  uint64_t offset = (block / n_col_channels_) * block_granularity_ + g % block_granularity_;
  return {channel, offset};
}

MemoryLayout build_layout(const CsrGraph& g, uint32_t n_row_channels,
                          uint32_t n_col_channels, AlgoKind algo,
                          uint32_t block_granularity) {
  if (n_row_channels < 1 || n_col_channels < 1) {
    throw std::invalid_argument("channel counts must be >= 1");
  }
  if (algo == AlgoKind::MetaPath && !g.typed()) {
    throw std::invalid_argument("metapath layout requires vertex types");
  }
  MemoryLayout lay;
  lay.n_row_channels_ = n_row_channels;
  lay.n_col_channels_ = n_col_channels;
  lay.block_granularity_ = block_granularity;
  lay.algo_ = algo;

  const uint64_t n = g.num_vertices();
  lay.num_vertices_ = n;

  const bool wants_weights =
      algo == AlgoKind::DeepWalk || algo == AlgoKind::Node2VecReservoir ||
      algo == AlgoKind::MetaPath;
  const bool store_weights = wants_weights || g.weighted();
  lay.cl_store_.resize(n_col_channels);
  if (store_weights) lay.weight_store_.resize(n_col_channels);
  if (algo == AlgoKind::DeepWalk) lay.alias_store_.resize(n_col_channels);
  lay.rp_store_.resize(n_row_channels);

  auto weight_of = [&](EdgeOffset e) { return g.weighted() ? g.weights()[e] : 1.0; };

  if (block_granularity == 0) {
    // Whole neighbor lists dealt round-robin.
    uint64_t list_idx = 0;
    for (VertexId v = 0; v < n; v++) {
      uint32_t ch = static_cast<uint32_t>(list_idx % n_col_channels);
      list_idx++;
      RowPointerEntry e;
      e.channel_id = ch;
      e.cl_start = lay.cl_store_[ch].size();
      e.degree = g.degree(v);
      for (EdgeOffset k = g.row_begin(v); k < g.row_begin(v) + e.degree; k++) {
        lay.cl_store_[ch].push_back(g.col_list()[k]);
        if (store_weights) lay.weight_store_[ch].push_back(weight_of(k));
      }
      if (algo == AlgoKind::DeepWalk && e.degree > 0) {
        std::vector<double> w(e.degree);
        for (uint32_t j = 0; j < e.degree; j++) w[j] = weight_of(g.row_begin(v) + j);
        AliasTable t = build_alias_table(w);
        e.aux_offset = lay.alias_store_[ch].size();
        e.aux_size = e.degree;
        for (uint32_t j = 0; j < e.degree; j++) {
          lay.alias_store_[ch].push_back({t.prob[j], t.alias[j]});
        }
      } else if (wants_weights) {
        e.aux_offset = e.cl_start;
        e.aux_size = e.degree;
      }
      lay.rp_store_[lay.row_channel_of(v)].push_back(e);
    }
  } else {
    // Fixed-size edge blocks of the global column list dealt round-robin.
    const uint64_t m = g.num_edges();
    for (uint64_t b = 0; b * block_granularity < m; b++) {
      uint32_t ch = static_cast<uint32_t>(b % n_col_channels);
      uint64_t lo = b * block_granularity;
      uint64_t hi = std::min<uint64_t>(lo + block_granularity, m);
      // Short final block still occupies a full stride so offsets stay regular.
      for (uint64_t k = lo; k < lo + block_granularity; k++) {
        lay.cl_store_[ch].push_back(k < hi ? g.col_list()[k] : 0);
        if (store_weights) lay.weight_store_[ch].push_back(k < hi ? weight_of(k) : 0.0);
      }
    }
    for (VertexId v = 0; v < n; v++) {
      RowPointerEntry e;
      e.cl_start = g.row_begin(v);  // global offset, resolved via locate_neighbor
      e.degree = g.degree(v);
      uint64_t block = e.cl_start / block_granularity;
      e.channel_id = static_cast<uint32_t>(block % n_col_channels);
      if (algo == AlgoKind::DeepWalk && e.degree > 0) {
        std::vector<double> w(e.degree);
        for (uint32_t j = 0; j < e.degree; j++) w[j] = weight_of(g.row_begin(v) + j);
        AliasTable t = build_alias_table(w);
        e.aux_offset = lay.alias_store_[e.channel_id].size();
        e.aux_size = e.degree;
        for (uint32_t j = 0; j < e.degree; j++) {
          lay.alias_store_[e.channel_id].push_back({t.prob[j], t.alias[j]});
        }
      } else if (wants_weights) {
        e.aux_offset = e.cl_start;
        e.aux_size = e.degree;
      }
      lay.rp_store_[lay.row_channel_of(v)].push_back(e);
    }
  }
  return lay;
}

}  // namespace grw
