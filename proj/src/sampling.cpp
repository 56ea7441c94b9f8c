#include "grw/sampling.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace grw {

void AlgoParams::validate() const {
  if (kind == AlgoKind::Ppr && (alpha <= 0.0 || alpha > 1.0)) {
    throw std::invalid_argument("alpha must be in (0, 1]");
  }
  if (second_order() && (p <= 0.0 || q <= 0.0)) {
    throw std::invalid_argument("p and q must be positive");
  }
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  if (kind == AlgoKind::MetaPath && schema.empty()) {
    throw std::invalid_argument("metapath schema must be nonempty");
  }
}

uint32_t sample_uniform(uint32_t degree, uint64_t r) {
  if (degree == 0) throw std::invalid_argument("sample_uniform on degree 0");
  return static_cast<uint32_t>(
      (static_cast<unsigned __int128>(r) * degree) >> 64);
}

uint32_t sample_alias_slot(double prob, uint32_t alias, uint32_t slot, uint64_t r2) {
  return RngStream::to_unit(r2) < prob ? slot : alias;
}

uint32_t sample_alias(const AliasTable& t, uint64_t r1, uint64_t r2) {
  if (t.size() == 0) throw std::invalid_argument("empty alias table");
  uint32_t slot = sample_uniform(static_cast<uint32_t>(t.size()), r1);
  return sample_alias_slot(t.prob[slot], t.alias[slot], slot, r2);
}

namespace {

constexpr uint32_t kRejectionCap = 30000;

double node2vec_bias(VertexId x, VertexId prev,
                     const std::function<bool(VertexId)>& prev_adjacent,
                     double p, double q) {
  if (x == prev) return 1.0 / p;
  if (prev_adjacent(x)) return 1.0;
  return 1.0 / q;
}

}  // namespace

uint32_t sample_node2vec_reject(VertexId prev, std::span<const VertexId> curr_neighbors,
                                const std::function<bool(VertexId)>& prev_adjacent,
                                double p, double q, RngStream& stream,
                                uint32_t* attempts) {
  if (curr_neighbors.empty()) {
    throw std::invalid_argument("rejection sampling on empty neighbor list");
  }
  const double envelope = std::max({1.0 / p, 1.0, 1.0 / q});
  uint32_t deg = static_cast<uint32_t>(curr_neighbors.size());
  for (uint32_t a = 1; a <= kRejectionCap; a++) {
    uint32_t cand = sample_uniform(deg, stream.next());
    double w = node2vec_bias(curr_neighbors[cand], prev, prev_adjacent, p, q);
    if (stream.next_unit() * envelope < w) {
      if (attempts) *attempts = a;
      return cand;
    }
  }
  throw std::runtime_error("rejection sampling failed to terminate");
}

uint32_t sample_reservoir_weighted(std::span<const WeightedCandidate> candidates,
                                   RngStream& stream) {
  double total = 0.0;
  uint32_t winner = 0;
  bool have = false;
  for (const auto& c : candidates) {
    if (c.weight <= 0.0) continue;
    total += c.weight;
    if (stream.next_unit() * total < c.weight) {
      winner = c.index;
      have = true;
    }
  }
  if (!have) throw std::invalid_argument("no candidate with positive weight");
  return winner;
}

std::vector<uint32_t> filter_metapath(std::span<const VertexId> neighbors,
                                      const std::vector<uint32_t>& vertex_types,
                                      uint32_t expected_type) {
  if (vertex_types.empty()) {
    throw std::invalid_argument("graph lacks vertex types");
  }
  std::vector<uint32_t> keep;
  for (uint32_t i = 0; i < neighbors.size(); i++) {
    if (vertex_types[neighbors[i]] == expected_type) keep.push_back(i);
  }
  return keep;
}

NeighborView make_graph_view(const CsrGraph& g, VertexId curr, VertexId prev) {
  NeighborView v;
  v.degree = g.degree(curr);
  v.neighbor = [&g, curr](uint32_t i) { return g.neighbors(curr)[i]; };
  v.weight = [&g, curr](uint32_t i) {
    return g.weighted() ? g.neighbor_weights(curr)[i] : 1.0;
  };
  v.prev_adjacent = [&g, prev](VertexId x) { return g.has_edge(prev, x); };
  auto cache = std::make_shared<AliasTable>();
  v.alias = [&g, curr, cache](uint32_t i) {
    if (cache->prob.empty()) {
      std::vector<double> w(g.degree(curr));
      for (uint32_t j = 0; j < w.size(); j++) {
        w[j] = g.weighted() ? g.neighbor_weights(curr)[j] : 1.0;
      }
      *cache = build_alias_table(w);
    }
    return MemoryLayout::AliasSlot{cache->prob[i], cache->alias[i]};
  };
  v.type_of = [&g](VertexId x) { return g.type_of(x); };
  return v;
}

PickResult pick_next(const NeighborView& view, const AlgoParams& params,
                     uint64_t seed_key, uint64_t query_id, uint32_t hop,
                     VertexId prev, uint32_t schema_pos) {
  RngStream s = task_stream(seed_key, query_id, hop);
  PickResult r;
  if (params.kind == AlgoKind::Ppr) {
    // Teleport coin; a fresh query (hop 0) always takes its first hop.
    uint64_t coin = s.next();
    if (hop >= 1 && RngStream::to_unit(coin) < params.alpha) {
      r.terminated = true;
      r.draws = static_cast<uint32_t>(s.counter() % kDrawsPerHop);
      return r;
    }
  }
  if (view.degree == 0) {
    r.terminated = true;
    r.draws = static_cast<uint32_t>(s.counter() % kDrawsPerHop);
    return r;
  }
  switch (params.kind) {
    case AlgoKind::Urw:
    case AlgoKind::Ppr:
      r.index = sample_uniform(view.degree, s.next());
      break;
    case AlgoKind::DeepWalk: {
      uint32_t slot = sample_uniform(view.degree, s.next());
      auto a = view.alias(slot);
      r.index = sample_alias_slot(a.prob, a.alias, slot, s.next());
      break;
    }
    case AlgoKind::Node2VecReject: {
      const double envelope = std::max({1.0 / params.p, 1.0, 1.0 / params.q});
      uint32_t a = 1;
      for (;; a++) {
        if (a > kRejectionCap) throw std::runtime_error("rejection cap exceeded");
        uint32_t cand = sample_uniform(view.degree, s.next());
        double w = node2vec_bias(view.neighbor(cand), prev, view.prev_adjacent,
                                 params.p, params.q);
        if (s.next_unit() * envelope < w) {
          r.index = cand;
          break;
        }
      }
      r.attempts = a;
      break;
    }
    case AlgoKind::Node2VecReservoir: {
      double total = 0.0;
      bool have = false;
      for (uint32_t i = 0; i < view.degree; i++) {
        double w = view.weight(i) * node2vec_bias(view.neighbor(i), prev,
                                                  view.prev_adjacent, params.p,
                                                  params.q);
        if (w <= 0.0) continue;
        total += w;
        if (s.next_unit() * total < w) {
          r.index = i;
          have = true;
        }
      }
      r.terminated = !have;
      break;
    }
    case AlgoKind::MetaPath: {
      uint32_t expected = params.schema[schema_pos];
      double total = 0.0;
      bool have = false;
      for (uint32_t i = 0; i < view.degree; i++) {
        if (view.type_of(view.neighbor(i)) != expected) continue;
        double w = view.weight(i);
        if (w <= 0.0) continue;
        total += w;
        if (s.next_unit() * total < w) {
          r.index = i;
          have = true;
        }
      }
      r.terminated = !have;  // no type-matching neighbor ends the walk
      break;
    }
  }
  r.draws = static_cast<uint32_t>(s.counter() % kDrawsPerHop);
  return r;
}

}  // namespace grw
