#include "grw/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace grw {

namespace {

// One full walk, collecting into the sink; returns sampled hop count.
uint32_t walk_one(const CsrGraph& g, const Query& q, const AlgoParams& params,
                  uint64_t seed, PathSink& sink) {
  WalkTask t = make_task(q, params);
  sink.open_query(q.query_id, q.v_start);
  while (t.hop < params.max_len) {
    NeighborView view = make_graph_view(g, t.curr, t.prev);
    PickResult pick =
        pick_next(view, params, seed, t.query_id, t.hop, t.prev, t.schema_pos);
    if (pick.terminated) break;
    VertexId next = g.neighbors(t.curr)[pick.index];
    t = advance(t, next, params);
    sink.collect(t.query_id, t.hop, t.curr);
  }
  sink.finish_query(q.query_id);
  return t.hop;
}

}  // namespace

PathSink run_sequential(const CsrGraph& g, const std::vector<Query>& queries,
                        const OracleConfig& cfg) {
  cfg.algo.validate();
  if (cfg.algo.kind == AlgoKind::MetaPath && !g.typed()) {
    throw std::invalid_argument("metapath requires vertex types");
  }
  PathSink sink(cfg.path_write_granularity);
  for (const Query& q : queries) {
    if (q.v_start >= g.num_vertices()) {
      throw std::invalid_argument("query start out of range");
    }
    walk_one(g, q, cfg.algo, cfg.seed, sink);
  }
  return sink;
}

std::vector<double> transition_distribution(const CsrGraph& g, VertexId curr,
                                            VertexId prev, const AlgoParams& params,
                                            uint32_t schema_pos) {
  uint32_t deg = g.degree(curr);
  if (deg == 0) throw std::invalid_argument("transition distribution of a dead end");
  std::vector<double> w(deg, 0.0);
  auto edge_weight = [&](uint32_t i) {
    return g.weighted() ? g.neighbor_weights(curr)[i] : 1.0;
  };
  switch (params.kind) {
    case AlgoKind::Urw:
    case AlgoKind::Ppr:
      std::fill(w.begin(), w.end(), 1.0);
      break;
    case AlgoKind::DeepWalk:
      for (uint32_t i = 0; i < deg; i++) w[i] = edge_weight(i);
      break;
    case AlgoKind::Node2VecReject:
    case AlgoKind::Node2VecReservoir:
      for (uint32_t i = 0; i < deg; i++) {
        VertexId x = g.neighbors(curr)[i];
        double bias = x == prev ? 1.0 / params.p
                                : (g.has_edge(prev, x) ? 1.0 : 1.0 / params.q);
        double base = params.kind == AlgoKind::Node2VecReservoir ? edge_weight(i) : 1.0;
        w[i] = base * bias;
      }
      break;
    case AlgoKind::MetaPath: {
      uint32_t expected = params.schema[schema_pos];
      for (uint32_t i = 0; i < deg; i++) {
        if (g.type_of(g.neighbors(curr)[i]) == expected) w[i] = edge_weight(i);
      }
      break;
    }
  }
  double total = 0.0;
  for (double x : w) total += x;
  if (total <= 0.0) return w;  // all-zero: early termination state
  for (double& x : w) x /= total;
  return w;
}

SimResult static_batch_baseline(const BaselineConfig& cfg, const CsrGraph& g,
                                const std::vector<Query>& queries) {
  cfg.algo.validate();
  const uint32_t n = cfg.n_pipelines;
  if (n < 1) throw std::invalid_argument("need at least one pipeline");

  SimResult result(cfg.path_write_granularity);
  SimReport& rep = result.report;
  rep.n_pipelines = n;
  rep.row_stage.resize(n);
  rep.sampling_stage.resize(n);
  rep.column_stage.resize(n);
  rep.bubbles.assign(n, 0);
  rep.dispatch_counts.assign(n, 0);
  rep.channel_accesses.assign(2 * n, 0);
  rep.algo = algo_name(cfg.algo.kind);

  // Functional walks first; lengths drive the lockstep cost model.
  std::vector<uint32_t> lengths(queries.size(), 0);
  for (size_t i = 0; i < queries.size(); i++) {
    lengths[i] = walk_one(g, queries[i], cfg.algo, cfg.seed, result.paths);
    rep.completed_queries++;
  }

  const uint64_t hop_cost = 2ull * cfg.fixed_latency_cycles + kBaselineStageCycles;
  const size_t batch = cfg.batch_size ? cfg.batch_size : std::max<size_t>(queries.size(), 1);
  uint64_t cycles = 0;
  for (size_t b0 = 0; b0 < queries.size(); b0 += batch) {
    size_t b1 = std::min(queries.size(), b0 + batch);
    std::vector<uint64_t> assigned(n, 0);
    uint32_t rounds = 0;
    for (size_t i = b0; i < b1; i++) {
      assigned[queries[i].query_id % n]++;
      rounds = std::max(rounds, lengths[i]);
    }
    uint64_t slot_width = *std::max_element(assigned.begin(), assigned.end());
    // Every round walks all slots of the widest pipeline; a terminated walk
    // still occupies its reserved slot.
    cycles += static_cast<uint64_t>(rounds) * slot_width * hop_cost;
    for (size_t i = b0; i < b1; i++) {
      uint32_t p = queries[i].query_id % n;
      uint64_t busy = static_cast<uint64_t>(lengths[i]) * hop_cost;
      uint64_t total = static_cast<uint64_t>(rounds) * hop_cost;
      rep.row_stage[p].busy += busy;
      rep.sampling_stage[p].busy += busy;
      rep.column_stage[p].busy += busy;
      rep.bubbles[p] += total - busy;
      rep.channel_accesses[p] += lengths[i];       // row fetches
      rep.channel_accesses[n + p] += lengths[i];   // column fetches
    }
  }
  rep.total_cycles = cycles;
  rep.completed_steps = result.paths.total_steps();
  rep.row_bytes = rep.completed_steps * (rp_entry_width_bits(cfg.algo.kind) / 8);
  rep.col_bytes = rep.completed_steps * 8;
  for (uint32_t p = 0; p < n; p++) {
    rep.row_stage[p].idle = cycles - rep.row_stage[p].busy;
    rep.sampling_stage[p].idle = cycles - rep.sampling_stage[p].busy;
    rep.column_stage[p].idle = cycles - rep.column_stage[p].busy;
    rep.window_bubbles += rep.bubbles[p];
  }
  rep.window_start = 0;
  rep.window_cycles = cycles;
  rep.window_steps = rep.completed_steps;
  rep.window_bytes = rep.row_bytes + rep.col_bytes;
  rep.window_accesses = 2 * rep.completed_steps;
  return result;
}

}  // namespace grw
