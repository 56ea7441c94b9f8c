#include "grw/walk.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace grw {

WalkTask make_task(const Query& q, const AlgoParams& params) {
  (void)params;
  WalkTask t;
  t.prev = q.v_start;
  t.curr = q.v_start;
  t.query_id = q.query_id;
  t.hop = 0;
  t.schema_pos = 0;
  return t;
}

WalkTask advance(const WalkTask& t, VertexId next, const AlgoParams& params) {
  WalkTask n = t;
  n.prev = t.curr;
  n.curr = next;
  n.hop = t.hop + 1;
  if (params.kind == AlgoKind::MetaPath) {
    n.schema_pos = static_cast<uint16_t>((t.schema_pos + 1) % params.schema.size());
  }
  n.rejection_attempt = 0;
  return n;
}

bool should_terminate(const WalkTask& t, uint32_t candidate_count,
                      const AlgoParams& params, uint64_t r) {
  if (t.hop >= params.max_len) return true;
  if (candidate_count == 0) return true;
  if (params.kind == AlgoKind::Ppr && t.hop >= 1 &&
      RngStream::to_unit(r) < params.alpha) {
    return true;
  }
  return false;
}

PathSink::PathSink(uint32_t write_granularity) : granularity_(write_granularity) {
  if (granularity_ == 0) throw std::invalid_argument("write granularity must be >= 1");
}

void PathSink::open_query(uint32_t query_id, VertexId v_start) {
  if (paths_.size() <= query_id) paths_.resize(query_id + 1);
  collect(query_id, 0, v_start);
}

void PathSink::collect(uint32_t query_id, uint32_t hop, VertexId vertex) {
  if (paths_.size() <= query_id) paths_.resize(query_id + 1);
  PerQuery& q = paths_[query_id];
  if (q.elems.size() <= hop) {
    q.elems.resize(hop + 1);
    q.present.resize(hop + 1, false);
  }
  if (q.present[hop]) {
    throw std::runtime_error("duplicate path element (" + std::to_string(query_id) +
                             "," + std::to_string(hop) + ")");
  }
  q.elems[hop] = vertex;
  q.present[hop] = true;
  if (hop > 0) total_steps_++;
  while (q.contiguous < q.present.size() && q.present[q.contiguous]) q.contiguous++;
  maybe_flush(query_id, q, false);
}

void PathSink::maybe_flush(uint32_t query_id, PerQuery& q, bool at_term) {
  while (q.contiguous - q.flushed >= granularity_) {
    q.flushed += granularity_;
    flush_events_.push_back({query_id, granularity_, false});
  }
  if (at_term && q.contiguous > q.flushed) {
    flush_events_.push_back({query_id, q.contiguous - q.flushed, true});
    q.flushed = q.contiguous;
  }
}

void PathSink::finish_query(uint32_t query_id) {
  PerQuery& q = paths_.at(query_id);
  if (q.finished) throw std::runtime_error("query finished twice");
  if (q.contiguous != q.elems.size()) {
    throw std::runtime_error("query finished with missing hops");
  }
  q.finished = true;
  maybe_flush(query_id, q, true);
}

const std::vector<VertexId>& PathSink::path(uint32_t query_id) const {
  return paths_.at(query_id).elems;
}

void PathSink::write_paths(std::ostream& out) const {
  for (uint32_t qid = 0; qid < paths_.size(); qid++) {
    out << qid << ":";
    for (VertexId v : paths_[qid].elems) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace grw
