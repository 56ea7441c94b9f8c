#include "grw/sim.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "grw/cells.hpp"
#include "grw/scheduler.hpp"

namespace grw {

const char* sim_mode_name(SimMode m) {
  switch (m) {
    case SimMode::Combined: return "combined";
    case SimMode::SchedulerOnly: return "scheduler-only";
    case SimMode::AsyncOnly: return "async-only";
    case SimMode::Baseline: return "baseline";
  }
  return "?";
}

SimMode sim_mode_from_name(const std::string& name) {
  if (name == "combined") return SimMode::Combined;
  if (name == "scheduler-only") return SimMode::SchedulerOnly;
  if (name == "async-only") return SimMode::AsyncOnly;
  if (name == "baseline") return SimMode::Baseline;
  throw std::invalid_argument("unknown mode: " + name);
}

void SimConfig::validate() const {
  if (n_pipelines < 1) throw std::invalid_argument("need at least one pipeline");
  if (n_pipelines > 1 && !is_power_of_two(n_pipelines)) {
    throw std::invalid_argument("pipeline count must be a power of two");
  }
  if (mem.fixed_latency_cycles < 1) throw std::invalid_argument("latency must be >= 1");
  if (mem.service_interval_cycles < 1) throw std::invalid_argument("service interval >= 1");
  if (mem.scramble_window < 1) throw std::invalid_argument("scramble window >= 1");
  if (stage_fifo_depth < 2) throw std::invalid_argument("stage fifos need depth >= 2");
  algo.validate();
}

uint32_t SimConfig::effective_pipe_depth() const {
  return pipe_fifo_depth ? pipe_fifo_depth : default_pipe_fifo_depth(n_pipelines);
}

uint32_t SimConfig::effective_router_latency() const {
  if (router_latency) return router_latency;
  return n_pipelines > 1 ? 2 * log2_exact(n_pipelines) : 1;
}

uint64_t SimConfig::effective_warmup() const {
  if (warmup_cycles) return warmup_cycles;
  return 10ull * (mem.fixed_latency_cycles + default_feedback_delay(n_pipelines) + 2);
}

bool SimReport::operator==(const SimReport& o) const {
  auto stage_eq = [](const std::vector<StageStats>& a, const std::vector<StageStats>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); i++) {
      if (a[i].busy != b[i].busy || a[i].idle != b[i].idle) return false;
    }
    return true;
  };
  return total_cycles == o.total_cycles && completed_steps == o.completed_steps &&
         completed_queries == o.completed_queries && n_pipelines == o.n_pipelines &&
         stage_eq(row_stage, o.row_stage) && stage_eq(sampling_stage, o.sampling_stage) &&
         stage_eq(column_stage, o.column_stage) && bubbles == o.bubbles &&
         channel_accesses == o.channel_accesses && dispatch_counts == o.dispatch_counts &&
         row_bytes == o.row_bytes && col_bytes == o.col_bytes && aux_bytes == o.aux_bytes &&
         window_start == o.window_start && window_cycles == o.window_cycles &&
         window_steps == o.window_steps && window_bytes == o.window_bytes &&
         window_accesses == o.window_accesses && window_bubbles == o.window_bubbles &&
         run_id == o.run_id && algo == o.algo && graph == o.graph;
}

namespace {

// N-to-N transit fabric with a fixed delay, one delivery per output port per
// cycle, and bounded per-output staging (callers wait on can_accept).
class TaskRouter {
 public:
  TaskRouter(uint32_t n_out, uint32_t delay, size_t cap, std::vector<FifoChannel<WalkTask>*> dests)
      : delay_(delay), cap_(cap), dests_(std::move(dests)) {
    lanes_.resize(n_out);
  }

  bool can_accept(uint32_t out) const { return lanes_[out].size() < cap_; }

  void push(uint64_t cycle, uint32_t out, WalkTask t) {
    assert(can_accept(out));
    lanes_[out].push_back({cycle + delay_, std::move(t)});
  }

  void step(uint64_t cycle) {
    for (uint32_t o = 0; o < lanes_.size(); o++) {
      auto& lane = lanes_[o];
      if (lane.empty() || lane.front().ready > cycle) continue;
      if (dests_[o]->push(lane.front().task)) lane.pop_front();
    }
  }

  size_t occupancy() const {
    size_t k = 0;
    for (const auto& l : lanes_) k += l.size();
    return k;
  }

 private:
  struct InTransit {
    uint64_t ready;
    WalkTask task;
  };
  uint32_t delay_;
  size_t cap_;
  std::vector<FifoChannel<WalkTask>*> dests_;
  std::vector<std::deque<InTransit>> lanes_;
};

struct Pipeline {
  std::unique_ptr<FifoChannel<WalkTask>> input;    // scheduler -> RA
  std::unique_ptr<FifoChannel<WalkTask>> ra_out;   // RA -> router
  std::unique_ptr<FifoChannel<WalkTask>> sp_in;    // router -> sampling
  std::unique_ptr<FifoChannel<WalkTask>> sp_out;   // sampling -> CA
  std::unique_ptr<FifoChannel<WalkTask>> ca_out;   // CA -> post-hop
  std::unique_ptr<FifoChannel<WalkTask>> returned; // merger priority port
  std::unique_ptr<FifoChannel<WalkTask>> fresh;    // merger new-query port
  std::unique_ptr<AsyncAccessEngine> ra;
  std::unique_ptr<AsyncAccessEngine> ca;
  std::unique_ptr<MergeCell<WalkTask>> merger;
};

class SimEngine {
 public:
  SimEngine(const SimConfig& cfg, const CsrGraph& g, const MemoryLayout& layout,
            const std::vector<Query>& queries)
      : cfg_(cfg), g_(g), layout_(layout), queries_(queries), result_(cfg.path_write_granularity) {
    const uint32_t n = cfg_.n_pipelines;
    MemModelParams mp = cfg_.mem;
    if (cfg_.mode == SimMode::SchedulerOnly) mp.max_outstanding = 1;

    for (uint32_t c = 0; c < n; c++) {
      row_channels_.push_back(std::make_unique<MemChannel>(c, mp, cfg_.seed));
      col_channels_.push_back(std::make_unique<MemChannel>(n + c, mp, cfg_.seed));
    }

    std::vector<FifoChannel<WalkTask>*> sp_dests, ret_dests, fresh_dests;
    pipes_.resize(n);
    for (uint32_t i = 0; i < n; i++) {
      Pipeline& p = pipes_[i];
      p.input = std::make_unique<FifoChannel<WalkTask>>(cfg_.effective_pipe_depth());
      p.ra_out = std::make_unique<FifoChannel<WalkTask>>(cfg_.stage_fifo_depth);
      p.sp_in = std::make_unique<FifoChannel<WalkTask>>(cfg_.stage_fifo_depth);
      p.sp_out = std::make_unique<FifoChannel<WalkTask>>(cfg_.stage_fifo_depth);
      p.ca_out = std::make_unique<FifoChannel<WalkTask>>(cfg_.stage_fifo_depth);
      // The feedback ring must never close a circular wait: returned tasks
      // always find room, and the loader's admission budget bounds the
      // population instead.
      p.returned = std::make_unique<FifoChannel<WalkTask>>(1u << 20);
      p.fresh = std::make_unique<FifoChannel<WalkTask>>(cfg_.stage_fifo_depth);
    }
    for (uint32_t i = 0; i < n; i++) {
      Pipeline& p = pipes_[i];
      std::vector<MemChannel*> rows, cols;
      for (auto& c : row_channels_) rows.push_back(c.get());
      for (auto& c : col_channels_) cols.push_back(c.get());
      p.ra = std::make_unique<AsyncAccessEngine>(
          p.input.get(), p.ra_out.get(), rows,
          [this](const WalkTask& t) { return layout_.row_channel_of(t.curr); },
          [this](WalkTask& t) { t.rp = layout_.rp_of(t.curr); },
          cfg_.metadata_queue_depth);
      p.ca = std::make_unique<AsyncAccessEngine>(
          p.sp_out.get(), p.ca_out.get(), cols,
          [this](const WalkTask& t) {
            return layout_.locate_neighbor(t.rp, t.sampled_index).channel;
          },
          [this](WalkTask& t) {
            t.next_vertex = layout_.col_value(layout_.locate_neighbor(t.rp, t.sampled_index));
          },
          cfg_.metadata_queue_depth);
      p.merger = std::make_unique<MergeCell<WalkTask>>(
          p.returned.get(), p.fresh.get(), p.input.get(), MergePolicy::PriorityIn1);
      sp_dests.push_back(p.sp_in.get());
      ret_dests.push_back(p.returned.get());
      fresh_dests.push_back(p.fresh.get());
    }
    const uint32_t rl = cfg_.effective_router_latency();
    mid_router_ = std::make_unique<TaskRouter>(n, rl, cfg_.stage_fifo_depth, sp_dests);
    return_router_ = std::make_unique<TaskRouter>(n, rl, cfg_.stage_fifo_depth, ret_dests);
    fresh_router_ = std::make_unique<TaskRouter>(n, rl, cfg_.stage_fifo_depth, fresh_dests);

    report_.n_pipelines = n;
    report_.row_stage.resize(n);
    report_.sampling_stage.resize(n);
    report_.column_stage.resize(n);
    report_.bubbles.assign(n, 0);
    report_.dispatch_counts.assign(n, 0);
    report_.algo = algo_name(cfg_.algo.kind);

    if (cfg_.mode == SimMode::AsyncOnly) {
      // Static binding: queries are pre-assigned and flow in reserved-slot
      // batches; a batch refills only once all of its walks have finished.
      static_queries_.resize(n);
      for (size_t qi = 0; qi < queries_.size(); qi++) {
        static_queries_[queries_[qi].query_id % n].push_back(qi);
      }
      static_cursor_.assign(n, 0);
      batch_admits_left_.assign(n, 0);
      batch_live_.assign(n, 0);
    }
  }

  SimResult run() {
    warmup_ = cfg_.effective_warmup();
    bool window_open = false;
    uint64_t idle_cycles = 0;
    while (true) {
      if (cfg_.max_cycles && cycle_ >= cfg_.max_cycles) break;
      if (next_query_ >= queries_.size() && live_tasks_ == 0) break;
      if (!window_open && cycle_ == warmup_) {
        open_window();
        window_open = true;
      }
      uint64_t before = progress_;
      step_cycle();
      idle_cycles = progress_ == before ? idle_cycles + 1 : 0;
      if (idle_cycles > 4 * (cfg_.mem.fixed_latency_cycles + 1000)) {
        throw InternalError("simulation stalled (internal invariant violation)");
      }
      cycle_++;
      if ((cycle_ & 63) == 0) audit();
    }
    close_run(window_open);
    return std::move(result_);
  }

 private:
  uint64_t fetched_bytes() const {
    uint64_t row_issued = 0, col_issued = 0;
    for (auto& p : pipes_) {
      row_issued += p.ra->issued();
      col_issued += p.ca->issued();
    }
    return row_issued * (rp_entry_width_bits(cfg_.algo.kind) / 8) + col_issued * 8 +
           aux_bytes_;
  }

  void open_window() {
    report_.window_start = cycle_;
    win_steps0_ = result_.paths.total_steps();
    win_bytes0_ = fetched_bytes();
    win_accesses0_ = total_accesses();
  }

  uint64_t total_accesses() const {
    uint64_t k = 0;
    for (auto& c : row_channels_) k += c->accesses();
    for (auto& c : col_channels_) k += c->accesses();
    return k;
  }

  void close_run(bool window_open) {
    report_.total_cycles = cycle_;
    report_.completed_steps = result_.paths.total_steps();
    uint64_t row_issued = 0, col_issued = 0;
    for (auto& p : pipes_) {
      row_issued += p.ra->issued();
      col_issued += p.ca->issued();
    }
    report_.row_bytes = row_issued * (rp_entry_width_bits(cfg_.algo.kind) / 8);
    report_.col_bytes = col_issued * 8;
    report_.aux_bytes = aux_bytes_;
    if (window_open) {
      report_.window_cycles = cycle_ - report_.window_start;
      report_.window_steps = result_.paths.total_steps() - win_steps0_;
      report_.window_bytes = fetched_bytes() - win_bytes0_;
      report_.window_accesses = total_accesses() - win_accesses0_;
    }
    for (uint32_t i = 0; i < cfg_.n_pipelines; i++) {
      report_.window_bubbles += report_.bubbles[i];
      report_.row_stage[i].idle = cycle_ - report_.row_stage[i].busy;
      report_.sampling_stage[i].idle = cycle_ - report_.sampling_stage[i].busy;
      report_.column_stage[i].idle = cycle_ - report_.column_stage[i].busy;
      report_.dispatch_counts[i] = pipes_[i].merger->takes(0) + pipes_[i].merger->takes(1);
    }
    for (auto& c : row_channels_) report_.channel_accesses.push_back(c->accesses());
    for (auto& c : col_channels_) report_.channel_accesses.push_back(c->accesses());
    result_.report = std::move(report_);
  }

  void step_cycle() {
    const uint32_t n = cfg_.n_pipelines;
    for (auto& c : row_channels_) c->step(cycle_);
    for (auto& c : col_channels_) c->step(cycle_);

    for (uint32_t k = 0; k < n; k++) {
      uint32_t i = static_cast<uint32_t>((cycle_ + k) % n);
      if (pipes_[i].ra->step_retire()) {
        report_.row_stage[i].busy++;
        progress_++;
        if (trace_gate())
          trace_event("ra" + std::to_string(i), "row_access", pipes_[i].ra->last_retired());
      }
    }
    for (uint32_t i = 0; i < n; i++) step_mid_route(i);
    mid_router_->step(cycle_);
    for (uint32_t i = 0; i < n; i++) step_sampling(i);
    for (uint32_t k = 0; k < n; k++) {
      uint32_t i = static_cast<uint32_t>((cycle_ + k) % n);
      if (pipes_[i].ca->step_retire()) {
        report_.column_stage[i].busy++;
        progress_++;
        if (trace_gate())
          trace_event("ca" + std::to_string(i), "column_access", pipes_[i].ca->last_retired());
      }
    }
    for (uint32_t i = 0; i < n; i++) step_posthop(i);
    return_router_->step(cycle_);
    fresh_router_->step(cycle_);
    for (uint32_t i = 0; i < n; i++) pipes_[i].merger->step();
    for (uint32_t k = 0; k < n; k++) {
      uint32_t i = static_cast<uint32_t>((cycle_ + k) % n);
      pipes_[i].ra->step_issue(cycle_);
    }
    for (uint32_t k = 0; k < n; k++) {
      uint32_t i = static_cast<uint32_t>((cycle_ + k) % n);
      pipes_[i].ca->step_issue(cycle_);
    }
    step_loader();
    commit_all();
  }

  void step_mid_route(uint32_t i) {
    Pipeline& p = pipes_[i];
    if (!p.ra_out->can_pop()) return;
    const WalkTask& t = p.ra_out->front();
    uint32_t dest = cfg_.mode == SimMode::AsyncOnly
                        ? i
                        : route_for_column(t.rp, layout_, cfg_.n_pipelines);
    if (!mid_router_->can_accept(dest)) return;
    mid_router_->push(cycle_, dest, t);
    p.ra_out->pop();
  }

  void step_sampling(uint32_t i) {
    Pipeline& p = pipes_[i];
    bool busy = false;
    if (p.sp_out->size_live() < p.sp_out->capacity() && p.sp_in->can_pop()) {
      WalkTask t = *p.sp_in->pop();
      busy = true;
      PickResult pick = eval_pick(t);
      if (t.rejection_attempt + 1u < pick.attempts) {
        t.rejection_attempt++;
        bool ok = p.sp_in->push(t);  // pipelined rejection re-entry
        assert(ok);
        (void)ok;
        if (trace_gate()) trace_event("sp" + std::to_string(i), "retry", t);
      } else if (pick.terminated) {
        finish_walk(t.query_id);
        if (trace_gate()) trace_event("sp" + std::to_string(i), "terminate", t);
      } else {
        if (cfg_.count_alias_bytes && cfg_.algo.kind == AlgoKind::DeepWalk) {
          aux_bytes_ += 8;
        }
        t.sampled_index = pick.index;
        bool ok = p.sp_out->push(t);
        assert(ok);
        (void)ok;
        if (trace_gate()) trace_event("sp" + std::to_string(i), "sample", t);
      }
    }
    if (busy) {
      report_.sampling_stage[i].busy++;
      progress_++;
    } else if (cycle_ >= warmup_ && backlogged()) {
      report_.bubbles[i]++;
    }
  }

  PickResult eval_pick(const WalkTask& t) {
    NeighborView view;
    const RowPointerEntry& rp = t.rp;
    view.degree = rp.degree;
    view.neighbor = [this, &rp](uint32_t j) {
      return layout_.col_value(layout_.locate_neighbor(rp, j));
    };
    view.weight = [this, &rp](uint32_t j) {
      return layout_.has_weights()
                 ? layout_.col_weight(layout_.locate_neighbor(rp, j))
                 : 1.0;
    };
    view.alias = [this, &rp](uint32_t j) { return layout_.alias_slot(rp, j); };
    VertexId prev = t.prev;
    view.prev_adjacent = [this, prev](VertexId x) { return g_.has_edge(prev, x); };
    view.type_of = [this](VertexId x) { return g_.type_of(x); };
    return pick_next(view, cfg_.algo, cfg_.seed, t.query_id, t.hop, t.prev, t.schema_pos);
  }

  void step_posthop(uint32_t i) {
    Pipeline& p = pipes_[i];
    if (!p.ca_out->can_pop()) return;
    const WalkTask& t = p.ca_out->front();
    WalkTask nt = advance(t, t.next_vertex, cfg_.algo);
    if (nt.hop >= cfg_.algo.max_len) {
      result_.paths.collect(nt.query_id, nt.hop, nt.curr);
      finish_walk(nt.query_id);
      if (trace_gate()) trace_event("ph" + std::to_string(i), "complete", nt);
      p.ca_out->pop();
      progress_++;
      return;
    }
    uint32_t dest = cfg_.mode == SimMode::AsyncOnly
                        ? i
                        : route_for_row(nt.curr, layout_, cfg_.n_pipelines);
    if (!return_router_->can_accept(dest)) return;  // backpressure, retry next cycle
    result_.paths.collect(nt.query_id, nt.hop, nt.curr);
    nt.rp = RowPointerEntry{};
    nt.sampled_index = 0;
    nt.next_vertex = 0;
    return_router_->push(cycle_, dest, nt);
    if (trace_gate()) trace_event("ph" + std::to_string(i), "requeue", nt);
    p.ca_out->pop();
    progress_++;
  }

  // Credit-based admission: enough in flight to hide latency on both access
  // engines of every pipeline, well below the buffering of the feedback ring.
  uint64_t admission_budget() const {
    return static_cast<uint64_t>(cfg_.n_pipelines) *
           (cfg_.effective_pipe_depth() + 2ull * cfg_.mem.max_outstanding +
            4ull * cfg_.stage_fifo_depth);
  }

  void step_loader() {
    if (cfg_.mode == SimMode::AsyncOnly) {
      step_loader_static();
      return;
    }
    const uint64_t budget = admission_budget();
    for (uint32_t k = 0; k < cfg_.n_pipelines; k++) {
      if (next_query_ >= queries_.size() || live_tasks_ >= budget) return;
      const Query& q = queries_[next_query_];
      uint32_t dest = route_for_row(q.v_start, layout_, cfg_.n_pipelines);
      if (!fresh_router_->can_accept(dest)) return;
      inject(q, dest);
      next_query_++;
    }
  }

  void step_loader_static() {
    for (uint32_t p = 0; p < cfg_.n_pipelines; p++) {
      auto& list = static_queries_[p];
      if (batch_admits_left_[p] == 0 && batch_live_[p] == 0 &&
          static_cursor_[p] < list.size()) {
        batch_admits_left_[p] = std::min<uint64_t>(
            cfg_.async_batch_slots, list.size() - static_cursor_[p]);
      }
      if (batch_admits_left_[p] == 0) continue;
      if (!fresh_router_->can_accept(p)) continue;
      const Query& q = queries_[list[static_cursor_[p]]];
      inject(q, p);
      static_cursor_[p]++;
      batch_admits_left_[p]--;
      batch_live_[p]++;
      next_query_++;
    }
  }

  void inject(const Query& q, uint32_t dest) {
    WalkTask t = make_task(q, cfg_.algo);
    result_.paths.open_query(q.query_id, q.v_start);
    live_tasks_++;
    fresh_router_->push(cycle_, dest, t);
    if (trace_gate()) trace_event("loader", "inject", t);
    progress_++;
  }

  void finish_walk(uint32_t query_id) {
    result_.paths.finish_query(query_id);
    report_.completed_queries++;
    live_tasks_--;
    if (cfg_.mode == SimMode::AsyncOnly) {
      batch_live_[query_id % cfg_.n_pipelines]--;
    }
  }

  bool backlogged() const { return live_tasks_ > 0 || next_query_ < queries_.size(); }

  void commit_all() {
    for (auto& p : pipes_) {
      p.input->commit();
      p.ra_out->commit();
      p.sp_in->commit();
      p.sp_out->commit();
      p.ca_out->commit();
      p.returned->commit();
      p.fresh->commit();
    }
  }

  // Conservation: every live task sits in exactly one place.
  void audit() {
    size_t held = 0;
    for (auto& p : pipes_) {
      held += p.input->size_live() + p.ra_out->size_live() + p.sp_in->size_live() +
              p.sp_out->size_live() + p.ca_out->size_live() + p.returned->size_live() +
              p.fresh->size_live();
      held += p.ra->in_flight() + p.ca->in_flight();
    }
    held += mid_router_->occupancy() + return_router_->occupancy() + fresh_router_->occupancy();
    for (auto& p : pipes_) held += p.merger->holding() ? 1 : 0;
    if (held != live_tasks_) {
      throw InternalError("task conservation violated at cycle " + std::to_string(cycle_));
    }
  }

  bool trace_gate() const {
    return cfg_.trace && report_.trace.size() < cfg_.trace_limit;
  }
  void trace_event(const std::string& unit, const std::string& event, const WalkTask& t) {
    if (!trace_gate()) return;
    report_.trace.push_back({cycle_, unit, event, t.query_id, t.hop});
  }

  const SimConfig& cfg_;
  const CsrGraph& g_;
  const MemoryLayout& layout_;
  const std::vector<Query>& queries_;
  SimResult result_;
  SimReport report_;
  std::vector<Pipeline> pipes_;
  std::vector<std::unique_ptr<MemChannel>> row_channels_;
  std::vector<std::unique_ptr<MemChannel>> col_channels_;
  std::unique_ptr<TaskRouter> mid_router_;
  std::unique_ptr<TaskRouter> return_router_;
  std::unique_ptr<TaskRouter> fresh_router_;
  uint64_t cycle_ = 0;
  uint64_t live_tasks_ = 0;
  size_t next_query_ = 0;
  uint64_t progress_ = 0;
  uint64_t warmup_ = 0;
  uint64_t aux_bytes_ = 0;
  uint64_t win_steps0_ = 0, win_bytes0_ = 0, win_accesses0_ = 0;
  std::vector<std::vector<size_t>> static_queries_;  // AsyncOnly partition
  std::vector<size_t> static_cursor_;
  std::vector<uint64_t> batch_admits_left_;
  std::vector<uint64_t> batch_live_;
};

}  // namespace

SimResult simulate(const SimConfig& cfg, const CsrGraph& g, const MemoryLayout& layout,
                   const std::vector<Query>& queries) {
  cfg.validate();
  if (cfg.mode == SimMode::Baseline) {
    throw std::invalid_argument("baseline timing runs through static_batch_baseline");
  }
  if (layout.n_row_channels() != cfg.n_pipelines ||
      layout.n_col_channels() != cfg.n_pipelines) {
    throw std::invalid_argument("layout channels must match pipeline count");
  }
  if (cfg.algo.kind == AlgoKind::MetaPath && !g.typed()) {
    throw std::invalid_argument("metapath requires vertex types");
  }
  for (const Query& q : queries) {
    if (q.v_start >= g.num_vertices()) throw std::invalid_argument("query start out of range");
  }
  SimEngine engine(cfg, g, layout, queries);
  return engine.run();
}

}  // namespace grw
