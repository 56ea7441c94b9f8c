#pragma once

#include <cmath>

#include "grw/butterfly.hpp"
#include "grw/layout.hpp"
#include "grw/walk.hpp"

namespace grw {

// Minimum per-pipeline queue depth that keeps N rate-mu consumers busy under
// a C-cycle feedback delay: total D = N + mu*C*N, i.e. 1 + mu*C per pipeline.
inline uint32_t depth_formula(uint32_t n_pipelines, double mu, double feedback_delay) {
  if (n_pipelines < 1) throw std::invalid_argument("need at least one pipeline");
  if (mu <= 0.0) throw std::invalid_argument("service rate must be positive");
  if (feedback_delay < 0.0) throw std::invalid_argument("negative feedback delay");
  return 1u + static_cast<uint32_t>(std::ceil(mu * feedback_delay));
}

inline uint32_t default_feedback_delay(uint32_t n_pipelines) {
  return n_pipelines > 1 ? 4 * log2_exact(n_pipelines) : 0;
}

inline uint32_t default_pipe_fifo_depth(uint32_t n_pipelines) {
  return depth_formula(n_pipelines, 1.0, default_feedback_delay(n_pipelines));
}

template <typename T>
ButterflyBalancer<T> build_butterfly(uint32_t n, size_t internal_depth,
                                     std::vector<FifoChannel<T>*> outputs) {
  return ButterflyBalancer<T>(n, internal_depth, outputs);
}

// Pipeline that must run the column fetch for a task whose row access
// produced `e` (one column channel per pipeline).
uint32_t route_for_column(const RowPointerEntry& e, const MemoryLayout& layout,
                          uint32_t n_pipelines);

// Pipeline owning the row-pointer entry of v (next-hop row fetch).
uint32_t route_for_row(VertexId v, const MemoryLayout& layout, uint32_t n_pipelines);

// Zero-bubble scheduling fabric (availability mode): per-lane injection
// queues take newly loaded queries, a merger bank folds in returned
// unfinished tasks with priority, and the butterfly balancer dispatches into
// the per-pipeline FIFOs under backpressure. A fresh query reaches a pipeline
// FIFO in 2*log2(N) + 2 cycles.
template <typename T>
class SchedulerFabric {
 public:
  SchedulerFabric(uint32_t n, size_t internal_depth, size_t pipe_fifo_depth)
      : n_(n) {
    pipe_fifos_.reserve(n);
    for (uint32_t i = 0; i < n; i++) {
      pipe_fifos_.push_back(std::make_unique<FifoChannel<T>>(pipe_fifo_depth));
      fresh_.push_back(std::make_unique<FifoChannel<T>>(internal_depth));
      returned_.push_back(std::make_unique<FifoChannel<T>>(64));
    }
    std::vector<FifoChannel<T>*> disp_outs;
    for (uint32_t i = 0; i < n; i++) disp_outs.push_back(pipe_fifos_[i].get());
    dispatcher_ = std::make_unique<ButterflyBalancer<T>>(n, internal_depth, disp_outs);
    for (uint32_t i = 0; i < n; i++) {
      merger_bank_.emplace_back(returned_[i].get(), fresh_[i].get(),
                                &dispatcher_->input(i), MergePolicy::PriorityIn1);
    }
  }

  uint32_t width() const { return n_; }

  // Injection points: new queries enter a lane's loader queue, returned tasks
  // the merger bank's priority port.
  bool inject_new(uint32_t lane, const T& task) { return fresh_[lane]->push(task); }
  bool inject_returned(uint32_t lane, const T& task) {
    return returned_[lane]->push(task);
  }
  size_t returned_backlog(uint32_t lane) const { return returned_[lane]->size_live(); }

  FifoChannel<T>& pipe_fifo(uint32_t i) { return *pipe_fifos_[i]; }

  void step() {
    for (auto& m : merger_bank_) m.step();
    dispatcher_->step();
  }

  void commit() {
    dispatcher_->commit();
    for (auto& f : fresh_) f->commit();
    for (auto& f : returned_) f->commit();
    for (auto& f : pipe_fifos_) f->commit();
  }

  size_t occupancy() const {
    size_t k = dispatcher_->occupancy();
    for (auto& f : fresh_) k += f->size_live();
    for (auto& f : returned_) k += f->size_live();
    for (auto& f : pipe_fifos_) k += f->size_live();
    for (auto& m : merger_bank_) k += m.holding() ? 1 : 0;
    return k;
  }

  uint64_t dispatched(uint32_t pipe) const { return dispatcher_->input_consumed(pipe); }
  const ButterflyBalancer<T>& dispatcher() const { return *dispatcher_; }

 private:
  uint32_t n_;
  std::vector<std::unique_ptr<FifoChannel<T>>> pipe_fifos_;
  std::vector<std::unique_ptr<FifoChannel<T>>> fresh_;
  std::vector<std::unique_ptr<FifoChannel<T>>> returned_;
  std::unique_ptr<ButterflyBalancer<T>> dispatcher_;
  std::vector<MergeCell<T>> merger_bank_;
};

}  // namespace grw
