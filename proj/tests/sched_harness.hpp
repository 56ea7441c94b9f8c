#pragma once

#include <deque>
#include <vector>

#include "grw/rng.hpp"
#include "grw/scheduler.hpp"
#include "grw/walk.hpp"

namespace testutil {

// Closed-loop rig around the availability-mode scheduler fabric: N synthetic
// pipelines each consume one task per cycle (mu = 1) and send the unfinished
// successor back through a fixed-delay feedback path; the loader keeps every
// balancer input backlogged. Bubbles are consumer cycles with an empty FIFO.
class FabricHarness {
 public:
  FabricHarness(uint32_t n, uint32_t pipe_depth, uint32_t max_len = 80,
                uint64_t seed = 1, uint32_t fabric_depth = 4)
      : n_(n),
        max_len_(max_len),
        seed_(seed),
        return_delay_(n > 1 ? std::max(1u, 2 * grw::log2_exact(n) - 1) : 1),
        fabric_(n, fabric_depth, pipe_depth) {
    returns_.resize(n);
    consumed_.assign(n, 0);
    bubbles_.assign(n, 0);
  }

  grw::SchedulerFabric<grw::WalkTask>& fabric() { return fabric_; }
  uint64_t consumed(uint32_t i) const { return consumed_[i]; }
  uint64_t bubbles(uint32_t i) const { return bubbles_[i]; }
  uint64_t total_bubbles() const {
    uint64_t b = 0;
    for (auto x : bubbles_) b += x;
    return b;
  }
  uint64_t cycle() const { return cycle_; }

  void reset_counters() {
    consumed_.assign(n_, 0);
    bubbles_.assign(n_, 0);
  }

  void run(uint64_t cycles, bool count_bubbles = true) {
    for (uint64_t c = 0; c < cycles; c++) step(count_bubbles);
  }

  void step(bool count_bubbles) {
    fabric_.step();
    // Consumers: service rate one task per cycle.
    for (uint32_t i = 0; i < n_; i++) {
      auto t = fabric_.pipe_fifo(i).pop();
      if (t.has_value()) {
        consumed_[i]++;
        grw::WalkTask next = *t;
        next.hop++;
        bool ends = next.hop >= max_len_ ||
                    grw::RngStream::to_unit(grw::RngStream::at(
                        seed_ ^ 0xE4DULL, next.query_id, next.hop)) < end_prob_;
        if (!ends) returns_[i].push_back({cycle_ + return_delay_, next});
      } else if (count_bubbles) {
        bubbles_[i]++;
      }
    }
    // Feedback path: deliver returned tasks to the merger bank.
    for (uint32_t i = 0; i < n_; i++) {
      while (!returns_[i].empty() && returns_[i].front().first <= cycle_) {
        if (!fabric_.inject_returned(i, returns_[i].front().second)) break;
        returns_[i].pop_front();
      }
    }
    // Loader: the backlog never drains.
    for (uint32_t i = 0; i < n_; i++) {
      grw::WalkTask t;
      t.query_id = next_query_;
      t.hop = 0;
      if (fabric_.inject_new(i, t)) next_query_++;
    }
    fabric_.commit();
    cycle_++;
  }

  double end_prob_ = 1.0 / 80.0;

 private:
  uint32_t n_;
  uint32_t max_len_;
  uint64_t seed_;
  uint32_t return_delay_;
  grw::SchedulerFabric<grw::WalkTask> fabric_;
  std::vector<std::deque<std::pair<uint64_t, grw::WalkTask>>> returns_;
  std::vector<uint64_t> consumed_;
  std::vector<uint64_t> bubbles_;
  uint64_t cycle_ = 0;
  uint32_t next_query_ = 0;
};

}  // namespace testutil
