#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "grw/cells.hpp"

namespace grw {

inline bool is_power_of_two(uint32_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline uint32_t log2_exact(uint32_t n) {
  uint32_t b = 0;
  while ((1u << b) < n) b++;
  return b;
}

// N-to-N availability balancer: log2(N) stages, each a rank of N dispatch
// cells whose ports cross over one address bit into a rank of N merge cells.
// Any input can reach any output; all cells are initiation-interval 1.
template <typename T>
class ButterflyBalancer {
 public:
  // Output FIFOs are owned by the caller (typically the per-pipeline queues).
  ButterflyBalancer(uint32_t n, size_t internal_depth,
                    std::vector<FifoChannel<T>*> outputs)
      : n_(n), stages_(log2_exact(n)) {
    if (!is_power_of_two(n) || n < 2) {
      throw std::invalid_argument("balancer width must be a power of two >= 2");
    }
    if (outputs.size() != n) throw std::invalid_argument("output count mismatch");
    inputs_.reserve(n);
    for (uint32_t i = 0; i < n; i++) {
      inputs_.push_back(std::make_unique<FifoChannel<T>>(internal_depth));
    }
    // cross[s][i][p]: dispatcher i port p at stage s; merge outputs feed the
    // next stage's dispatcher inputs.
    cross_.resize(stages_);
    mid_.resize(stages_);
    for (uint32_t s = 0; s < stages_; s++) {
      for (uint32_t i = 0; i < n_; i++) {
        cross_[s].push_back(std::make_unique<FifoChannel<T>>(internal_depth));
        cross_[s].push_back(std::make_unique<FifoChannel<T>>(internal_depth));
      }
      if (s + 1 < stages_) {
        for (uint32_t i = 0; i < n_; i++) {
          mid_[s].push_back(std::make_unique<FifoChannel<T>>(internal_depth));
        }
      }
    }
    for (uint32_t s = 0; s < stages_; s++) {
      uint32_t bit = 1u << (stages_ - 1 - s);
      for (uint32_t i = 0; i < n_; i++) {
        FifoChannel<T>* in = s == 0 ? inputs_[i].get() : mid_[s - 1][i].get();
        dispatchers_.emplace_back(in, cross_[s][2 * i].get(), cross_[s][2 * i + 1].get());
        FifoChannel<T>* out = s + 1 < stages_ ? mid_[s][i].get() : outputs[i];
        // Merger i: straight port of dispatcher i, cross port of dispatcher i^bit.
        mergers_.emplace_back(cross_[s][2 * i].get(), cross_[s][2 * (i ^ bit) + 1].get(), out);
      }
    }
  }

  uint32_t width() const { return n_; }
  uint32_t stages() const { return stages_; }

  FifoChannel<T>& input(uint32_t i) { return *inputs_[i]; }

  void step() {
    for (auto& d : dispatchers_) d.step();
    for (auto& m : mergers_) m.step();
  }

  void commit() {
    for (auto& f : inputs_) f->commit();
    for (auto& s : cross_)
      for (auto& f : s) f->commit();
    for (auto& s : mid_)
      for (auto& f : s) f->commit();
  }

  // Tasks buffered inside the fabric (inputs + internal FIFOs + cell regs).
  size_t occupancy() const {
    size_t n = 0;
    for (auto& f : inputs_) n += f->size_live();
    for (auto& s : cross_)
      for (auto& f : s) n += f->size_live();
    for (auto& s : mid_)
      for (auto& f : s) n += f->size_live();
    for (auto& d : dispatchers_) n += d.idle() ? 0 : 1;
    return n;
  }

  // Pop counts per input port (stage-0 dispatcher consumption).
  uint64_t input_consumed(uint32_t i) const {
    const auto& d = dispatchers_[i];
    return d.decisions(0) + d.decisions(1);
  }

  uint64_t total_decisions() const {
    uint64_t n = 0;
    for (auto& d : dispatchers_) n += d.decisions(0) + d.decisions(1);
    return n;
  }
  uint64_t total_blocks() const {
    uint64_t n = 0;
    for (auto& d : dispatchers_) n += d.blocks();
    return n;
  }

 private:
  uint32_t n_;
  uint32_t stages_;
  std::vector<std::unique_ptr<FifoChannel<T>>> inputs_;
  std::vector<std::vector<std::unique_ptr<FifoChannel<T>>>> cross_;  // [stage][2i+p]
  std::vector<std::vector<std::unique_ptr<FifoChannel<T>>>> mid_;    // [stage][i]
  std::vector<DispatchCell<T>> dispatchers_;
  std::vector<MergeCell<T>> mergers_;
};

}  // namespace grw
