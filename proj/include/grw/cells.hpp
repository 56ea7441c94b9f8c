#pragma once

#include <cstdint>
#include <optional>

#include "grw/fifo.hpp"

namespace grw {

// Scheduling-code packing shared by dispatch and merge cells: the status of
// the second port sits in the MSB, the first port in bit 1, last_selection in
// the LSB.
inline uint8_t build_scode_dispatch(uint8_t last_selection, bool out1_full,
                                    bool out2_full) {
  return static_cast<uint8_t>((out2_full << 2) | (out1_full << 1) | (last_selection & 1));
}

inline uint8_t build_scode_merge(uint8_t last_selection, bool in1_empty,
                                 bool in2_empty) {
  return static_cast<uint8_t>((in2_empty << 2) | (in1_empty << 1) | (last_selection & 1));
}

enum class DispatchAction : uint8_t { WriteOut1, WriteOut2, BlockOnOut1, BlockOnOut2 };
enum class MergeAction : uint8_t { TakeIn1, TakeIn2, Idle };

// Both-free picks the not-last-served side; one-full routes around the full
// side; both-full blocks on the not-last-served side for fairness.
inline DispatchAction dispatch_decide(uint8_t scode) {
  switch (scode & 7) {
    case 0b000: return DispatchAction::WriteOut2;
    case 0b001: return DispatchAction::WriteOut1;
    case 0b010: return DispatchAction::WriteOut2;
    case 0b011: return DispatchAction::WriteOut2;
    case 0b100: return DispatchAction::WriteOut1;
    case 0b101: return DispatchAction::WriteOut1;
    case 0b110: return DispatchAction::BlockOnOut2;
    default:    return DispatchAction::BlockOnOut1;  // 0b111
  }
}

inline MergeAction merge_decide(uint8_t scode) {
  switch (scode & 7) {
    case 0b000: return MergeAction::TakeIn2;
    case 0b001: return MergeAction::TakeIn1;
    case 0b010: return MergeAction::TakeIn2;
    case 0b011: return MergeAction::TakeIn2;
    case 0b100: return MergeAction::TakeIn1;
    case 0b101: return MergeAction::TakeIn1;
    default:    return MergeAction::Idle;  // 0b110, 0b111
  }
}

// One-input two-output dispatch cell; initiation interval 1, registered
// output hop. A task committed to a full output waits there (the blocking
// case) rather than re-deciding.
template <typename T>
class DispatchCell {
 public:
  DispatchCell(FifoChannel<T>* in, FifoChannel<T>* out1, FifoChannel<T>* out2)
      : in_(in), out1_(out1), out2_(out2) {}

  void step() {
    if (!pending_ && in_->can_pop()) pending_ = in_->pop();
    if (!pending_) return;
    // The held task re-arbitrates every cycle: a single full output diverts
    // traffic to the free side; only the both-full case waits.
    uint8_t scode = build_scode_dispatch(last_selection_, out1_->full_reg(),
                                         out2_->full_reg());
    DispatchAction a = dispatch_decide(scode);
    uint8_t dst = (a == DispatchAction::WriteOut1 || a == DispatchAction::BlockOnOut1) ? 0 : 1;
    if (a == DispatchAction::BlockOnOut1 || a == DispatchAction::BlockOnOut2) blocks_++;
    if (try_write(dst, *pending_)) pending_.reset();
  }

  bool idle() const { return !pending_; }
  uint64_t decisions(int side) const { return decisions_[side]; }
  uint64_t blocks() const { return blocks_; }
  uint8_t last_selection() const { return last_selection_; }

 private:
  bool try_write(uint8_t dst, const T& task) {
    FifoChannel<T>* out = dst == 0 ? out1_ : out2_;
    if (!out->push(task)) return false;
    last_selection_ = dst;
    decisions_[dst]++;
    return true;
  }

  FifoChannel<T>* in_;
  FifoChannel<T>* out1_;
  FifoChannel<T>* out2_;
  uint8_t last_selection_ = 0;
  std::optional<T> pending_;
  uint64_t decisions_[2] = {0, 0};
  uint64_t blocks_ = 0;
};

// Two-input one-output merge cell. The alternate policy is the balancer
// default; PriorityIn1 serves in_1 whenever it holds a task (used where
// returned tasks must preempt new injections).
enum class MergePolicy : uint8_t { Alternate, PriorityIn1 };

template <typename T>
class MergeCell {
 public:
  MergeCell(FifoChannel<T>* in1, FifoChannel<T>* in2, FifoChannel<T>* out,
            MergePolicy policy = MergePolicy::Alternate)
      : in1_(in1), in2_(in2), out_(out), policy_(policy) {}

  void step() {
    if (pending_) {
      if (!out_->push(*pending_)) return;
      pending_.reset();
    }
    uint8_t src;
    if (policy_ == MergePolicy::PriorityIn1) {
      if (in1_->can_pop()) src = 0;
      else if (in2_->can_pop()) src = 1;
      else return;
    } else {
      uint8_t scode = build_scode_merge(last_selection_, in1_->empty_reg(),
                                        in2_->empty_reg());
      MergeAction a = merge_decide(scode);
      if (a == MergeAction::Idle) return;
      src = (a == MergeAction::TakeIn1) ? 0 : 1;
      // Registered empty flags can lag a pop by a cycle; never read empty.
      if (!(src == 0 ? in1_ : in2_)->can_pop()) return;
    }
    T task = std::move(*(src == 0 ? in1_ : in2_)->pop());
    last_selection_ = src;
    takes_[src]++;
    if (!out_->push(task)) pending_ = std::move(task);
  }

  uint64_t takes(int side) const { return takes_[side]; }
  uint8_t last_selection() const { return last_selection_; }
  bool holding() const { return pending_.has_value(); }

 private:
  FifoChannel<T>* in1_;
  FifoChannel<T>* in2_;
  FifoChannel<T>* out_;
  MergePolicy policy_;
  uint8_t last_selection_ = 0;
  std::optional<T> pending_;
  uint64_t takes_[2] = {0, 0};
};

}  // namespace grw
