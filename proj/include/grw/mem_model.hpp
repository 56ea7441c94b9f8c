#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <vector>

#include "grw/fifo.hpp"
#include "grw/walk.hpp"

namespace grw {

struct MemModelParams {
  uint32_t service_interval_cycles = 1;  // cycles between accepted requests
  uint32_t fixed_latency_cycles = 100;   // request -> response round trip
  uint32_t max_outstanding = 128;        // unanswered-request cap
  uint32_t txn_id_count = 64;            // reorder-buffer lanes
  uint32_t scramble_window = 16;         // response-permutation window (cycles)
};

class ResponseSink {
 public:
  virtual ~ResponseSink() = default;
  virtual void on_response(uint32_t txn, uint64_t seq) = 0;
};

// One random-access memory channel: accepts at most one request per
// service_interval, answers after fixed latency, and scrambles response order
// across transaction ids by permuting completions inside fixed windows.
// Within one (channel, txn) pair, responses keep request order.
class MemChannel {
 public:
  MemChannel(uint32_t id, const MemModelParams& p, uint64_t seed)
      : id_(id), p_(p), seed_(seed) {}

  bool can_accept(uint64_t cycle) const {
    if (outstanding_ >= p_.max_outstanding) return false;
    if (accepted_any_ && cycle < last_accept_ + p_.service_interval_cycles) return false;
    return true;
  }

  bool try_issue(uint64_t cycle, ResponseSink* sink, uint32_t txn, uint64_t seq) {
    if (!can_accept(cycle)) return false;
    last_accept_ = cycle;
    accepted_any_ = true;
    outstanding_++;
    accesses_++;
    uint64_t nominal = cycle + p_.fixed_latency_cycles;
    uint64_t w = nominal / p_.scramble_window;
    if (has_finalized_ && w <= finalized_up_to_) {
      // Window already sealed (short-latency configs): deliver unscrambled.
      ready_.emplace(nominal, Entry{nominal, sink, txn, seq});
    } else {
      pending_[w].push_back({nominal, sink, txn, seq});
    }
    return true;
  }

  // Call once per cycle; delivers at most one response.
  void step(uint64_t cycle) {
    if (cycle % p_.scramble_window == 0) {
      finalize_window(cycle / p_.scramble_window);
      finalized_up_to_ = cycle / p_.scramble_window;
      has_finalized_ = true;
    }
    auto it = ready_.begin();
    if (it != ready_.end() && it->first <= cycle) {
      Entry e = it->second;
      ready_.erase(it);
      // Per-txn order within this channel, tracked per requester.
      auto& last = last_delivered_seq_[{e.sink, e.txn}];
      assert(last.second == false || e.seq > last.first);
      last = {e.seq, true};
      outstanding_--;
      e.sink->on_response(e.txn, e.seq);
    }
  }

  uint64_t accesses() const { return accesses_; }
  uint32_t outstanding() const { return outstanding_; }
  bool idle() const { return outstanding_ == 0; }
  const MemModelParams& params() const { return p_; }

 private:
  struct Entry {
    uint64_t nominal;
    ResponseSink* sink;
    uint32_t txn;
    uint64_t seq;
  };

  void finalize_window(uint64_t w);

  uint32_t id_;
  MemModelParams p_;
  uint64_t seed_;
  uint64_t last_accept_ = 0;
  bool accepted_any_ = false;
  uint64_t finalized_up_to_ = 0;
  bool has_finalized_ = false;
  uint32_t outstanding_ = 0;
  uint64_t accesses_ = 0;
  std::map<uint64_t, std::vector<Entry>> pending_;   // window -> entries
  std::map<uint64_t, Entry> ready_;                  // slot -> entry
  std::map<std::pair<const ResponseSink*, uint32_t>, std::pair<uint64_t, bool>>
      last_delivered_seq_;
};

// Free-running request/response proxy pair around the memory channels: tasks
// enter at one per cycle while the metadata queue has room, their fetched
// payload is re-attached in issue order on the way out. Response backlog never
// stalls the request path.
class AsyncAccessEngine : public ResponseSink {
 public:
  AsyncAccessEngine(FifoChannel<WalkTask>* in, FifoChannel<WalkTask>* out,
                    std::vector<MemChannel*> channels,
                    std::function<uint32_t(const WalkTask&)> channel_of,
                    std::function<void(WalkTask&)> apply_fetch,
                    uint32_t metadata_capacity = 512)
      : in_(in),
        out_(out),
        channels_(std::move(channels)),
        channel_of_(std::move(channel_of)),
        apply_fetch_(std::move(apply_fetch)),
        meta_cap_(metadata_capacity) {}

  void step_issue(uint64_t cycle) {
    if (meta_.size() >= meta_cap_) return;
    if (!in_->can_pop()) return;
    const WalkTask& t = in_->front();
    uint32_t ch = channel_of_(t);
    uint32_t txn = static_cast<uint32_t>(next_seq_ % channels_[ch]->params().txn_id_count);
    if (!channels_[ch]->try_issue(cycle, this, txn, next_seq_)) return;
    meta_.push_back({*in_->pop(), txn, next_seq_});
    next_seq_++;
    issued_++;
  }

  void on_response(uint32_t txn, uint64_t seq) override {
    auto& lane = rob_[txn];
    lane.insert(std::upper_bound(lane.begin(), lane.end(), seq), seq);
  }

  bool step_retire() {
    if (meta_.empty()) return false;
    Meta& head = meta_.front();
    auto& lane = rob_[head.txn];
    if (lane.empty() || lane.front() != head.seq) return false;  // data not back yet
    if (out_->size_live() >= out_->capacity()) return false;     // downstream backpressure
    WalkTask t = head.task;
    apply_fetch_(t);
    last_retired_ = t;
    bool ok = out_->push(std::move(t));
    assert(ok);
    (void)ok;
    lane.erase(lane.begin());
    meta_.pop_front();
    retired_++;
    return true;
  }

  size_t in_flight() const { return meta_.size(); }
  uint64_t issued() const { return issued_; }
  uint64_t retired() const { return retired_; }
  const WalkTask& last_retired() const { return last_retired_; }

 private:
  struct Meta {
    WalkTask task;
    uint32_t txn;
    uint64_t seq;
  };

  FifoChannel<WalkTask>* in_;
  FifoChannel<WalkTask>* out_;
  std::vector<MemChannel*> channels_;
  std::function<uint32_t(const WalkTask&)> channel_of_;
  std::function<void(WalkTask&)> apply_fetch_;
  size_t meta_cap_;
  std::deque<Meta> meta_;
  std::map<uint32_t, std::vector<uint64_t>> rob_;
  uint64_t next_seq_ = 0;
  uint64_t issued_ = 0;
  uint64_t retired_ = 0;
  WalkTask last_retired_;
};

}  // namespace grw
