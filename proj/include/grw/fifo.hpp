#pragma once

#include <cassert>
#include <cstddef>
#include <deque>
#include <optional>

namespace grw {

// Bounded FIFO with registered status signals: pushes land in an incoming
// buffer and become visible after commit() (the cycle boundary); empty_reg /
// full_reg report the state as of the previous boundary. push/pop enforce the
// live bound so a producer acting on a stale flag waits instead of
// overflowing.
template <typename T>
class FifoChannel {
 public:
  explicit FifoChannel(size_t capacity = 1) : cap_(capacity) {}

  size_t capacity() const { return cap_; }
  void set_capacity(size_t c) { cap_ = c; }

  bool push(const T& v) {
    if (curr_.size() + incoming_.size() >= cap_) return false;
    incoming_.push_back(v);
    return true;
  }
  bool push(T&& v) {
    if (curr_.size() + incoming_.size() >= cap_) return false;
    incoming_.push_back(std::move(v));
    return true;
  }

  bool can_pop() const { return !curr_.empty(); }
  std::optional<T> pop() {
    if (curr_.empty()) return std::nullopt;
    T v = std::move(curr_.front());
    curr_.pop_front();
    return v;
  }
  const T& front() const { return curr_.front(); }

  bool empty_reg() const { return reg_occupancy_ == 0; }
  bool full_reg() const { return reg_occupancy_ >= cap_; }
  size_t size_live() const { return curr_.size() + incoming_.size(); }
  bool empty_live() const { return size_live() == 0; }

  void commit() {
    while (!incoming_.empty()) {
      curr_.push_back(std::move(incoming_.front()));
      incoming_.pop_front();
    }
    assert(curr_.size() <= cap_);
    reg_occupancy_ = curr_.size();
  }

 private:
  size_t cap_;
  std::deque<T> curr_;
  std::deque<T> incoming_;
  size_t reg_occupancy_ = 0;
};

}  // namespace grw
