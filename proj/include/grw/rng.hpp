#pragma once

#include <cstdint>
#include <utility>

namespace grw {

// Counter-based keyed generator (splitmix64-style finalizer with per-stream
// gamma offsets). Every output is a pure function of (key, stream_id, counter),
// so draws can be replayed or consumed out of order without shared state.
class RngStream {
 public:
  RngStream() = default;
  RngStream(uint64_t key, uint64_t stream_id, uint64_t counter = 0)
      : key_(key), stream_id_(stream_id), counter_(counter) {}

  // Pure random access: no state involved.
  static uint64_t at(uint64_t key, uint64_t stream_id, uint64_t counter) {
    uint64_t base = mix(key ^ mix(stream_id + 0x9E3779B97F4A7C15ull));
    return mix(base + (counter + 1) * 0x9E3779B97F4A7C15ull);
  }

  uint64_t next() { return at(key_, stream_id_, counter_++); }

  // Uniform double in [0, 1).
  double next_unit() { return to_unit(next()); }

  static double to_unit(uint64_t r) {
    return static_cast<double>(r >> 11) * (1.0 / 9007199254740992.0);
  }

  uint64_t key() const { return key_; }
  uint64_t stream_id() const { return stream_id_; }
  uint64_t counter() const { return counter_; }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  uint64_t key_ = 0;
  uint64_t stream_id_ = 0;
  uint64_t counter_ = 0;
};

// rng_next in functional form: returns the value and the advanced stream.
inline std::pair<uint64_t, RngStream> rng_next(RngStream s) {
  uint64_t v = s.next();
  return {v, s};
}

}  // namespace grw
