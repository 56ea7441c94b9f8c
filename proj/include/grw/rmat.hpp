#pragma once

#include "grw/graph.hpp"

namespace grw {

struct RmatParams {
  uint32_t scale = 10;       // 2^scale vertices
  uint32_t edge_factor = 16; // edges = edge_factor * 2^scale
  double a = 0.25, b = 0.25, c = 0.25, d = 0.25;
  uint64_t seed = 1;
  bool undirected = false;   // emit the reverse of every edge as well
};

inline RmatParams rmat_balanced(uint32_t scale, uint32_t edge_factor, uint64_t seed) {
  return RmatParams{scale, edge_factor, 0.25, 0.25, 0.25, 0.25, seed, false};
}

inline RmatParams rmat_graph500(uint32_t scale, uint32_t edge_factor, uint64_t seed) {
  return RmatParams{scale, edge_factor, 0.57, 0.19, 0.19, 0.05, seed, false};
}

// Recursive-quadrant generator; deterministic for a given (params, seed).
// Throws std::invalid_argument if a+b+c+d deviates from 1 by more than 1e-9
// or scale < 1.
EdgeList gen_rmat(const RmatParams& p);

}  // namespace grw
