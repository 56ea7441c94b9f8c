#include "grw/rmat.hpp"

#include <cmath>
#include <vector>
#include <stdexcept>

#include "grw/rng.hpp"

namespace grw {

EdgeList gen_rmat(const RmatParams& p) {
  if (p.scale < 1) throw std::invalid_argument("rmat scale must be >= 1");
  double sum = p.a + p.b + p.c + p.d;
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("rmat probabilities must sum to 1");
  }
  const uint64_t n = 1ull << p.scale;
  const uint64_t m = static_cast<uint64_t>(p.edge_factor) * n;
  const double ab = p.a + p.b;
  const double abc = ab + p.c;

  // Seeded vertex relabeling: raw recursive-quadrant ids carry the initiator
  // skew in every bit, so hub ids cluster under any id-arithmetic partition.
  std::vector<VertexId> perm(n);
  for (uint64_t v = 0; v < n; v++) perm[v] = static_cast<VertexId>(v);
  RngStream shuffle(p.seed ^ 0x5EEDF00Dull, 0);
  for (uint64_t i = n - 1; i > 0; i--) {
    uint64_t j = shuffle.next() % (i + 1);
    std::swap(perm[i], perm[j]);
  }

  EdgeList el;
  el.edges.reserve(p.undirected ? 2 * m : m);
  for (uint64_t e = 0; e < m; e++) {
    uint64_t src = 0, dst = 0;
    RngStream rng(p.seed, e);
    for (uint32_t bit = 0; bit < p.scale; bit++) {
      double r = rng.next_unit();
      src <<= 1;
      dst <<= 1;
      if (r < p.a) {
        // top-left quadrant: both bits 0
      } else if (r < ab) {
        dst |= 1;
      } else if (r < abc) {
        src |= 1;
      } else {
        src |= 1;
        dst |= 1;
      }
    }
    el.edges.emplace_back(perm[src], perm[dst]);
    if (p.undirected) {
      el.edges.emplace_back(perm[dst], perm[src]);
    }
  }
  return el;
}

}  // namespace grw
