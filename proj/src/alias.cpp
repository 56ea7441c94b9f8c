#include "grw/alias.hpp"

#include <stdexcept>

namespace grw {

AliasTable build_alias_table(std::span<const double> weights) {
  const size_t n = weights.size();
  if (n == 0) throw std::invalid_argument("alias table needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("negative weight");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("all weights are zero");

  AliasTable t;
  t.prob.resize(n);
  t.alias.assign(n, 0);
  // Scaled probabilities sum to n; split into under- and over-full slots.
  std::vector<uint32_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (size_t i = 0; i < n; i++) {
    t.prob[i] = weights[i] * static_cast<double>(n) / total;
    t.alias[i] = static_cast<uint32_t>(i);
    if (t.prob[i] < 1.0) {
      small.push_back(static_cast<uint32_t>(i));
    } else {
      large.push_back(static_cast<uint32_t>(i));
    }
  }
  while (!small.empty() && !large.empty()) {
    uint32_t s = small.back();
    uint32_t l = large.back();
    small.pop_back();
    t.alias[s] = l;
    t.prob[l] -= 1.0 - t.prob[s];
    if (t.prob[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Numerical remainder: leftover slots are full.
  for (uint32_t s : small) t.prob[s] = 1.0;
  for (uint32_t l : large) t.prob[l] = 1.0;
  return t;
}

}  // namespace grw
