#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace grw {

// Two-array alias table for O(1) weighted sampling, built in O(degree).
// Draw a slot uniformly, then keep it if the coin falls below prob[slot],
// otherwise take alias[slot].
struct AliasTable {
  std::vector<double> prob;     // in [0, 1]
  std::vector<uint32_t> alias;  // local indices < degree

  size_t size() const { return prob.size(); }
};

// Throws std::invalid_argument on an empty span or all-zero weights.
AliasTable build_alias_table(std::span<const double> weights);

}  // namespace grw
