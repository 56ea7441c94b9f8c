#include "grw/mem_model.hpp"

#include <algorithm>

#include "grw/rng.hpp"

namespace grw {

void MemChannel::finalize_window(uint64_t w) {
  auto it = pending_.find(w);
  if (it == pending_.end()) return;
  std::vector<Entry>& entries = it->second;
  // Slots are the entries' own nominal cycles; the permutation only reassigns
  // which response lands in which slot, so per-cycle completion counts are
  // unchanged.
  std::vector<uint64_t> slots;
  slots.reserve(entries.size());
  for (const Entry& e : entries) slots.push_back(e.nominal);
  for (size_t i = entries.size(); i > 1; i--) {
    uint64_t r = RngStream::at(seed_ ^ (0x6368616E00ull + id_), w, i);
    std::swap(slots[i - 1], slots[r % i]);
  }
  // Restore request order within each txn id.
  std::map<uint32_t, std::vector<size_t>> by_txn;
  for (size_t i = 0; i < entries.size(); i++) by_txn[entries[i].txn].push_back(i);
  for (auto& [txn, idxs] : by_txn) {
    if (idxs.size() < 2) continue;
    std::vector<uint64_t> s;
    for (size_t i : idxs) s.push_back(slots[i]);
    std::sort(s.begin(), s.end());
    for (size_t k = 0; k < idxs.size(); k++) slots[idxs[k]] = s[k];
  }
  for (size_t i = 0; i < entries.size(); i++) {
    ready_.emplace(slots[i], entries[i]);
  }
  pending_.erase(it);
}

}  // namespace grw
