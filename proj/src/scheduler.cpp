#include "grw/scheduler.hpp"

#include <stdexcept>

namespace grw {

uint32_t route_for_column(const RowPointerEntry& e, const MemoryLayout& layout,
                          uint32_t n_pipelines) {
  if (e.channel_id >= layout.n_col_channels()) {
    throw std::out_of_range("column channel out of range");
  }
  return e.channel_id % n_pipelines;
}

uint32_t route_for_row(VertexId v, const MemoryLayout& layout, uint32_t n_pipelines) {
  uint32_t ch = layout.row_channel_of(v);
  if (ch >= layout.n_row_channels()) {
    throw std::out_of_range("row channel out of range");
  }
  return ch % n_pipelines;
}

}  // namespace grw
