#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace grw {

using VertexId = uint32_t;
using EdgeOffset = uint64_t;

// Edge list as parallel arrays; weights empty means unweighted.
struct EdgeList {
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<double> weights;

  bool weighted() const { return !weights.empty(); }
  size_t size() const { return edges.size(); }
};

// Immutable compressed-sparse-row graph. Neighbor order is the edge input
// order (stable). Weights, when present, align with col_list; vertex_types,
// when present, hold one small-integer label per vertex.
class CsrGraph {
 public:
  CsrGraph() = default;

  uint64_t num_vertices() const { return num_vertices_; }
  uint64_t num_edges() const { return num_edges_; }
  bool weighted() const { return !weights_.empty(); }
  bool typed() const { return !vertex_types_.empty(); }

  uint32_t degree(VertexId v) const {
    return static_cast<uint32_t>(row_ptr_[v + 1] - row_ptr_[v]);
  }
  EdgeOffset row_begin(VertexId v) const { return row_ptr_[v]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {col_list_.data() + row_ptr_[v], degree(v)};
  }
  std::span<const double> neighbor_weights(VertexId v) const {
    return {weights_.data() + row_ptr_[v], degree(v)};
  }

  uint32_t type_of(VertexId v) const { return vertex_types_[v]; }

  bool has_edge(VertexId u, VertexId x) const {
    for (VertexId w : neighbors(u)) {
      if (w == x) return true;
    }
    return false;
  }

  const std::vector<EdgeOffset>& row_ptr() const { return row_ptr_; }
  const std::vector<VertexId>& col_list() const { return col_list_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<uint32_t>& vertex_types() const { return vertex_types_; }

  void set_vertex_types(std::vector<uint32_t> types);

  // Throws std::runtime_error if any type invariant is violated.
  void validate() const;

  friend CsrGraph build_csr(const EdgeList& edges, uint64_t num_vertices);
  friend CsrGraph load_csr_cache(std::istream& in);

 private:
  uint64_t num_vertices_ = 0;
  uint64_t num_edges_ = 0;
  std::vector<EdgeOffset> row_ptr_{0};
  std::vector<VertexId> col_list_;
  std::vector<double> weights_;
  std::vector<uint32_t> vertex_types_;
};

// Builds a CSR graph; edges per vertex keep input order.
// Throws std::invalid_argument on out-of-range ids or negative weights.
CsrGraph build_csr(const EdgeList& edges, uint64_t num_vertices);

// Parses whitespace-separated "src dst [w]" lines; '#' starts a comment line.
// num_vertices = 1 + max id seen. Malformed lines raise std::runtime_error
// naming the 1-based line number.
std::pair<EdgeList, uint64_t> load_edge_list(std::istream& in);
std::pair<EdgeList, uint64_t> load_edge_list_file(const std::string& path);

// One integer label per line, vertex order.
std::vector<uint32_t> load_types_file(const std::string& path, uint64_t num_vertices);

// Versioned little-endian binary cache (magic, counts, flags, arrays).
void save_csr_cache(const CsrGraph& g, std::ostream& out);
CsrGraph load_csr_cache(std::istream& in);
void save_csr_cache_file(const CsrGraph& g, const std::string& path);
CsrGraph load_csr_cache_file(const std::string& path);

}  // namespace grw
