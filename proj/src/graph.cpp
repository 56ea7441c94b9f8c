#include "grw/graph.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace grw {

void CsrGraph::set_vertex_types(std::vector<uint32_t> types) {
  if (types.size() != num_vertices_) {
    throw std::invalid_argument("vertex type array length != num_vertices");
  }
  vertex_types_ = std::move(types);
}

void CsrGraph::validate() const {
  if (row_ptr_.size() != num_vertices_ + 1) {
    throw std::runtime_error("row_ptr length mismatch");
  }
  if (row_ptr_.front() != 0 || row_ptr_.back() != num_edges_) {
    throw std::runtime_error("row_ptr endpoints invalid");
  }
  for (size_t i = 0; i + 1 < row_ptr_.size(); i++) {
    if (row_ptr_[i] > row_ptr_[i + 1]) {
      throw std::runtime_error("row_ptr not monotone");
    }
  }
  for (VertexId c : col_list_) {
    if (c >= num_vertices_) throw std::runtime_error("col_list entry out of range");
  }
  if (!weights_.empty()) {
    if (weights_.size() != col_list_.size()) {
      throw std::runtime_error("weights length mismatch");
    }
    for (uint64_t v = 0; v < num_vertices_; v++) {
      uint32_t deg = static_cast<uint32_t>(row_ptr_[v + 1] - row_ptr_[v]);
      if (deg == 0) continue;
      bool positive = false;
      for (EdgeOffset e = row_ptr_[v]; e < row_ptr_[v + 1]; e++) {
        if (weights_[e] < 0.0) throw std::runtime_error("negative weight");
        if (weights_[e] > 0.0) positive = true;
      }
      if (!positive) {
        throw std::runtime_error("vertex " + std::to_string(v) +
                                 " has no positive-weight neighbor");
      }
    }
  }
}

CsrGraph build_csr(const EdgeList& edges, uint64_t num_vertices) {
  if (edges.weighted() && edges.weights.size() != edges.edges.size()) {
    throw std::invalid_argument("weights length != edges length");
  }
  CsrGraph g;
  g.num_vertices_ = num_vertices;
  g.num_edges_ = edges.size();
  g.row_ptr_.assign(num_vertices + 1, 0);
  for (auto [src, dst] : edges.edges) {
    if (src >= num_vertices || dst >= num_vertices) {
      throw std::invalid_argument("vertex id out of range: (" +
                                  std::to_string(src) + "," + std::to_string(dst) + ")");
    }
    g.row_ptr_[src + 1]++;
  }
  for (uint64_t v = 0; v < num_vertices; v++) {
    g.row_ptr_[v + 1] += g.row_ptr_[v];
  }
  g.col_list_.resize(edges.size());
  if (edges.weighted()) g.weights_.resize(edges.size());
  std::vector<EdgeOffset> cursor(g.row_ptr_.begin(), g.row_ptr_.end() - 1);
  for (size_t i = 0; i < edges.size(); i++) {
    auto [src, dst] = edges.edges[i];
    EdgeOffset p = cursor[src]++;
    g.col_list_[p] = dst;
    if (edges.weighted()) {
      if (edges.weights[i] < 0.0) {
        throw std::invalid_argument("negative weight at edge " + std::to_string(i));
      }
      g.weights_[p] = edges.weights[i];
    }
  }
  g.validate();
  return g;
}

std::pair<EdgeList, uint64_t> load_edge_list(std::istream& in) {
  EdgeList el;
  uint64_t max_id = 0;
  bool any = false;
  std::string line;
  size_t line_no = 0;
  bool weight_mode_known = false;
  bool weighted = false;
  while (std::getline(in, line)) {
    line_no++;
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream ls(line);
    long long src, dst;
    if (!(ls >> src >> dst) || src < 0 || dst < 0) {
      throw std::runtime_error("malformed edge at line " + std::to_string(line_no));
    }
    double w;
    bool has_w = static_cast<bool>(ls >> w);
    std::string trail;
    if (ls >> trail) {
      throw std::runtime_error("malformed edge at line " + std::to_string(line_no));
    }
    if (!weight_mode_known) {
      weight_mode_known = true;
      weighted = has_w;
    } else if (has_w != weighted) {
      throw std::runtime_error("inconsistent weight column at line " + std::to_string(line_no));
    }
    el.edges.emplace_back(static_cast<VertexId>(src), static_cast<VertexId>(dst));
    if (weighted) el.weights.push_back(w);
    max_id = std::max<uint64_t>(max_id, std::max<uint64_t>(src, dst));
    any = true;
  }
  return {std::move(el), any ? max_id + 1 : 0};
}

std::pair<EdgeList, uint64_t> load_edge_list_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open edge list: " + path);
  return load_edge_list(f);
}

std::vector<uint32_t> load_types_file(const std::string& path, uint64_t num_vertices) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open types file: " + path);
  std::vector<uint32_t> types;
  types.reserve(num_vertices);
  long long t;
  while (f >> t) {
    if (t < 0) throw std::runtime_error("negative type label in " + path);
    types.push_back(static_cast<uint32_t>(t));
  }
  if (types.size() != num_vertices) {
    throw std::runtime_error("types file has " + std::to_string(types.size()) +
                             " labels, expected " + std::to_string(num_vertices));
  }
  return types;
}

namespace {

constexpr uint32_t kCacheMagic = 0x47525743;  // "GRWC"
constexpr uint32_t kCacheVersion = 1;
constexpr uint32_t kFlagWeights = 1u << 0;
constexpr uint32_t kFlagTypes = 1u << 1;

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("truncated CSR cache");
  return v;
}

template <typename T>
void write_vec(std::ostream& out, const std::vector<T>& v) {
  out.write(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(T));
}

template <typename T>
void read_vec(std::istream& in, std::vector<T>& v, size_t n) {
  v.resize(n);
  in.read(reinterpret_cast<char*>(v.data()), n * sizeof(T));
  if (!in) throw std::runtime_error("truncated CSR cache");
}

}  // namespace

void save_csr_cache(const CsrGraph& g, std::ostream& out) {
  write_pod(out, kCacheMagic);
  write_pod(out, kCacheVersion);
  write_pod(out, g.num_vertices());
  write_pod(out, g.num_edges());
  uint32_t flags = (g.weighted() ? kFlagWeights : 0) | (g.typed() ? kFlagTypes : 0);
  write_pod(out, flags);
  write_vec(out, g.row_ptr());
  write_vec(out, g.col_list());
  if (g.weighted()) write_vec(out, g.weights());
  if (g.typed()) write_vec(out, g.vertex_types());
}

CsrGraph load_csr_cache(std::istream& in) {
  if (read_pod<uint32_t>(in) != kCacheMagic) {
    throw std::runtime_error("bad CSR cache magic");
  }
  uint32_t version = read_pod<uint32_t>(in);
  if (version != kCacheVersion) {
    throw std::runtime_error("unsupported CSR cache version " + std::to_string(version));
  }
  CsrGraph g;
  g.num_vertices_ = read_pod<uint64_t>(in);
  g.num_edges_ = read_pod<uint64_t>(in);
  uint32_t flags = read_pod<uint32_t>(in);
  read_vec(in, g.row_ptr_, g.num_vertices_ + 1);
  read_vec(in, g.col_list_, g.num_edges_);
  if (flags & kFlagWeights) read_vec(in, g.weights_, g.num_edges_);
  if (flags & kFlagTypes) read_vec(in, g.vertex_types_, g.num_vertices_);
  g.validate();
  return g;
}

void save_csr_cache_file(const CsrGraph& g, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write CSR cache: " + path);
  save_csr_cache(g, f);
}

CsrGraph load_csr_cache_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open CSR cache: " + path);
  return load_csr_cache(f);
}

}  // namespace grw
