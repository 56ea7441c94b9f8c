#include "grw/config.hpp"

#include <fstream>
#include <sstream>

namespace grw {

void ExperimentConfig::validate() const {
  if (graph_source != "rmat" && graph_source != "file" && graph_source != "cache") {
    throw std::invalid_argument("graph source must be rmat, file or cache");
  }
  if (graph_source != "rmat" && graph_path.empty()) {
    throw std::invalid_argument("graph path required for source=" + graph_source);
  }
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (clock_hz <= 0) throw std::invalid_argument("clock must be positive");
  algo.validate();
  sim.validate();
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<uint32_t> parse_schema(const std::string& v) {
  std::vector<uint32_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(static_cast<uint32_t>(std::stoul(trim(item))));
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("bad boolean: " + v);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[' && s.back() == ']') {
      section = s.substr(1, s.size() - 2);
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    try {
      if (section == "graph") {
        if (key == "source") cfg.graph_source = value;
        else if (key == "path") cfg.graph_path = value;
        else if (key == "types") cfg.types_path = value;
        else if (key == "name") cfg.graph_name = value;
        else if (key == "scale") cfg.rmat.scale = std::stoul(value);
        else if (key == "edge_factor") cfg.rmat.edge_factor = std::stoul(value);
        else if (key == "a") cfg.rmat.a = std::stod(value);
        else if (key == "b") cfg.rmat.b = std::stod(value);
        else if (key == "c") cfg.rmat.c = std::stod(value);
        else if (key == "d") cfg.rmat.d = std::stod(value);
        else if (key == "seed") cfg.rmat.seed = std::stoull(value);
        else if (key == "undirected") cfg.rmat.undirected = parse_bool(value);
        else throw std::invalid_argument("unknown graph key: " + key);
      } else if (section == "algo") {
        if (key == "kind") cfg.algo.kind = algo_from_name(value);
        else if (key == "alpha") cfg.algo.alpha = std::stod(value);
        else if (key == "p") cfg.algo.p = std::stod(value);
        else if (key == "q") cfg.algo.q = std::stod(value);
        else if (key == "schema") cfg.algo.schema = parse_schema(value);
        else if (key == "max_len") cfg.algo.max_len = std::stoul(value);
        else throw std::invalid_argument("unknown algo key: " + key);
      } else if (section == "sim") {
        if (key == "pipelines") cfg.sim.n_pipelines = std::stoul(value);
        else if (key == "mode") cfg.sim.mode = sim_mode_from_name(value);
        else if (key == "seed") cfg.sim.seed = std::stoull(value);
        else if (key == "queries") cfg.num_queries = std::stoull(value);
        else if (key == "max_cycles") cfg.sim.max_cycles = std::stoull(value);
        else if (key == "warmup") cfg.sim.warmup_cycles = std::stoull(value);
        else if (key == "fifo_depth") cfg.sim.pipe_fifo_depth = std::stoul(value);
        else if (key == "stage_fifo_depth") cfg.sim.stage_fifo_depth = std::stoul(value);
        else if (key == "metadata_depth") cfg.sim.metadata_queue_depth = std::stoul(value);
        else if (key == "router_latency") cfg.sim.router_latency = std::stoul(value);
        else if (key == "async_batch") cfg.sim.async_batch_slots = std::stoul(value);
        else if (key == "latency") cfg.sim.mem.fixed_latency_cycles = std::stoul(value);
        else if (key == "service_interval") cfg.sim.mem.service_interval_cycles = std::stoul(value);
        else if (key == "outstanding") cfg.sim.mem.max_outstanding = std::stoul(value);
        else if (key == "txn_ids") cfg.sim.mem.txn_id_count = std::stoul(value);
        else if (key == "scramble_window") cfg.sim.mem.scramble_window = std::stoul(value);
        else if (key == "block_granularity") cfg.block_granularity = std::stoul(value);
        else if (key == "clock_hz") cfg.clock_hz = std::stod(value);
        else if (key == "count_alias_bytes") cfg.sim.count_alias_bytes = parse_bool(value);
        else if (key == "trace") cfg.sim.trace = parse_bool(value);
        else if (key == "path_granularity") cfg.sim.path_write_granularity = std::stoul(value);
        else if (key == "repetitions") cfg.repetitions = std::stoul(value);
        else throw std::invalid_argument("unknown sim key: " + key);
      } else if (section == "output") {
        if (key == "dir") cfg.out_dir = value;
        else if (key == "run_id") cfg.run_id = value;
        else throw std::invalid_argument("unknown output key: " + key);
      } else {
        throw std::invalid_argument("unknown section: " + section);
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": " +
                                  e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

CsrGraph build_graph(const ExperimentConfig& cfg) {
  if (cfg.graph_source == "rmat") {
    EdgeList el = gen_rmat(cfg.rmat);
    return build_csr(el, 1ull << cfg.rmat.scale);
  }
  CsrGraph g;
  if (cfg.graph_source == "cache") {
    g = load_csr_cache_file(cfg.graph_path);
  } else {
    auto [el, n] = load_edge_list_file(cfg.graph_path);
    g = build_csr(el, n);
  }
  if (!cfg.types_path.empty()) {
    g.set_vertex_types(load_types_file(cfg.types_path, g.num_vertices()));
  }
  return g;
}

std::vector<Query> make_query_load(const ExperimentConfig& cfg, const CsrGraph& g) {
  if (g.num_vertices() == 0) throw std::invalid_argument("graph has no vertices");
  std::vector<Query> qs;
  qs.reserve(cfg.num_queries);
  for (uint64_t i = 0; i < cfg.num_queries; i++) {
    VertexId v = static_cast<VertexId>(
        RngStream::at(cfg.sim.seed ^ 0x51AD5ull, i, 0) % g.num_vertices());
    qs.push_back({static_cast<uint32_t>(i), v});
  }
  return qs;
}

std::string graph_label(const ExperimentConfig& cfg) {
  if (!cfg.graph_name.empty()) return cfg.graph_name;
  if (cfg.graph_source == "rmat") {
    return "rmat-sc" + std::to_string(cfg.rmat.scale) + "-" +
           std::to_string(cfg.rmat.edge_factor);
  }
  size_t slash = cfg.graph_path.find_last_of('/');
  return slash == std::string::npos ? cfg.graph_path : cfg.graph_path.substr(slash + 1);
}

}  // namespace grw
