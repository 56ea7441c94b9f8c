#pragma once

#include <map>
#include <string>

#include "grw/rmat.hpp"
#include "grw/sim.hpp"

namespace grw {

// Line-oriented "[section]" / "key = value" experiment description.
struct ExperimentConfig {
  // [graph]
  std::string graph_source = "rmat";  // rmat | file | cache
  std::string graph_path;
  std::string types_path;
  RmatParams rmat;
  std::string graph_name;  // report label; derived when empty

  // [algo]
  AlgoParams algo;

  // [sim]
  SimConfig sim;
  uint64_t num_queries = 1000;
  uint32_t block_granularity = 0;
  double clock_hz = 320e6;
  uint32_t repetitions = 1;

  // [output]
  std::string out_dir = ".";
  std::string run_id = "run";

  void validate() const;
};

// Parses the key=value format; unknown keys raise std::invalid_argument with
// the offending line number.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Materializes the configured graph (generating, loading, or reading a cache).
CsrGraph build_graph(const ExperimentConfig& cfg);

// Query starts drawn uniformly from the configured seed.
std::vector<Query> make_query_load(const ExperimentConfig& cfg, const CsrGraph& g);

// Label used in reports: explicit name, file basename, or rmat scale tag.
std::string graph_label(const ExperimentConfig& cfg);

}  // namespace grw
