#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "grw/config.hpp"
#include "grw/metrics.hpp"
#include "grw/oracle.hpp"

namespace fs = std::filesystem;
using namespace grw;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

SimResult run_one(const ExperimentConfig& cfg, const CsrGraph& g,
                  const MemoryLayout& layout, const std::vector<Query>& queries) {
  if (cfg.sim.mode == SimMode::Baseline) {
    BaselineConfig b;
    b.n_pipelines = cfg.sim.n_pipelines;
    b.fixed_latency_cycles = cfg.sim.mem.fixed_latency_cycles;
    b.algo = cfg.algo;
    b.seed = cfg.sim.seed;
    b.path_write_granularity = cfg.sim.path_write_granularity;
    return static_batch_baseline(b, g, queries);
  }
  SimConfig sc = cfg.sim;
  sc.algo = cfg.algo;
  return simulate(sc, g, layout, queries);
}

SimResult run_experiment(const ExperimentConfig& cfg, const CsrGraph& g) {
  auto layout = build_layout(g, cfg.sim.n_pipelines, cfg.sim.n_pipelines,
                             cfg.algo.kind, cfg.block_granularity);
  auto queries = make_query_load(cfg, g);
  SimResult r = run_one(cfg, g, layout, queries);
  r.report.run_id = cfg.run_id;
  r.report.graph = graph_label(cfg);
  return r;
}

int cmd_gen_rmat(const RmatParams& p, const std::string& out_path) {
  EdgeList el = gen_rmat(p);
  std::ostringstream body;
  for (auto [s, d] : el.edges) body << s << ' ' << d << '\n';
  write_text(out_path, body.str());
  std::ostringstream meta;
  meta << "scale = " << p.scale << "\nedge_factor = " << p.edge_factor << "\na = "
       << p.a << "\nb = " << p.b << "\nc = " << p.c << "\nd = " << p.d
       << "\nseed = " << p.seed << "\nundirected = " << (p.undirected ? "true" : "false")
       << "\nvertices = " << (1ull << p.scale) << "\nedges = " << el.size() << "\n";
  write_text(out_path + ".meta", meta.str());
  std::cout << "wrote " << el.size() << " edges to " << out_path << "\n";
  return 0;
}

int cmd_convert(const std::string& in_path, const std::string& out_path,
                const std::string& types_path) {
  auto [el, n] = load_edge_list_file(in_path);
  CsrGraph g = build_csr(el, n);
  if (!types_path.empty()) {
    g.set_vertex_types(load_types_file(types_path, g.num_vertices()));
  }
  save_csr_cache_file(g, out_path);
  std::cout << "cached " << g.num_vertices() << " vertices, " << g.num_edges()
            << " edges to " << out_path << "\n";
  return 0;
}

int cmd_run(ExperimentConfig cfg) {
  cfg.validate();
  CsrGraph g = build_graph(cfg);
  fs::create_directories(cfg.out_dir);
  SimResult r = run_experiment(cfg, g);
  fs::path dir(cfg.out_dir);
  {
    std::ofstream paths(dir / (cfg.run_id + ".paths.txt"));
    r.paths.write_paths(paths);
  }
  write_text(dir / (cfg.run_id + ".report.json"), report_to_json(r.report));
  write_text(dir / (cfg.run_id + ".report.csv"),
             export_report(r.report, ExportFormat::Csv, cfg.sim.mem, cfg.clock_hz));
  if (cfg.sim.trace) {
    std::ofstream trace(dir / (cfg.run_id + ".trace.txt"));
    for (const auto& e : r.report.trace) {
      trace << e.cycle << ' ' << e.unit << ' ' << e.event << ' ' << e.query_id << ' '
            << e.hop << '\n';
    }
  }
  std::cout << csv_row(r.report, cfg.sim.mem, cfg.clock_hz) << "\n";
  return 0;
}

int cmd_ablate(ExperimentConfig cfg) {
  cfg.validate();
  CsrGraph g = build_graph(cfg);
  fs::create_directories(cfg.out_dir);
  std::ostringstream csv;
  csv << kCsvHeader << "\n";
  for (uint32_t rep = 0; rep < cfg.repetitions; rep++) {
    for (SimMode mode : {SimMode::Combined, SimMode::AsyncOnly,
                         SimMode::SchedulerOnly, SimMode::Baseline}) {
      ExperimentConfig c = cfg;
      c.sim.mode = mode;
      c.sim.seed = cfg.sim.seed + rep;  // repetition seeds derive as seed + rep
      c.run_id = cfg.run_id + "-" + sim_mode_name(mode) + "-r" + std::to_string(rep);
      SimResult r = run_experiment(c, g);
      csv << csv_row(r.report, c.sim.mem, c.clock_hz) << "\n";
    }
  }
  fs::path out = fs::path(cfg.out_dir) / (cfg.run_id + ".ablate.csv");
  write_text(out, csv.str());
  std::cout << csv.str();
  return 0;
}

int cmd_sweep(ExperimentConfig cfg, const std::string& axis,
              const std::vector<std::string>& values) {
  cfg.validate();
  if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
  fs::create_directories(cfg.out_dir);
  std::ostringstream csv;
  csv << "axis,value," << kCsvHeader << "\n";
  for (uint32_t rep = 0; rep < cfg.repetitions; rep++) {
    for (const std::string& v : values) {
      ExperimentConfig c = cfg;
      c.sim.seed = cfg.sim.seed + rep;
      if (axis == "N") {
        c.sim.n_pipelines = std::stoul(v);
      } else if (axis == "fifo_depth") {
        c.sim.pipe_fifo_depth = std::stoul(v);
      } else if (axis == "latency") {
        c.sim.mem.fixed_latency_cycles = std::stoul(v);
      } else if (axis == "skew") {
        // RMAT corner mass; b = c share the remainder with d fixed.
        double a = std::stod(v);
        c.rmat.a = a;
        c.rmat.b = c.rmat.c = (1.0 - a - c.rmat.d) / 2.0;
      } else {
        throw std::invalid_argument("unknown sweep axis: " + axis);
      }
      c.run_id = cfg.run_id + "-" + axis + v + "-r" + std::to_string(rep);
      CsrGraph g = build_graph(c);
      SimResult r = run_experiment(c, g);
      csv << axis << ',' << v << ',' << csv_row(r.report, c.sim.mem, c.clock_hz) << "\n";
    }
  }
  fs::path out = fs::path(cfg.out_dir) / (cfg.run_id + ".sweep.csv");
  write_text(out, csv.str());
  std::cout << csv.str();
  return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& format) {
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("unknown report format: " + format);
  }
  bool header = true;
  for (const std::string& path : inputs) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open report: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    SimReport r = report_from_json(ss.str());
    MemModelParams mem;
    if (format == "json") {
      std::cout << report_to_json(r) << "\n";
    } else {
      std::cout << export_report(r, ExportFormat::Csv, mem, 320e6, header);
      header = false;
    }
  }
  return 0;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flags shared by run/ablate/sweep; set-flags override the config file.
struct RunFlags {
  std::string config_path;
  std::string out_dir;
  std::string algo;
  std::string mode;
  std::string run_id;
  std::string graph_path;
  uint32_t pipelines = 0;
  uint64_t queries = 0;
  uint64_t seed = 0;
  uint32_t max_len = 0;
  uint64_t max_cycles = 0;
  uint32_t scale = 0;
  uint32_t edge_factor = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value config file");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--algo", algo,
                    "urw|ppr|deepwalk|node2vec-reject|node2vec-reservoir|metapath");
    cmd->add_option("--mode", mode, "combined|scheduler-only|async-only|baseline");
    cmd->add_option("--run-id", run_id);
    cmd->add_option("--graph", graph_path, "edge-list file (switches source to file)");
    cmd->add_option("--pipelines", pipelines);
    cmd->add_option("--queries", queries);
    cmd->add_option("--seed", seed);
    cmd->add_option("--max-len", max_len);
    cmd->add_option("--max-cycles", max_cycles);
    cmd->add_option("--scale", scale);
    cmd->add_option("--edge-factor", edge_factor);
    cmd_ = cmd;
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path);
    if (cmd_->count("--out")) cfg.out_dir = out_dir;
    try {
      if (cmd_->count("--algo")) cfg.algo.kind = algo_from_name(algo);
      if (cmd_->count("--mode")) cfg.sim.mode = sim_mode_from_name(mode);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (cmd_->count("--run-id")) cfg.run_id = run_id;
    if (cmd_->count("--graph")) {
      cfg.graph_path = graph_path;
      cfg.graph_source = "file";
    }
    if (cmd_->count("--pipelines")) cfg.sim.n_pipelines = pipelines;
    if (cmd_->count("--queries")) cfg.num_queries = queries;
    if (cmd_->count("--seed")) cfg.sim.seed = seed;
    if (cmd_->count("--max-len")) cfg.algo.max_len = max_len;
    if (cmd_->count("--max-cycles")) cfg.sim.max_cycles = max_cycles;
    if (cmd_->count("--scale")) cfg.rmat.scale = scale;
    if (cmd_->count("--edge-factor")) cfg.rmat.edge_factor = edge_factor;
    return cfg;
  }

 private:
  CLI::App* cmd_ = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cycle-level simulator for pipelined graph-random-walk accelerators"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-rmat", "generate an RMAT edge list");
  RmatParams rp;
  std::string gen_out = "rmat.txt";
  bool graph500 = false;
  gen->add_option("--scale", rp.scale, "log2 of the vertex count");
  gen->add_option("--edge-factor", rp.edge_factor, "edges per vertex");
  gen->add_option("--a", rp.a);
  gen->add_option("--b", rp.b);
  gen->add_option("--c", rp.c);
  gen->add_option("--d", rp.d);
  gen->add_flag("--graph500", graph500, "Graph500 initiator (0.57/0.19/0.19/0.05)");
  gen->add_flag("--undirected", rp.undirected, "emit reverse edges too");
  gen->add_option("--seed", rp.seed);
  gen->add_option("--out", gen_out, "output edge-list path");

  auto* conv = app.add_subcommand("convert", "edge list to binary CSR cache");
  std::string conv_in, conv_out = "graph.csr", conv_types;
  conv->add_option("--in", conv_in)->required();
  conv->add_option("--out", conv_out);
  conv->add_option("--types", conv_types, "vertex-type sidecar (one label per line)");

  auto* run = app.add_subcommand("run", "simulate one configuration");
  auto* ablate = app.add_subcommand("ablate", "run the four optimization modes");
  auto* sweep = app.add_subcommand("sweep", "sweep one axis");
  RunFlags run_f, abl_f, swp_f;
  run_f.attach(run);
  abl_f.attach(ablate);
  swp_f.attach(sweep);

  std::string sweep_axis;
  std::vector<std::string> sweep_values;
  sweep->add_option("--axis", sweep_axis, "N|fifo_depth|latency|skew")->required();
  sweep->add_option("--values", sweep_values, "comma-separated points")
      ->required()
      ->delimiter(',');

  auto* rep = app.add_subcommand("report", "re-emit stored reports");
  std::vector<std::string> report_in;
  std::string report_fmt = "csv";
  rep->add_option("--in", report_in, "report.json files")->required()->delimiter(',');
  rep->add_option("--format", report_fmt, "csv|json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // --help is success; anything else is usage
  }

  try {
    if (gen->parsed()) {
      if (graph500) {
        rp.a = 0.57;
        rp.b = rp.c = 0.19;
        rp.d = 0.05;
      }
      return cmd_gen_rmat(rp, gen_out);
    }
    if (conv->parsed()) return cmd_convert(conv_in, conv_out, conv_types);
    if (run->parsed()) return cmd_run(run_f.resolve());
    if (ablate->parsed()) return cmd_ablate(abl_f.resolve());
    if (sweep->parsed()) return cmd_sweep(swp_f.resolve(), sweep_axis, sweep_values);
    if (rep->parsed()) return cmd_report(report_in, report_fmt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
