#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* p = std::getenv("GRWSIM_BIN");
  REQUIRE(p != nullptr);
  return p;
}

int run_cmd(const std::string& args, const std::string& log = "/dev/null") {
  std::string cmd = cli_path() + " " + args + " >" + log + " 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("grwsim-test-" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("gen-rmat is deterministic and writes a metadata sidecar") {
  fs::path d = fresh_dir("gen");
  std::string a = (d / "a.txt").string(), b = (d / "b.txt").string();
  CHECK(run_cmd("gen-rmat --scale 8 --edge-factor 4 --graph500 --seed 11 --out " + a) == 0);
  CHECK(run_cmd("gen-rmat --scale 8 --edge-factor 4 --graph500 --seed 11 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a + ".meta").find("seed = 11") != std::string::npos);
  // 2^8 * 4 edges
  std::string body = slurp(a);
  CHECK(std::count(body.begin(), body.end(), '\n') == 1024);
}

TEST_CASE("convert produces a loadable cache and surfaces parse errors") {
  fs::path d = fresh_dir("conv");
  std::string edges = (d / "e.txt").string();
  {
    std::ofstream f(edges);
    f << "0 1\n1 2\n2 0\n";
  }
  CHECK(run_cmd("convert --in " + edges + " --out " + (d / "g.csr").string()) == 0);
  CHECK(run_cmd("convert --in " + edges + " --out " + (d / "h.csr").string()) == 0);
  CHECK(slurp(d / "g.csr") == slurp(d / "h.csr"));  // cache is deterministic
  // A run from the cache reproduces the run from the raw edge list.
  std::string common = " --algo urw --pipelines 1 --queries 20 --max-len 5 --seed 3"
                       " --run-id cc --out ";
  CHECK(run_cmd("run --graph " + edges + common + (d / "r1").string()) == 0);
  {
    std::ofstream f(d / "from-cache.cfg");
    f << "[graph]\nsource = cache\npath = " << (d / "g.csr").string() << "\n";
  }
  CHECK(run_cmd("run --config " + (d / "from-cache.cfg").string() + common +
                (d / "r2").string()) == 0);
  CHECK(slurp(d / "r1" / "cc.paths.txt") == slurp(d / "r2" / "cc.paths.txt"));

  std::string bad = (d / "bad.txt").string();
  {
    std::ofstream f(bad);
    f << "0 1\n0 2\n0 3\n0 4\n0 5\n0 6\nnot an edge\n";
  }
  std::string log = (d / "err.log").string();
  CHECK(run_cmd("convert --in " + bad + " --out " + (d / "x.csr").string(), log) == 2);
  CHECK(slurp(log).find("7") != std::string::npos);  // line number named
}

TEST_CASE("run emits deterministic artifacts and exit code zero") {
  fs::path d = fresh_dir("run");
  std::string base = "run --scale 7 --edge-factor 4 --algo urw --pipelines 2 "
                     "--queries 100 --max-len 10 --seed 9 --run-id t --out ";
  CHECK(run_cmd(base + (d / "one").string()) == 0);
  CHECK(run_cmd(base + (d / "two").string()) == 0);
  CHECK(slurp(d / "one" / "t.paths.txt") == slurp(d / "two" / "t.paths.txt"));
  CHECK(slurp(d / "one" / "t.report.json") == slurp(d / "two" / "t.report.json"));
  CHECK(slurp(d / "one" / "t.report.csv")
            .rfind("run_id,algo,graph,N,cycles,steps,msteps,util,bubble_ratio\n", 0) == 0);
}

TEST_CASE("run with zero queries produces empty paths and zero steps") {
  fs::path d = fresh_dir("zeroq");
  CHECK(run_cmd("run --scale 6 --edge-factor 2 --queries 0 --pipelines 2 --out " +
                d.string() + " --run-id z") == 0);
  CHECK(slurp(d / "z.paths.txt").empty());
  CHECK(slurp(d / "z.report.json").find("\"completed_steps\": 0") != std::string::npos);
}

TEST_CASE("unknown algorithm is a usage error") {
  CHECK(run_cmd("run --algo pagerank --queries 1") == 1);
  CHECK(run_cmd("definitely-not-a-command") == 1);
}

TEST_CASE("invalid config file is an input error and leaves no outputs") {
  fs::path d = fresh_dir("badcfg");
  std::string cfg = (d / "bad.cfg").string();
  {
    std::ofstream f(cfg);
    f << "[algo]\nkind = urw\nalpha = oops\n";
  }
  CHECK(run_cmd("run --config " + cfg + " --out " + (d / "out").string()) == 2);
  CHECK(!fs::exists(d / "out" / "run.report.json"));
}

TEST_CASE("config file drives a run end to end") {
  fs::path d = fresh_dir("cfgrun");
  std::string cfg = (d / "exp.cfg").string();
  {
    std::ofstream f(cfg);
    f << "[graph]\nsource = rmat\nscale = 7\nedge_factor = 4\nseed = 2\n"
      << "[algo]\nkind = ppr\nalpha = 0.2\nmax_len = 40\n"
      << "[sim]\npipelines = 2\nseed = 3\nqueries = 150\n"
      << "[output]\nrun_id = cfga\n";
  }
  CHECK(run_cmd("run --config " + cfg + " --out " + (d / "out").string()) == 0);
  CHECK(fs::exists(d / "out" / "cfga.report.json"));
  // report subcommand round-trips the stored json
  std::string log = (d / "rep.log").string();
  CHECK(run_cmd("report --in " + (d / "out" / "cfga.report.json").string(), log) == 0);
  CHECK(slurp(log).rfind("run_id,algo,graph", 0) == 0);
  // Unknown export format is rejected before any file is touched.
  CHECK(run_cmd("report --format yaml --in " +
                (d / "out" / "cfga.report.json").string()) == 2);
}

TEST_CASE("ablate emits one row per mode per repetition") {
  fs::path d = fresh_dir("ablate");
  std::string cfg = (d / "a.cfg").string();
  {
    std::ofstream f(cfg);
    f << "[graph]\nsource = rmat\nscale = 8\nedge_factor = 4\n"
      << "a = 0.57\nb = 0.19\nc = 0.19\nd = 0.05\nseed = 4\n"
      << "[algo]\nkind = urw\nmax_len = 20\n"
      << "[sim]\npipelines = 2\nseed = 5\nqueries = 300\nrepetitions = 3\n"
      << "[output]\nrun_id = abl\n";
  }
  CHECK(run_cmd("ablate --config " + cfg + " --out " + (d / "out").string()) == 0);
  std::string csv = slurp(d / "out" / "abl.ablate.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 3);  // header + 12 rows
}

TEST_CASE("sweep emits one row per point in axis order") {
  fs::path d = fresh_dir("sweep");
  std::string base = "sweep --scale 6 --edge-factor 4 --queries 100 --max-len 10 "
                     "--seed 7 --run-id swp --out " + (d / "out").string();
  std::string log = (d / "s.log").string();
  CHECK(run_cmd(base + " --axis N --values 2,4", log) == 0);
  std::string csv = slurp(d / "out" / "swp.sweep.csv");
  CHECK(csv.rfind("axis,value,", 0) == 0);
  size_t p2 = csv.find("\nN,2,");
  size_t p4 = csv.find("\nN,4,");
  CHECK(p2 != std::string::npos);
  CHECK(p4 != std::string::npos);
  CHECK(p2 < p4);
  // Single-point sweep yields exactly one data row.
  CHECK(run_cmd(base + " --axis latency --values 50", log) == 0);
  std::string one = slurp(d / "out" / "swp.sweep.csv");
  CHECK(std::count(one.begin(), one.end(), '\n') == 2);
}
