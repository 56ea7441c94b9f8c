#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "grw/graph.hpp"
#include "grw/layout.hpp"
#include "grw/rmat.hpp"
#include "grw/rng.hpp"
#include "test_util.hpp"

using namespace grw;

TEST_CASE("build_csr hand-constructed offsets") {
  auto g = testutil::make_graph(3, {{0, 1}, {0, 2}, {1, 0}});
  CHECK(g.row_ptr() == std::vector<EdgeOffset>{0, 2, 3, 3});
  CHECK(g.neighbors(0)[0] == 1);
  CHECK(g.neighbors(0)[1] == 2);
  CHECK(g.degree(2) == 0);
}

TEST_CASE("build_csr empty edge list") {
  auto g = testutil::make_graph(3, {});
  CHECK(g.row_ptr() == std::vector<EdgeOffset>{0, 0, 0, 0});
  CHECK(g.num_edges() == 0);
}

TEST_CASE("build_csr row pointer offset example") {
  // deg(v0)=2, deg(v1)=1 so v2's neighbors begin at column offset 3.
  auto g = testutil::make_graph(5, {{0, 1}, {0, 2}, {1, 3}, {2, 4}});
  CHECK(g.row_begin(2) == 3);
  CHECK(g.neighbors(2)[0] == 4);
}

TEST_CASE("build_csr keeps input edge order per vertex") {
  auto g = testutil::make_graph(4, {{1, 3}, {1, 0}, {1, 2}});
  CHECK(g.neighbors(1)[0] == 3);
  CHECK(g.neighbors(1)[1] == 0);
  CHECK(g.neighbors(1)[2] == 2);
}

TEST_CASE("build_csr rejects bad input") {
  CHECK_THROWS_AS(testutil::make_graph(2, {{0, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(testutil::make_graph(2, {{0, 1}}, {-1.0}), std::invalid_argument);
}

TEST_CASE("load_edge_list basics") {
  std::istringstream in("0 1\n1 2\n");
  auto [el, n] = load_edge_list(in);
  CHECK(n == 3);
  REQUIRE(el.size() == 2);
  CHECK(el.edges[0] == std::pair<VertexId, VertexId>{0, 1});
  CHECK(el.edges[1] == std::pair<VertexId, VertexId>{1, 2});
  CHECK(!el.weighted());
}

TEST_CASE("load_edge_list comments and weights") {
  std::istringstream in("# c\n0 1 2.5\n");
  auto [el, n] = load_edge_list(in);
  CHECK(n == 2);
  REQUIRE(el.size() == 1);
  CHECK(el.weighted());
  CHECK(el.weights[0] == doctest::Approx(2.5));
}

TEST_CASE("load_edge_list max-id rule") {
  std::istringstream in("2 0\n");
  auto [el, n] = load_edge_list(in);
  CHECK(n == 3);
  CHECK(el.size() == 1);
}

TEST_CASE("load_edge_list empty input") {
  std::istringstream in("");
  auto [el, n] = load_edge_list(in);
  CHECK(n == 0);
  CHECK(el.size() == 0);
}

TEST_CASE("load_edge_list reports the malformed line number") {
  std::istringstream in("0 1\n0 2\n0 3\n0 4\n0 5\n0 6\nbogus line\n");
  try {
    load_edge_list(in);
    FAIL("expected parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("7") != std::string::npos);
  }
}

TEST_CASE("csr cache round trip") {
  EdgeList el;
  el.edges = {{0, 1}, {0, 2}, {1, 0}, {2, 1}};
  el.weights = {1.0, 2.0, 0.5, 3.25};
  auto g = build_csr(el, 3);
  g.set_vertex_types({0, 1, 1});
  std::stringstream buf;
  save_csr_cache(g, buf);
  auto h = load_csr_cache(buf);
  CHECK(h.row_ptr() == g.row_ptr());
  CHECK(h.col_list() == g.col_list());
  CHECK(h.weights() == g.weights());
  CHECK(h.vertex_types() == g.vertex_types());
}

TEST_CASE("gen_rmat counts and configs") {
  auto el = gen_rmat(rmat_balanced(4, 2, 7));
  CHECK(el.size() == 32);  // 2^4 * 2
  for (auto [s, d] : el.edges) {
    CHECK(s < 16);
    CHECK(d < 16);
  }
  auto g500 = rmat_graph500(4, 2, 7);
  CHECK(g500.a == doctest::Approx(0.57));
  CHECK(g500.b == doctest::Approx(0.19));
  CHECK(g500.d == doctest::Approx(0.05));
  CHECK_NOTHROW(gen_rmat(g500));
}

TEST_CASE("gen_rmat determinism") {
  auto a = gen_rmat(rmat_graph500(8, 4, 42));
  auto b = gen_rmat(rmat_graph500(8, 4, 42));
  CHECK(a.edges == b.edges);
  auto c = gen_rmat(rmat_graph500(8, 4, 43));
  CHECK(a.edges != c.edges);
}

TEST_CASE("gen_rmat rejects bad probabilities") {
  RmatParams p = rmat_balanced(4, 2, 1);
  p.a = 0.5;
  CHECK_THROWS_AS(gen_rmat(p), std::invalid_argument);
}

TEST_CASE("gen_rmat graph500 config is skewed") {
  auto el = gen_rmat(rmat_graph500(10, 8, 3));
  auto g = build_csr(el, 1 << 10);
  uint32_t dead = 0, max_deg = 0;
  for (VertexId v = 0; v < g.num_vertices(); v++) {
    dead += g.degree(v) == 0;
    max_deg = std::max(max_deg, g.degree(v));
  }
  CHECK(dead > 100);       // many sinks
  CHECK(max_deg > 100);    // heavy head
}

TEST_CASE("rp entry width classes match the sampling algorithm") {
  CHECK(rp_entry_width_bits(AlgoKind::Urw) == 64);
  CHECK(rp_entry_width_bits(AlgoKind::Ppr) == 64);
  CHECK(rp_entry_width_bits(AlgoKind::Node2VecReject) == 64);
  CHECK(rp_entry_width_bits(AlgoKind::Node2VecReservoir) == 128);
  CHECK(rp_entry_width_bits(AlgoKind::MetaPath) == 128);
  CHECK(rp_entry_width_bits(AlgoKind::DeepWalk) == 256);
}

TEST_CASE("rp entry encode/decode identity over random in-budget values") {
  RngStream rng(99, 0);
  for (uint32_t width : {64u, 128u, 256u}) {
    for (int i = 0; i < 2000; i++) {
      RowPointerEntry e;
      e.channel_id = static_cast<uint32_t>(rng.next() & 0x3F);
      e.cl_start = rng.next() & ((1ull << 34) - 1);
      e.degree = static_cast<uint32_t>(rng.next() & 0xFFFFFF);
      if (width >= 128) {
        e.aux_offset = rng.next() & ((1ull << 40) - 1);
        e.aux_size = static_cast<uint32_t>(rng.next() & 0xFFFFFF);
      }
      auto words = encode_rp_entry(e, width);
      CHECK(decode_rp_entry(words, width) == e);
    }
  }
}

TEST_CASE("rp entry encode rejects over-budget fields") {
  RowPointerEntry e;
  e.channel_id = 64;  // 6-bit budget
  CHECK_THROWS_AS(encode_rp_entry(e, 64), std::invalid_argument);
}

TEST_CASE("layout single channel is the identity") {
  auto g = testutil::make_graph(4, {{0, 1}, {0, 2}, {1, 3}, {3, 0}});
  auto lay = build_layout(g, 1, 1, AlgoKind::Urw);
  for (VertexId v = 0; v < 4; v++) {
    CHECK(lay.row_channel_of(v) == 0);
    CHECK(lay.rp_of(v).channel_id == 0);
    CHECK(lay.rp_of(v).degree == g.degree(v));
  }
  CHECK(lay.cl_store()[0] == g.col_list());
}

TEST_CASE("layout whole lists alternate column channels round-robin") {
  auto g = testutil::make_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 0}, {3, 1}});
  auto lay = build_layout(g, 1, 2, AlgoKind::Urw);
  CHECK(lay.rp_of(0).channel_id == 0);
  CHECK(lay.rp_of(1).channel_id == 1);
  CHECK(lay.rp_of(2).channel_id == 0);
  CHECK(lay.rp_of(3).channel_id == 1);
}

static void check_layout_roundtrip(const CsrGraph& g, const MemoryLayout& lay) {
  for (VertexId v = 0; v < g.num_vertices(); v++) {
    const RowPointerEntry& e = lay.rp_of(v);
    REQUIRE(e.degree == g.degree(v));
    for (uint32_t j = 0; j < e.degree; j++) {
      auto addr = lay.locate_neighbor(e, j);
      CHECK(lay.col_value(addr) == g.neighbors(v)[j]);
    }
  }
}

TEST_CASE("layout round trip is exhaustive on a 1k-vertex rmat graph") {
  auto el = gen_rmat(rmat_balanced(10, 4, 11));
  auto g = build_csr(el, 1 << 10);
  for (uint32_t rows : {1u, 4u}) {
    for (uint32_t cols : {1u, 4u, 8u}) {
      auto lay = build_layout(g, rows, cols, AlgoKind::Urw);
      check_layout_roundtrip(g, lay);
    }
  }
}

TEST_CASE("layout round trip holds for fixed-size block granularity") {
  auto el = gen_rmat(rmat_balanced(8, 4, 5));
  auto g = build_csr(el, 1 << 8);
  for (uint32_t block : {1u, 2u, 3u, 7u}) {
    auto lay = build_layout(g, 2, 4, AlgoKind::Urw, block);
    check_layout_roundtrip(g, lay);
  }
}

TEST_CASE("layout row partition covers all vertices with balanced cardinality") {
  auto el = gen_rmat(rmat_balanced(9, 2, 17));
  auto g = build_csr(el, 1 << 9);
  // A non-dividing vertex count exercises the +-1 balance.
  for (uint32_t channels : {16u, 7u}) {
    auto lay = build_layout(g, channels, 16, AlgoKind::Urw);
    std::vector<uint64_t> per_channel(channels, 0);
    for (VertexId v = 0; v < g.num_vertices(); v++) {
      uint32_t ch = lay.row_channel_of(v);
      REQUIRE(ch < channels);
      // The channel's store holds exactly this vertex's entry at its index.
      CHECK(lay.rp_of(v).degree == g.degree(v));
      per_channel[ch]++;
    }
    uint64_t lo = *std::min_element(per_channel.begin(), per_channel.end());
    uint64_t hi = *std::max_element(per_channel.begin(), per_channel.end());
    CHECK(hi - lo <= 1);
    uint64_t total = 0;
    for (auto c : per_channel) total += c;
    CHECK(total == g.num_vertices());
  }
}

TEST_CASE("layout builds alias tables for deepwalk") {
  EdgeList el;
  el.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 0}};
  el.weights = {5.0, 1.0, 2.0, 1.0};
  auto g = build_csr(el, 4);
  auto lay = build_layout(g, 1, 2, AlgoKind::DeepWalk);
  const auto& e = lay.rp_of(0);
  CHECK(e.aux_size == 3);
  // Alias distribution must reproduce the weights exactly.
  auto slot0 = lay.alias_slot(e, 0);
  auto slot1 = lay.alias_slot(e, 1);
  auto slot2 = lay.alias_slot(e, 2);
  // P(i) = (prob[i] + sum over aliases) / degree
  double p0 = slot0.prob + (slot1.alias == 0 ? 1.0 - slot1.prob : 0.0) +
              (slot2.alias == 0 ? 1.0 - slot2.prob : 0.0);
  CHECK(p0 / 3.0 == doctest::Approx(5.0 / 8.0));
}

TEST_CASE("dead-end vertices carry a valid zero-degree rp entry") {
  auto g = testutil::make_graph(3, {{0, 1}});
  auto lay = build_layout(g, 2, 2, AlgoKind::Urw);
  CHECK(lay.rp_of(2).degree == 0);
  CHECK(lay.rp_of(2).channel_id < 2);
}
