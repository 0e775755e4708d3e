#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "sparsemc/error.hpp"
#include "sparsemc/graph.hpp"
#include "sparsemc/ordering.hpp"

using namespace sparsemc;

TEST_SUITE("graph") {
  TEST_CASE("parse examples") {
    const Graph g = parse_graph("graph 2\ne 0 1");
    CHECK(g.n() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(1, 0));
    CHECK(parse_graph("graph 3").edge_count() == 0);
    CHECK(parse_graph("graph 2\ne 0 1\ne 1 0").edge_count() == 1);
    CHECK(parse_graph("# header comment\ngraph 3 # trailing\n\ne 0 2\n").has_edge(0, 2));
  }

  TEST_CASE("parse errors name the line") {
    auto expect_error = [](const char *text, const char *needle) {
      try {
        parse_graph(text);
        FAIL("expected parse error");
      } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
      }
    };
    expect_error("grph 2", "line 1");
    expect_error("graph 2\ne 0 2", "line 2");
    expect_error("graph 2\n\ne 1 1", "line 3");
    expect_error("graph x", "integer");
    expect_error("", "missing header");
  }

  TEST_CASE("parse print parse round trip") {
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
      const Graph g = testgen::random_gnp(rng, testgen::uniform(rng, 0, 25), 0.2);
      const std::string text = format_graph(g);
      CHECK(parse_graph(text) == g);
      CHECK(format_graph(parse_graph(text)) == text);
    }
  }

  TEST_CASE("induced subgraph") {
    const auto k3 = induced_subgraph(testgen::complete(4), std::vector<Vertex>{0, 1, 2});
    CHECK(k3.graph == testgen::complete(3));
    const auto empty = induced_subgraph(testgen::complete(4), std::vector<Vertex>{});
    CHECK(empty.graph.n() == 0);
    const auto two = induced_subgraph(testgen::path(4), std::vector<Vertex>{0, 2});
    CHECK(two.graph.n() == 2);
    CHECK(two.graph.edge_count() == 0);
    CHECK(two.to_parent == std::vector<Vertex>{0, 2});
    CHECK(two.to_local[2] == 1);
    CHECK(two.to_local[1] == -1);
    CHECK_THROWS_AS(induced_subgraph(testgen::path(3), std::vector<Vertex>{5}), Error);
  }

  TEST_CASE("induced subgraph composes like intersection") {
    Rng rng(11);
    for (int t = 0; t < 40; ++t) {
      const int n = testgen::uniform(rng, 1, 20);
      const Graph g = testgen::random_gnp(rng, n, 0.3);
      std::vector<Vertex> a;
      std::vector<Vertex> b;
      for (int v = 0; v < n; ++v) {
        if (testgen::coin(rng, 0.6)) a.push_back(v);
        if (testgen::coin(rng, 0.6)) b.push_back(v);
      }
      const auto outer = induced_subgraph(g, a);
      std::vector<Vertex> b_local;
      std::vector<Vertex> both;
      for (const Vertex v : b) {
        if (outer.to_local[v] >= 0) {
          b_local.push_back(outer.to_local[v]);
          both.push_back(v);
        }
      }
      CHECK(induced_subgraph(outer.graph, b_local).graph == induced_subgraph(g, both).graph);
    }
  }

  TEST_CASE("bounded distances examples") {
    const auto d = bounded_distances(testgen::path(4), 0, 2);
    CHECK(d[3] == kUnreachable);
    CHECK(d[2] == 2);
    const auto zero = bounded_distances(testgen::path(4), 1, 0);
    CHECK(zero == std::vector<int>{kUnreachable, 0, kUnreachable, kUnreachable});
    CHECK(bounded_distances(testgen::cycle(6), 0, 3)[3] == 3);
    RoundLedger ledger;
    bounded_distances(testgen::cycle(6), 0, 3, nullptr, &ledger);
    CHECK(ledger.rounds("distances") == 2);
  }

  TEST_CASE("bounded distances agree with bfs") {
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
      const int n = testgen::uniform(rng, 1, 30);
      const Graph g = testgen::random_gnp(rng, n, 0.1);
      const Vertex s = testgen::uniform(rng, 0, n - 1);
      const int cap = testgen::uniform(rng, 0, 6);
      const auto full = oracle::bfs(g, s);
      const auto capped = bounded_distances(g, s, cap);
      for (int v = 0; v < n; ++v) {
        if (full[v] >= 0 && full[v] <= cap) {
          CHECK(capped[v] == full[v]);
        } else {
          CHECK(capped[v] == kUnreachable);
        }
      }
    }
  }

  TEST_CASE("components") {
    const auto c = components(Graph(3));
    CHECK(c == std::vector<int>{0, 1, 2});
    const auto p = components(testgen::path(4));
    CHECK(p == std::vector<int>{0, 0, 0, 0});
    const std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {2, 3}};
    CHECK(components(Graph::from_edges(4, e)) == std::vector<int>{0, 0, 1, 1});
  }

  TEST_CASE("orderings and ledger") {
    CHECK_THROWS_AS(VertexOrdering(std::vector<Vertex>{0, 0}), Error);
    const BlockOrdering b(4, {{3, 1}, {0, 2}});
    CHECK(b.block_of(1) == 0);
    CHECK(b.flatten().sequence() == std::vector<Vertex>{1, 3, 0, 2});
    CHECK(format_blocks(b) == "block 0: 1 3\nblock 1: 0 2\n");
    CHECK_THROWS_AS(BlockOrdering(3, {{0, 1}}), Error);
    CHECK(parse_ordering("2 0 1\n", 3).position(2) == 0);
    CHECK_THROWS_AS(parse_ordering("2 0\n", 3), Error);
    RoundLedger ledger;
    ledger.add("a", 1);
    ledger.add("a", 2);
    ledger.add("b", 0);
    CHECK(format_ledger(ledger) == "phase a rounds 3\nphase b rounds 0\n");
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(5) == 3);
    CHECK(floor_log2(9) == 3);
    CHECK_THROWS_AS((ClassParams{0, 1, 1}.validate()), Error);
  }
}
