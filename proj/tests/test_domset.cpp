#include <doctest.h>

#include <functional>

#include "generators.hpp"
#include "sparsemc/domset.hpp"
#include "sparsemc/error.hpp"

using namespace sparsemc;

namespace {

// Smallest dominating set by plain subset enumeration.
int domset_by_subsets(const Graph &g, int r) {
  const int n = g.n();
  int best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size >= best) {
      continue;
    }
    std::vector<Vertex> set;
    for (int v = 0; v < n; ++v) {
      if (mask >> v & 1u) {
        set.push_back(v);
      }
    }
    if (is_distance_dominating(g, set, r)) {
      best = size;
    }
  }
  return best;
}

} // namespace

TEST_SUITE("domset") {
  TEST_CASE("approx examples") {
    const BconnConfig cfg;
    const auto star = domset_approx(testgen::star(3), 1, {1, 1, 1}, cfg, VertexOrdering::identity(4));
    CHECK(star.dominators == std::vector<Vertex>{0});
    const auto edgeless = domset_approx(Graph(4), 2, {1, 1, 1}, cfg);
    CHECK(edgeless.dominators == std::vector<Vertex>{0, 1, 2, 3});
    const Graph p5 = testgen::path(5);
    const auto res = domset_approx(p5, 2, {1, 1, 1}, cfg);
    CHECK(is_distance_dominating(p5, res.dominators, 2));
    CHECK(domset_exact(p5, 2) == 1);
    CHECK(static_cast<int>(res.dominators.size()) <= res.measured_wcol * 1);
  }

  TEST_CASE("exact examples") {
    CHECK(domset_exact(testgen::star(3), 1) == 1);
    CHECK(domset_exact(Graph(4), 3) == 4);
    CHECK(domset_by_subsets(testgen::cycle(6), 1) == 2);
    CHECK(domset_exact(testgen::cycle(6), 1) == 2);
    CHECK_THROWS_AS(domset_exact(Graph(21), 1), Error);
  }

  TEST_CASE("exact matches enumeration") {
    Rng rng(89);
    for (int t = 0; t < 80; ++t) {
      const Graph g = testgen::random_gnp(rng, testgen::uniform(rng, 1, 12), 0.2);
      const int r = testgen::uniform(rng, 1, 2);
      CHECK(domset_exact(g, r) == domset_by_subsets(g, r));
    }
  }

  TEST_CASE("validity and ratio") {
    Rng rng(97);
    for (int t = 0; t < 60; ++t) {
      const int n = testgen::uniform(rng, 1, 15);
      const Graph g = t % 3 == 0 ? testgen::random_tree(rng, n)
                                 : (t % 3 == 1 ? testgen::path(n) : testgen::grid(1 + n / 4, 3));
      const int r = testgen::uniform(rng, 1, 2);
      const auto res = domset_approx(g, r, {1, 2, 1}, BconnConfig{});
      CHECK(is_distance_dominating(g, res.dominators, r));
      CHECK(res.measured_wcol == wcol_measure(g, res.ordering, 2 * r));
      CHECK(static_cast<int>(res.dominators.size()) <= res.measured_wcol * domset_exact(g, r));
    }
  }
}
