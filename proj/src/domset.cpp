#include "sparsemc/domset.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

#include "sparsemc/error.hpp"

namespace sparsemc {

DomsetResult domset_approx(const Graph &g, int r, const ClassParams &params, const BconnConfig &cfg,
                           const std::optional<VertexOrdering> &ordering) {
  require(r >= 1, "domset: r must be >= 1");
  DomsetResult result;
  if (ordering) {
    require(ordering->size() == g.n(), "domset: ordering does not cover the graph");
    result.ordering = *ordering;
  } else {
    auto wo = wcol_ordering(g, {2 * r, params.d, params.p}, cfg);
    result.ordering = std::move(wo.ordering);
    result.ledger = std::move(wo.ledger);
  }
  const auto reach = wreach_all(g, result.ordering, r);
  std::vector<char> chosen(static_cast<std::size_t>(g.n()), 0);
  for (Vertex u = 0; u < g.n(); ++u) {
    const auto best = std::min_element(reach[u].begin(), reach[u].end(), [&](Vertex a, Vertex b) {
      return result.ordering.before(a, b);
    });
    chosen[*best] = 1;
  }
  for (Vertex v = 0; v < g.n(); ++v) {
    if (chosen[v]) {
      result.dominators.push_back(v);
    }
  }
  result.measured_wcol = wcol_measure(g, result.ordering, 2 * r);
  result.ledger.add("domset_elect", ceil_log2(static_cast<std::uint64_t>(r) + 1));
  return result;
}

int domset_exact(const Graph &g, int r) {
  require(r >= 0, "domset: negative radius");
  const int n = g.n();
  if (n > kExactDomsetLimit) {
    fail(ErrorKind::GuardExceeded, "too large for exact oracle: n = " + std::to_string(n));
  }
  if (n == 0) {
    return 0;
  }
  std::vector<std::uint32_t> ball(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    const auto dist = bounded_distances(g, v, r);
    for (Vertex w = 0; w < n; ++w) {
      if (dist[w] != kUnreachable) {
        ball[v] |= 1u << w;
      }
    }
  }
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  // Depth-limited search: cover the lowest uncovered vertex by some vertex of its ball.
  std::function<bool(std::uint32_t, int)> cover = [&](std::uint32_t covered, int budget) {
    if (covered == full) {
      return true;
    }
    if (budget == 0) {
      return false;
    }
    const int v = __builtin_ctz(~covered & full);
    for (std::uint32_t cand = ball[v]; cand != 0; cand &= cand - 1) {
      const int w = __builtin_ctz(cand);
      if (cover(covered | ball[w], budget - 1)) {
        return true;
      }
    }
    return false;
  };
  for (int k = 1; k <= n; ++k) {
    if (cover(0, k)) {
      return k;
    }
  }
  return n;
}

bool is_distance_dominating(const Graph &g, const std::vector<Vertex> &set, int r) {
  std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
  std::vector<Vertex> frontier;
  for (const Vertex v : set) {
    if (v < 0 || v >= g.n()) {
      return false;
    }
    if (dist[v] < 0) {
      dist[v] = 0;
      frontier.push_back(v);
    }
  }
  std::vector<Vertex> next;
  for (int level = 1; level <= r && !frontier.empty(); ++level) {
    next.clear();
    for (const Vertex x : frontier) {
      for (const Vertex y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = level;
          next.push_back(y);
        }
      }
    }
    frontier.swap(next);
  }
  return std::all_of(dist.begin(), dist.end(), [](int d) { return d >= 0; });
}

} // namespace sparsemc
