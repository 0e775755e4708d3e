#include "sparsemc/degeneracy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "sparsemc/error.hpp"

namespace sparsemc {

int Coloring::used_colors() const {
  std::vector<int> seen = color;
  std::sort(seen.begin(), seen.end());
  return static_cast<int>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

bool is_proper(const Graph &g, const Coloring &c) {
  if (static_cast<int>(c.color.size()) != g.n()) {
    return false;
  }
  for (Vertex u = 0; u < g.n(); ++u) {
    if (c.color[u] < 0 || c.color[u] >= c.palette_size) {
      return false;
    }
    for (const Vertex v : g.neighbors(u)) {
      if (c.color[u] == c.color[v]) {
        return false;
      }
    }
  }
  return true;
}

std::string format_coloring(const Coloring &c) {
  std::ostringstream out;
  for (std::size_t v = 0; v < c.color.size(); ++v) {
    out << "c " << v << ' ' << c.color[v] << '\n';
  }
  return out.str();
}

DegeneracyOrdering greedy_degeneracy_ordering(const Graph &g) {
  const int n = g.n();
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::set<std::pair<int, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    queue.emplace(deg[v], v);
  }
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> removal;
  removal.reserve(n);
  int degeneracy = 0;
  while (!queue.empty()) {
    const auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    degeneracy = std::max(degeneracy, d);
    removed[v] = 1;
    removal.push_back(v);
    for (const Vertex w : g.neighbors(v)) {
      if (!removed[w]) {
        queue.erase({deg[w], w});
        --deg[w];
        queue.emplace(deg[w], w);
      }
    }
  }
  std::reverse(removal.begin(), removal.end());
  return {VertexOrdering(std::move(removal)), degeneracy};
}

int measure_ordering_degeneracy(const Graph &g, const VertexOrdering &order) {
  require(order.size() == g.n(), "ordering does not cover the graph");
  int best = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    int earlier = 0;
    for (const Vertex w : g.neighbors(v)) {
      earlier += order.before(w, v) ? 1 : 0;
    }
    best = std::max(best, earlier);
  }
  return best;
}

int measure_ordering_degeneracy(const Graph &g, const BlockOrdering &blocks) {
  require(blocks.vertex_count() == g.n(), "block ordering does not cover the graph");
  int best = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    int earlier = 0;
    for (const Vertex w : g.neighbors(v)) {
      earlier += blocks.block_of(w) <= blocks.block_of(v) ? 1 : 0;
    }
    best = std::max(best, earlier);
  }
  return best;
}

BlockResult block_ordering(const Graph &g, int d) {
  require(d >= 0, "block_ordering: negative d");
  const int n = g.n();
  const std::int64_t threshold = 4 * static_cast<std::int64_t>(d);
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
  }
  BlockResult result;
  std::vector<std::vector<Vertex>> peeled;
  int remaining = n;
  while (remaining > 0) {
    std::vector<Vertex> layer;
    for (Vertex v = 0; v < n; ++v) {
      if (alive[v] && deg[v] <= threshold) {
        layer.push_back(v);
      }
    }
    if (layer.empty()) {
      fail(ErrorKind::PromiseViolated,
           "promise violated: no vertex of degree <= " + std::to_string(threshold) + " among " +
               std::to_string(remaining) + " remaining");
    }
    for (const Vertex v : layer) {
      alive[v] = 0;
    }
    for (const Vertex v : layer) {
      for (const Vertex w : g.neighbors(v)) {
        --deg[w];
      }
    }
    remaining -= static_cast<int>(layer.size());
    result.ledger.add("block_ordering", 1);
    peeled.push_back(std::move(layer));
  }
  std::reverse(peeled.begin(), peeled.end());
  result.blocks = BlockOrdering(n, std::move(peeled));
  return result;
}

namespace {

// Proper colouring of g with max_deg+1 colours by halving the id range and merging.
class SplitColorer {
public:
  SplitColorer(const Graph &g, int max_deg)
      : g_(g), k_(max_deg), color_(static_cast<std::size_t>(g.n()), 0),
        next_(static_cast<std::size_t>(g.n()), 0) {}

  struct Stats {
    int depth = 0;
    std::int64_t merge_rounds = 0;
  };

  Stats run() {
    if (g_.n() == 0) {
      return {};
    }
    return solve(0, g_.n());
  }

  [[nodiscard]] const std::vector<int> &colors() const { return color_; }

private:
  Stats solve(Vertex lo, Vertex hi) {
    if (hi - lo == 1) {
      color_[lo] = 0;
      return {};
    }
    const Vertex mid = lo + (hi - lo) / 2;
    const Stats left = solve(lo, mid);
    const Stats right = solve(mid, hi);
    for (Vertex v = mid; v < hi; ++v) {
      color_[v] += k_ + 1;
    }
    std::vector<std::vector<Vertex>> classes(static_cast<std::size_t>(2 * k_ + 2));
    for (Vertex v = lo; v < hi; ++v) {
      classes[color_[v]].push_back(v);
    }
    std::int64_t rounds = 0;
    std::vector<char> taken(static_cast<std::size_t>(k_ + 2), 0);
    for (int cls = 0; cls < static_cast<int>(classes.size()); ++cls) {
      if (classes[cls].empty()) {
        continue;
      }
      ++rounds;
      for (const Vertex v : classes[cls]) {
        std::fill(taken.begin(), taken.end(), 0);
        for (const Vertex w : g_.neighbors(v)) {
          if (w >= lo && w < hi && color_[w] < cls) {
            taken[std::min(next_[w], k_ + 1)] = 1;
          }
        }
        int c = 0;
        while (taken[c]) {
          ++c;
        }
        next_[v] = c;
      }
    }
    for (Vertex v = lo; v < hi; ++v) {
      color_[v] = next_[v];
    }
    return {std::max(left.depth, right.depth) + 1,
            std::max(left.merge_rounds, right.merge_rounds) + rounds};
  }

  const Graph &g_;
  int k_;
  std::vector<int> color_;
  std::vector<int> next_;
};

} // namespace

ColoringResult color_bounded_degree(const Graph &g, int max_degree) {
  require(max_degree >= 0, "negative degree bound");
  if (g.max_degree() > max_degree) {
    fail(ErrorKind::InvalidArgument, "degree exceeds " + std::to_string(max_degree));
  }
  const int n = g.n();
  // Each endpoint numbers its incident edges 1..deg by ascending neighbour id.
  std::map<std::pair<int, int>, std::vector<std::pair<Vertex, Vertex>>> by_pair;
  for (Vertex u = 0; u < n; ++u) {
    const auto nu = g.neighbors(u);
    for (std::size_t i = 0; i < nu.size(); ++i) {
      const Vertex v = nu[i];
      if (v < u) {
        continue;
      }
      const auto nv = g.neighbors(v);
      const int a = static_cast<int>(i) + 1;
      const int b = static_cast<int>(std::lower_bound(nv.begin(), nv.end(), u) - nv.begin()) + 1;
      by_pair[{std::min(a, b), std::max(a, b)}].emplace_back(u, v);
    }
  }
  std::vector<std::vector<std::uint8_t>> tuple(static_cast<std::size_t>(n));
  int depth = 0;
  std::int64_t merge_rounds = 0;
  for (const auto &[key, edges] : by_pair) {
    const Graph sub = Graph::from_edges(n, edges);
    if (sub.max_degree() > 2) {
      fail(ErrorKind::InvalidArgument, "internal: pair subgraph has degree > 2");
    }
    SplitColorer colorer(sub, 2);
    const auto stats = colorer.run();
    depth = std::max(depth, stats.depth);
    merge_rounds = std::max(merge_rounds, stats.merge_rounds);
    for (Vertex v = 0; v < n; ++v) {
      tuple[v].push_back(static_cast<std::uint8_t>(colorer.colors()[v]));
    }
  }
  std::map<std::vector<std::uint8_t>, std::vector<Vertex>> product;
  for (Vertex v = 0; v < n; ++v) {
    product[tuple[v]].push_back(v);
  }
  std::vector<std::vector<Vertex>> classes;
  classes.reserve(product.size());
  for (auto &[key, members] : product) {
    classes.push_back(std::move(members));
  }
  ColoringResult result;
  result.ledger.add("bnddeg_split", depth);
  result.ledger.add("bnddeg_split_merge", merge_rounds);
  if (n == 0) {
    result.coloring.palette_size = max_degree + 1;
    return result;
  }
  auto merged = merge_block_coloring(g, BlockOrdering(n, std::move(classes)), max_degree);
  result.coloring = std::move(merged.coloring);
  result.ledger.append(merged.ledger);
  return result;
}

ColoringResult merge_block_coloring(const Graph &g, const BlockOrdering &blocks, int d) {
  require(d >= 0, "negative degeneracy bound");
  require(blocks.vertex_count() == g.n(), "block ordering does not cover the graph");
  for (Vertex v = 0; v < g.n(); ++v) {
    for (const Vertex w : g.neighbors(v)) {
      if (blocks.block_of(w) == blocks.block_of(v)) {
        fail(ErrorKind::InvalidArgument, "block not independent");
      }
    }
  }
  ColoringResult result;
  auto &color = result.coloring.color;
  color.assign(static_cast<std::size_t>(g.n()), -1);
  int max_color = -1;
  std::vector<char> taken;
  for (int b = 0; b < blocks.size(); ++b) {
    for (const Vertex v : blocks.blocks()[b]) {
      taken.assign(static_cast<std::size_t>(g.degree(v) + 1), 0);
      for (const Vertex w : g.neighbors(v)) {
        if (blocks.block_of(w) < b && color[w] <= g.degree(v)) {
          taken[color[w]] = 1;
        }
      }
      int c = 0;
      while (taken[c]) {
        ++c;
      }
      color[v] = c;
      max_color = std::max(max_color, c);
    }
  }
  result.coloring.palette_size = std::max(d + 1, max_color + 1);
  result.ledger.add("block_merge", blocks.size());
  return result;
}

ColoringResult color_degenerate(const Graph &g, int d) {
  require(d >= 0, "negative degeneracy bound");
  const int n = g.n();
  auto blocks = block_ordering(g, d);
  std::vector<std::pair<Vertex, Vertex>> intra;
  std::vector<std::pair<Vertex, Vertex>> inter;
  for (const auto &e : g.edges()) {
    if (blocks.blocks.block_of(e.first) == blocks.blocks.block_of(e.second)) {
      intra.push_back(e);
    } else {
      inter.push_back(e);
    }
  }
  const int width = 4 * d + 1;
  auto first = color_bounded_degree(Graph::from_edges(n, intra), 4 * d);
  auto second = merge_block_coloring(Graph::from_edges(n, inter), blocks.blocks, 4 * d);
  ColoringResult result;
  result.ledger = std::move(blocks.ledger);
  result.ledger.append(first.ledger);
  result.ledger.append(second.ledger);
  result.coloring.color.resize(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    result.coloring.color[v] = first.coloring.color[v] * width + second.coloring.color[v];
  }
  result.coloring.palette_size = width * width;
  return result;
}

} // namespace sparsemc
