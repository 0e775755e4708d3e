#include "sparsemc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

#include "sparsemc/error.hpp"
#include "sparsemc/ordering.hpp"
#include "text_util.hpp"

namespace sparsemc {

Graph::Graph(int n) : adj_(static_cast<std::size_t>(n)) { require(n >= 0, "negative vertex count"); }

Graph Graph::from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges) {
  Graph g(n);
  for (const auto &[u, v] : edges) {
    require(u >= 0 && u < n && v >= 0 && v < n, "edge endpoint out of range");
    require(u != v, "self-loop");
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  std::size_t twice = 0;
  for (auto &list : g.adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    twice += list.size();
  }
  g.m_ = twice / 2;
  return g;
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto &list : adj_) {
    best = std::max(best, static_cast<int>(list.size()));
  }
  return best;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto &list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(m_);
  for (Vertex u = 0; u < n(); ++u) {
    for (const Vertex v : adj_[u]) {
      if (u < v) {
        out.emplace_back(u, v);
      }
    }
  }
  return out;
}

Graph parse_graph(std::string_view text) {
  LineReader reader(text);
  int n = -1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::string_view> tok;
  while (reader.next(tok)) {
    const int line = reader.line_number();
    if (n < 0) {
      if (tok.size() != 2 || tok[0] != "graph") {
        parse_fail(line, "expected header 'graph <n>'");
      }
      n = parse_int(tok[1], line);
      if (n < 0) {
        parse_fail(line, "negative vertex count");
      }
      continue;
    }
    if (tok.size() != 3 || tok[0] != "e") {
      parse_fail(line, "expected 'e <u> <v>'");
    }
    const int u = parse_int(tok[1], line);
    const int v = parse_int(tok[2], line);
    if (u < 0 || u >= n || v < 0 || v >= n) {
      parse_fail(line, "vertex id out of range");
    }
    if (u == v) {
      parse_fail(line, "self-loop");
    }
    edges.emplace_back(u, v);
  }
  if (n < 0) {
    parse_fail(reader.line_number(), "missing header 'graph <n>'");
  }
  return Graph::from_edges(n, edges);
}

Graph load_graph(const std::string &path) { return parse_graph(read_file(path)); }

std::string format_graph(const Graph &g) {
  std::ostringstream out;
  out << "graph " << g.n() << '\n';
  for (const auto &[u, v] : g.edges()) {
    out << "e " << u << ' ' << v << '\n';
  }
  return out.str();
}

InducedSubgraph induced_subgraph(const Graph &g, std::span<const Vertex> keep) {
  InducedSubgraph result;
  result.to_local.assign(static_cast<std::size_t>(g.n()), -1);
  std::vector<Vertex> kept(keep.begin(), keep.end());
  for (const Vertex v : kept) {
    require(v >= 0 && v < g.n(), "induced_subgraph: id out of range");
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    result.to_local[kept[i]] = static_cast<Vertex>(i);
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const Vertex u : kept) {
    for (const Vertex v : g.neighbors(u)) {
      if (u < v && result.to_local[v] >= 0) {
        edges.emplace_back(result.to_local[u], result.to_local[v]);
      }
    }
  }
  result.graph = Graph::from_edges(static_cast<int>(kept.size()), edges);
  result.to_parent = std::move(kept);
  return result;
}

std::vector<int> components(const Graph &g) {
  std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
  int next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) {
      continue;
    }
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (const Vertex v : g.neighbors(u)) {
        if (comp[v] < 0) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

std::vector<int> bounded_distances(const Graph &g, Vertex src, int cap,
                                   const std::vector<char> *allowed, RoundLedger *ledger) {
  require(src >= 0 && src < g.n(), "bounded_distances: source out of range");
  require(cap >= 0, "bounded_distances: negative cap");
  std::vector<int> dist(static_cast<std::size_t>(g.n()), kUnreachable);
  dist[src] = 0;
  std::vector<Vertex> frontier{src};
  std::vector<Vertex> next;
  for (int level = 1; level <= cap && !frontier.empty(); ++level) {
    next.clear();
    for (const Vertex u : frontier) {
      for (const Vertex v : g.neighbors(u)) {
        if (dist[v] == kUnreachable && (allowed == nullptr || (*allowed)[v])) {
          dist[v] = level;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  if (ledger != nullptr) {
    ledger->add("distances", ceil_log2(static_cast<std::uint64_t>(cap) + 1));
  }
  return dist;
}

int ceil_log2(std::uint64_t x) {
  int k = 0;
  while (k < 64 && (std::uint64_t{1} << k) < x) {
    ++k;
  }
  return k;
}

int floor_log2(std::uint64_t x) {
  require(x >= 1, "floor_log2 of zero");
  int k = 0;
  while (x > 1) {
    x >>= 1;
    ++k;
  }
  return k;
}

} // namespace sparsemc
