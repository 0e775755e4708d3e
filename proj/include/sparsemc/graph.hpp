#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sparsemc {

using Vertex = std::int32_t;
inline constexpr int kUnreachable = -1;

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n);

  static Graph from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges);

  [[nodiscard]] int n() const { return static_cast<int>(adj_.size()); }
  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  [[nodiscard]] int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  [[nodiscard]] int max_degree() const;
  [[nodiscard]] bool has_edge(Vertex u, Vertex v) const;
  [[nodiscard]] std::size_t edge_count() const { return m_; }
  // Edges with u < v, lexicographic.
  [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> edges() const;

  friend bool operator==(const Graph &, const Graph &) = default;

private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t m_ = 0;
};

Graph parse_graph(std::string_view text);
Graph load_graph(const std::string &path);
std::string format_graph(const Graph &g);

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent; // local id -> parent id
  std::vector<Vertex> to_local;  // parent id -> local id, -1 if absent
};

// Keeps the listed vertices; local ids follow ascending parent id.
InducedSubgraph induced_subgraph(const Graph &g, std::span<const Vertex> keep);

// Component index per vertex, numbered by smallest member.
std::vector<int> components(const Graph &g);

class RoundLedger;

// BFS from src up to distance cap, using only vertices with allowed[v] (src is always allowed).
// Unreached vertices get kUnreachable.
std::vector<int> bounded_distances(const Graph &g, Vertex src, int cap,
                                   const std::vector<char> *allowed = nullptr,
                                   RoundLedger *ledger = nullptr);

int ceil_log2(std::uint64_t x);
int floor_log2(std::uint64_t x);

} // namespace sparsemc
