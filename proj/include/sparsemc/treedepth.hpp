#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sparsemc/degeneracy.hpp"
#include "sparsemc/graph.hpp"
#include "sparsemc/ordering.hpp"
#include "sparsemc/wcol.hpp"

namespace sparsemc {

// Parent pointers (-1 for roots); roots have depth 1.
class RootedForest {
public:
  RootedForest() = default;
  explicit RootedForest(std::vector<Vertex> parent);

  [[nodiscard]] int n() const { return static_cast<int>(parent_.size()); }
  [[nodiscard]] Vertex parent(Vertex v) const { return parent_[v]; }
  [[nodiscard]] const std::vector<Vertex> &parents() const { return parent_; }
  [[nodiscard]] int depth_of(Vertex v) const { return depth_[v]; }
  [[nodiscard]] int depth() const { return max_depth_; }
  // Reflexive.
  [[nodiscard]] bool is_ancestor(Vertex a, Vertex v) const;
  // Ancestor of v at depth i (1 <= i <= depth_of(v)).
  [[nodiscard]] Vertex ancestor_at(Vertex v, int i) const;
  // Number of common ancestors of u and w.
  [[nodiscard]] int common_ancestors(Vertex u, Vertex w) const;

  friend bool operator==(const RootedForest &a, const RootedForest &b) { return a.parent_ == b.parent_; }

private:
  std::vector<Vertex> parent_;
  std::vector<int> depth_;
  int max_depth_ = 0;
};

std::string format_forest(const RootedForest &f);
RootedForest parse_forest(std::string_view text);

struct ForestResult {
  RootedForest forest;
  RoundLedger ledger;
};

// Level-by-level DFS forest; roots are the smallest ids of components, each level attaches the
// smallest id of every component of the remainder below its smallest neighbour in the last level.
ForestResult dfs_forest(const Graph &g, int h);

// Smallest h with 2^h > n, so that any DFS forest satisfies the depth bound.
int trivial_depth_bound(int n);

class AncestorMatrix {
public:
  explicit AncestorMatrix(int n);

  [[nodiscard]] bool is_ancestor(Vertex a, Vertex v) const { return rows_[v][a / 64] >> (a % 64) & 1u; }
  void set(Vertex a, Vertex v) { rows_[v][a / 64] |= std::uint64_t{1} << (a % 64); }
  [[nodiscard]] std::vector<std::uint64_t> &row(Vertex v) { return rows_[v]; }
  [[nodiscard]] const std::vector<std::uint64_t> &row(Vertex v) const { return rows_[v]; }
  [[nodiscard]] int n() const { return static_cast<int>(rows_.size()); }

private:
  std::vector<std::vector<std::uint64_t>> rows_;
};

// Reflexive-transitive closure of the parent relation by repeated squaring.
AncestorMatrix ancestor_closure(const RootedForest &f, int max_depth, RoundLedger *ledger = nullptr);

struct LowTreedepthColoring {
  Coloring coloring;
  int radius = 1;
  int measured_wcol = 0;
  VertexOrdering ordering;
  RoundLedger ledger;
};

// Proper colouring of the weak 2^(p-1)-reachability graph; unions of i <= p classes have
// treedepth <= i.
LowTreedepthColoring low_treedepth_coloring(const Graph &g, const ClassParams &params,
                                            const BconnConfig &cfg);

int treedepth_radius(int p, int n);

inline constexpr int kExactTreedepthLimit = 12;
int treedepth_exact(const Graph &g);

bool check_separation_forest(const Graph &g, const RootedForest &f);

} // namespace sparsemc
