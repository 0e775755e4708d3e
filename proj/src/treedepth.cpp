#include "sparsemc/treedepth.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "sparsemc/error.hpp"
#include "text_util.hpp"

namespace sparsemc {

RootedForest::RootedForest(std::vector<Vertex> parent) : parent_(std::move(parent)) {
  const int n = static_cast<int>(parent_.size());
  depth_.assign(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    require(parent_[v] >= -1 && parent_[v] < n, "forest: parent id out of range");
  }
  std::vector<Vertex> chain;
  for (Vertex v = 0; v < n; ++v) {
    chain.clear();
    Vertex x = v;
    while (x >= 0 && depth_[x] == 0) {
      chain.push_back(x);
      if (static_cast<int>(chain.size()) > n) {
        fail(ErrorKind::InvalidArgument, "forest: parent chain has a cycle");
      }
      x = parent_[x];
    }
    int d = x >= 0 ? depth_[x] : 0;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      depth_[*it] = ++d;
    }
    max_depth_ = std::max(max_depth_, depth_[v]);
  }
}

bool RootedForest::is_ancestor(Vertex a, Vertex v) const {
  if (depth_[a] > depth_[v]) {
    return false;
  }
  return ancestor_at(v, depth_[a]) == a;
}

Vertex RootedForest::ancestor_at(Vertex v, int i) const {
  require(i >= 1 && i <= depth_[v], "ancestor_at: depth out of range");
  while (depth_[v] > i) {
    v = parent_[v];
  }
  return v;
}

int RootedForest::common_ancestors(Vertex u, Vertex w) const {
  while (depth_[u] > depth_[w]) {
    u = parent_[u];
  }
  while (depth_[w] > depth_[u]) {
    w = parent_[w];
  }
  while (u != w) {
    u = parent_[u];
    w = parent_[w];
    if (u < 0) {
      return 0;
    }
  }
  return depth_[u];
}

std::string format_forest(const RootedForest &f) {
  std::ostringstream out;
  for (Vertex v = 0; v < f.n(); ++v) {
    out << "node " << v << " parent ";
    if (f.parent(v) < 0) {
      out << "none";
    } else {
      out << f.parent(v);
    }
    out << '\n';
  }
  return out.str();
}

RootedForest parse_forest(std::string_view text) {
  LineReader reader(text);
  std::vector<std::string_view> tok;
  std::vector<std::pair<int, int>> entries;
  while (reader.next(tok)) {
    const int line = reader.line_number();
    if (tok.size() != 4 || tok[0] != "node" || tok[2] != "parent") {
      parse_fail(line, "expected 'node <v> parent <u|none>'");
    }
    const int v = parse_int(tok[1], line);
    const int p = tok[3] == "none" ? -1 : parse_int(tok[3], line);
    entries.emplace_back(v, p);
  }
  const int n = static_cast<int>(entries.size());
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -2);
  for (const auto &[v, p] : entries) {
    if (v < 0 || v >= n || parent[v] != -2) {
      fail(ErrorKind::Parse, "forest: node ids must be 0..n-1, each listed once");
    }
    if (p < -1 || p >= n) {
      fail(ErrorKind::Parse, "forest: parent id out of range");
    }
    parent[v] = p;
  }
  return RootedForest(std::move(parent));
}

int trivial_depth_bound(int n) {
  int h = 0;
  while ((std::int64_t{1} << h) <= n) {
    ++h;
  }
  return std::max(h, 1);
}

namespace {

// Capped BFS from src over allowed vertices; returns true if a smaller-id vertex with
// marked[v] is reached.
class CappedSearch {
public:
  explicit CappedSearch(const Graph &g) : g_(g), stamp_(static_cast<std::size_t>(g.n()), -1) {}

  bool reaches_smaller(Vertex src, int cap, const std::vector<char> &allowed,
                       const std::vector<char> &marked) {
    ++epoch_;
    stamp_[src] = epoch_;
    frontier_.assign(1, src);
    for (int level = 1; level <= cap && !frontier_.empty(); ++level) {
      next_.clear();
      for (const Vertex x : frontier_) {
        for (const Vertex y : g_.neighbors(x)) {
          if (stamp_[y] == epoch_ || !allowed[y]) {
            continue;
          }
          if (marked[y] && y < src) {
            return true;
          }
          stamp_[y] = epoch_;
          next_.push_back(y);
        }
      }
      frontier_.swap(next_);
    }
    return false;
  }

private:
  const Graph &g_;
  std::vector<int> stamp_;
  int epoch_ = 0;
  std::vector<Vertex> frontier_;
  std::vector<Vertex> next_;
};

} // namespace

ForestResult dfs_forest(const Graph &g, int h) {
  require(h >= 0 && h <= 30, "dfs_forest: h must be in [0, 30]");
  const int n = g.n();
  const std::int64_t limit = std::int64_t{1} << h;
  const int cap = static_cast<int>(std::min<std::int64_t>(limit, std::max(n, 1)));
  ForestResult result;
  if (n == 0) {
    return result;
  }
  if (limit <= 1) {
    fail(ErrorKind::PromiseViolated, "promise violated: treedepth 0 requires an empty graph");
  }
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  std::vector<char> everyone(static_cast<std::size_t>(n), 1);
  CappedSearch search(g);

  std::vector<Vertex> level;
  for (Vertex u = 0; u < n; ++u) {
    if (!search.reaches_smaller(u, cap, everyone, everyone)) {
      level.push_back(u);
    }
  }
  for (const Vertex u : level) {
    placed[u] = 1;
  }
  int placed_count = static_cast<int>(level.size());
  int depth = 1;
  std::vector<char> in_level(static_cast<std::size_t>(n), 0);
  std::vector<char> in_m(static_cast<std::size_t>(n), 0);
  std::vector<char> free_vertex(static_cast<std::size_t>(n), 0);
  while (placed_count < n) {
    if (depth + 1 >= limit) {
      fail(ErrorKind::PromiseViolated, "promise violated: DFS depth reaches 2^" + std::to_string(h) +
                                           " with vertices unplaced");
    }
    for (const Vertex x : level) {
      in_level[x] = 1;
    }
    std::vector<Vertex> frontier;
    std::vector<Vertex> attach(static_cast<std::size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v) {
      free_vertex[v] = placed[v] ? 0 : 1;
      if (placed[v]) {
        continue;
      }
      for (const Vertex w : g.neighbors(v)) {
        if (in_level[w]) {
          attach[v] = w; // neighbours are sorted, so this is the smallest
          break;
        }
      }
      if (attach[v] >= 0) {
        frontier.push_back(v);
        in_m[v] = 1;
      }
    }
    for (const Vertex x : level) {
      in_level[x] = 0;
    }
    if (frontier.empty()) {
      fail(ErrorKind::PromiseViolated, "promise violated: DFS round stalled");
    }
    std::vector<Vertex> chosen;
    for (const Vertex v : frontier) {
      if (!search.reaches_smaller(v, cap, free_vertex, in_m)) {
        chosen.push_back(v);
      }
    }
    for (const Vertex v : frontier) {
      in_m[v] = 0;
    }
    for (const Vertex v : chosen) {
      parent[v] = attach[v];
      placed[v] = 1;
    }
    placed_count += static_cast<int>(chosen.size());
    level = std::move(chosen);
    ++depth;
    result.ledger.add("dfs_forest", 1);
  }
  result.forest = RootedForest(std::move(parent));
  // Capped connectivity can only mislead when the promise fails; reject such outputs.
  if (!check_separation_forest(g, result.forest)) {
    fail(ErrorKind::PromiseViolated, "promise violated: capped connectivity produced a non-DFS forest");
  }
  return result;
}

AncestorMatrix::AncestorMatrix(int n)
    : rows_(static_cast<std::size_t>(n), std::vector<std::uint64_t>((static_cast<std::size_t>(n) + 63) / 64, 0)) {}

AncestorMatrix ancestor_closure(const RootedForest &f, int max_depth, RoundLedger *ledger) {
  require(max_depth >= 1, "ancestor_closure: max depth must be >= 1");
  if (f.depth() > max_depth) {
    fail(ErrorKind::InvalidArgument, "ancestor_closure: forest depth exceeds bound");
  }
  const int n = f.n();
  AncestorMatrix m(n);
  for (Vertex v = 0; v < n; ++v) {
    m.set(v, v);
    if (f.parent(v) >= 0) {
      m.set(f.parent(v), v);
    }
  }
  const int rounds = ceil_log2(static_cast<std::uint64_t>(max_depth));
  for (int step = 0; step < rounds; ++step) {
    AncestorMatrix next = m;
    for (Vertex v = 0; v < n; ++v) {
      const auto &row = m.row(v);
      for (std::size_t w = 0; w < row.size(); ++w) {
        for (std::uint64_t bits = row[w]; bits != 0; bits &= bits - 1) {
          const int a = static_cast<int>(w * 64) + __builtin_ctzll(bits);
          const auto &up = m.row(a);
          auto &dst = next.row(v);
          for (std::size_t i = 0; i < up.size(); ++i) {
            dst[i] |= up[i];
          }
        }
      }
    }
    m = std::move(next);
  }
  if (ledger != nullptr) {
    ledger->add("ancestor_closure", rounds);
  }
  return m;
}

int treedepth_radius(int p, int n) {
  require(p >= 1, "p must be >= 1");
  const int ceiling = std::max(n, 1);
  if (p - 1 >= 30) {
    return ceiling;
  }
  return std::min(1 << (p - 1), ceiling);
}

LowTreedepthColoring low_treedepth_coloring(const Graph &g, const ClassParams &params,
                                            const BconnConfig &cfg) {
  params.validate();
  LowTreedepthColoring result;
  result.radius = treedepth_radius(params.p, g.n());
  auto ordering = wcol_ordering(g, {result.radius, params.d, params.p}, cfg);
  const Graph reach = weak_reachability_graph(g, ordering.ordering, result.radius);
  result.measured_wcol = ordering.measured;
  auto colored = color_degenerate(reach, std::max(ordering.measured - 1, 0));
  result.coloring = std::move(colored.coloring);
  result.ordering = std::move(ordering.ordering);
  result.ledger = std::move(ordering.ledger);
  result.ledger.append(colored.ledger);
  return result;
}

namespace {

int treedepth_of_mask(const Graph &g, std::uint32_t mask, std::unordered_map<std::uint32_t, int> &memo) {
  if (mask == 0) {
    return 0;
  }
  if (const auto it = memo.find(mask); it != memo.end()) {
    return it->second;
  }
  // Split into components first.
  const int start = __builtin_ctz(mask);
  std::uint32_t comp = 1u << start;
  std::uint32_t frontier = comp;
  while (frontier != 0) {
    const int v = __builtin_ctz(frontier);
    frontier &= frontier - 1;
    for (const Vertex w : g.neighbors(v)) {
      const std::uint32_t bit = 1u << w;
      if ((mask & bit) && !(comp & bit)) {
        comp |= bit;
        frontier |= bit;
      }
    }
  }
  int best = 0;
  if (comp != mask) {
    best = std::max(treedepth_of_mask(g, comp, memo), treedepth_of_mask(g, mask & ~comp, memo));
  } else {
    best = 64;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      const int v = __builtin_ctz(rest);
      best = std::min(best, 1 + treedepth_of_mask(g, mask & ~(1u << v), memo));
    }
  }
  memo.emplace(mask, best);
  return best;
}

} // namespace

int treedepth_exact(const Graph &g) {
  if (g.n() > kExactTreedepthLimit) {
    fail(ErrorKind::GuardExceeded, "too large for exact oracle: n = " + std::to_string(g.n()));
  }
  std::unordered_map<std::uint32_t, int> memo;
  return treedepth_of_mask(g, g.n() == 0 ? 0u : (1u << g.n()) - 1, memo);
}

bool check_separation_forest(const Graph &g, const RootedForest &f) {
  require(f.n() == g.n(), "separation forest is not over V(G)");
  for (const auto &[u, v] : g.edges()) {
    if (!f.is_ancestor(u, v) && !f.is_ancestor(v, u)) {
      return false;
    }
  }
  return true;
}

} // namespace sparsemc
