#include "sparsemc/wcol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sparsemc/error.hpp"
#include "sparsemc/random.hpp"

namespace sparsemc {

void BconnConfig::validate() const {
  require(mode == BconnMode::Exact || trials >= 0, "trials must be >= 1 in monte-carlo mode");
  require(exact_cutoff >= 0, "negative exact cutoff");
  require(max_paths >= 1, "max_paths must be positive");
}

namespace {

// Local ids for the vertices reachable from u by paths of length <= r whose interior avoids S.
struct Ball {
  std::vector<Vertex> vertices;
  std::vector<int> local; // global -> local or -1
};

Ball reachable_ball(const Graph &g, const std::vector<char> &in_s, Vertex u, int r) {
  Ball ball;
  ball.local.assign(static_cast<std::size_t>(g.n()), -1);
  ball.local[u] = 0;
  ball.vertices.push_back(u);
  std::vector<Vertex> frontier{u};
  std::vector<Vertex> next;
  for (int level = 1; level <= r && !frontier.empty(); ++level) {
    next.clear();
    for (const Vertex x : frontier) {
      if (x != u && in_s[x]) {
        continue;
      }
      for (const Vertex y : g.neighbors(x)) {
        if (ball.local[y] < 0) {
          ball.local[y] = static_cast<int>(ball.vertices.size());
          ball.vertices.push_back(y);
          next.push_back(y);
        }
      }
    }
    frontier.swap(next);
  }
  return ball;
}

class PathPacker {
public:
  PathPacker(const Graph &g, const std::vector<char> &in_s, Vertex u, int r,
             std::int64_t max_paths)
      : g_(g), in_s_(in_s), u_(u), r_(r), max_paths_(max_paths) {
    ball_ = reachable_ball(g, in_s, u, r);
    words_ = (ball_.vertices.size() + 63) / 64;
    on_path_.assign(ball_.vertices.size(), 0);
    for (const Vertex a : g.neighbors(u)) {
      groups_.emplace_back();
      path_.assign(1, a);
      on_path_[ball_.local[a]] = 1;
      if (in_s_[a]) {
        record();
      } else if (r_ > 1) {
        extend(a, 1);
      }
      on_path_[ball_.local[a]] = 0;
    }
    prune_dominated();
    std::erase_if(groups_, [](const auto &grp) { return grp.empty(); });
    std::stable_sort(groups_.begin(), groups_.end(),
                     [](const auto &a, const auto &b) { return a.size() < b.size(); });
    used_.assign(words_, 0);
  }

  // Largest packing size, or the first packing of size >= target when target > 0.
  int solve(int target, PathFamily *witness) {
    target_ = target;
    best_ = 0;
    chosen_.clear();
    best_family_.clear();
    rec(0, 0);
    if (witness != nullptr) {
      witness->clear();
      for (const auto *p : best_family_) {
        std::vector<Vertex> full{u_};
        for (const int loc : p->order) {
          full.push_back(ball_.vertices[loc]);
        }
        witness->push_back(std::move(full));
      }
    }
    return best_;
  }

private:
  struct Path {
    std::vector<int> order;          // local ids after u
    std::vector<std::uint64_t> bits; // same set as a bitset
  };

  void record() {
    if (++count_ > max_paths_) {
      fail(ErrorKind::GuardExceeded, "exact oracle overflow: more than " +
                                         std::to_string(max_paths_) + " candidate paths");
    }
    Path p;
    p.bits.assign(words_, 0);
    for (const Vertex v : path_) {
      const int loc = ball_.local[v];
      p.order.push_back(loc);
      p.bits[loc / 64] |= std::uint64_t{1} << (loc % 64);
    }
    groups_.back().push_back(std::move(p));
  }

  void extend(Vertex tail, int length) {
    for (const Vertex w : g_.neighbors(tail)) {
      const int loc = ball_.local[w];
      if (w == u_ || loc < 0 || on_path_[loc]) {
        continue;
      }
      on_path_[loc] = 1;
      path_.push_back(w);
      if (in_s_[w]) {
        record();
      } else if (length + 1 < r_) {
        extend(w, length + 1);
      }
      path_.pop_back();
      on_path_[loc] = 0;
    }
  }

  static bool subset(const Path &a, const Path &b) {
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
      if ((a.bits[i] & ~b.bits[i]) != 0) {
        return false;
      }
    }
    return true;
  }

  // A path whose vertex set contains another candidate's set can be swapped out for it.
  void prune_dominated() {
    std::vector<Path *> all;
    for (auto &grp : groups_) {
      for (auto &p : grp) {
        all.push_back(&p);
      }
    }
    if (all.size() > 4000) {
      return;
    }
    std::vector<char> drop(all.size(), 0);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size() && !drop[i]; ++j) {
        if (i == j || drop[j] || !subset(*all[j], *all[i])) {
          continue;
        }
        if (!subset(*all[i], *all[j]) || j < i) {
          drop[i] = 1;
        }
      }
    }
    std::size_t idx = 0;
    for (auto &grp : groups_) {
      std::vector<Path> kept;
      for (auto &p : grp) {
        if (!drop[idx++]) {
          kept.push_back(std::move(p));
        }
      }
      std::stable_sort(kept.begin(), kept.end(),
                       [](const Path &a, const Path &b) { return a.order.size() < b.order.size(); });
      grp = std::move(kept);
    }
  }

  bool disjoint(const Path &p) const {
    for (std::size_t i = 0; i < words_; ++i) {
      if ((p.bits[i] & used_[i]) != 0) {
        return false;
      }
    }
    return true;
  }

  // Returns true once the target is reached.
  bool rec(std::size_t gi, int count) {
    if (count > best_) {
      best_ = count;
      best_family_ = chosen_;
      if (target_ > 0 && best_ >= target_) {
        return true;
      }
    }
    if (gi == groups_.size()) {
      return false;
    }
    const int remaining = static_cast<int>(groups_.size() - gi);
    if (count + remaining <= best_ || (target_ > 0 && count + remaining < target_)) {
      return false;
    }
    for (const Path &p : groups_[gi]) {
      if (!disjoint(p)) {
        continue;
      }
      for (std::size_t i = 0; i < words_; ++i) {
        used_[i] |= p.bits[i];
      }
      chosen_.push_back(&p);
      const bool done = rec(gi + 1, count + 1);
      chosen_.pop_back();
      for (std::size_t i = 0; i < words_; ++i) {
        used_[i] &= ~p.bits[i];
      }
      if (done) {
        return true;
      }
    }
    return rec(gi + 1, count);
  }

  const Graph &g_;
  const std::vector<char> &in_s_;
  Vertex u_;
  int r_;
  std::int64_t max_paths_;
  std::int64_t count_ = 0;
  Ball ball_;
  std::size_t words_ = 0;
  std::vector<char> on_path_;
  std::vector<Vertex> path_;
  std::vector<std::vector<Path>> groups_;
  std::vector<std::uint64_t> used_;
  std::vector<const Path *> chosen_;
  std::vector<const Path *> best_family_;
  int target_ = 0;
  int best_ = 0;
};

void check_query(const Graph &g, const std::vector<char> &in_s, Vertex u, int r) {
  require(static_cast<int>(in_s.size()) == g.n(), "bconn: set size mismatch");
  require(u >= 0 && u < g.n(), "bconn: vertex out of range");
  require(in_s[u], "bconn: u must belong to S");
  require(r >= 1, "bconn: r must be >= 1");
}

} // namespace

int bconn_exact(const Graph &g, const std::vector<char> &in_s, Vertex u, int r,
                std::int64_t max_paths) {
  check_query(g, in_s, u, r);
  PathPacker packer(g, in_s, u, r, max_paths);
  return packer.solve(0, nullptr);
}

std::int64_t default_trials(int k, int r) {
  const double log_trials = static_cast<double>(r) * k * std::log(static_cast<double>(k)) +
                            std::log(std::log(100.0));
  if (log_trials >= std::log(1e6)) {
    return 1000000;
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::exp(log_trials) - 1e-9)));
}

bool bconn_at_least(const Graph &g, const std::vector<char> &in_s, Vertex u, int r, int k,
                    const BconnConfig &cfg, StreamKey stream, PathFamily *witness) {
  check_query(g, in_s, u, r);
  if (witness != nullptr) {
    witness->clear();
  }
  if (k <= 0) {
    return true;
  }
  // Each path leaves u through its own neighbour and ends in its own vertex of S.
  if (g.degree(u) < k) {
    return false;
  }
  const Ball ball = reachable_ball(g, in_s, u, r);
  int targets = 0;
  for (const Vertex v : ball.vertices) {
    targets += (v != u && in_s[v]) ? 1 : 0;
  }
  if (targets < k) {
    return false;
  }
  if (cfg.mode == BconnMode::Exact || static_cast<int>(ball.vertices.size()) <= cfg.exact_cutoff) {
    PathPacker packer(g, in_s, u, r, cfg.max_paths);
    return packer.solve(k, witness) >= k;
  }
  // Colour coding: k colours per trial, one short path per colour class.
  const std::int64_t trials = cfg.trials > 0 ? cfg.trials : default_trials(k, r);
  Rng rng = make_stream(cfg.seed, "bconn", stream.round, stream.item);
  const std::size_t size = ball.vertices.size();
  std::vector<int> colour(size, 0);
  std::vector<int> parent(size, -1);
  std::vector<int> dist(size, -1);
  std::vector<int> frontier;
  std::vector<int> next;
  PathFamily found;
  for (std::int64_t t = 0; t < trials; ++t) {
    for (std::size_t i = 1; i < size; ++i) {
      colour[i] = static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(k)));
    }
    found.clear();
    for (int c = 0; c < k; ++c) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[0] = 0;
      frontier.assign(1, 0);
      int hit = -1;
      for (int level = 1; level <= r && hit < 0 && !frontier.empty(); ++level) {
        next.clear();
        for (const int x : frontier) {
          if (x != 0 && in_s[ball.vertices[x]]) {
            continue;
          }
          for (const Vertex y : g.neighbors(ball.vertices[x])) {
            const int ly = ball.local[y];
            if (ly <= 0 || dist[ly] >= 0 || colour[ly] != c) {
              continue;
            }
            dist[ly] = level;
            parent[ly] = x;
            next.push_back(ly);
            if (in_s[y] && hit < 0) {
              hit = ly;
            }
          }
        }
        frontier.swap(next);
      }
      if (hit < 0) {
        break;
      }
      std::vector<Vertex> path;
      for (int x = hit; x != 0; x = parent[x]) {
        path.push_back(ball.vertices[x]);
      }
      path.push_back(u);
      std::reverse(path.begin(), path.end());
      found.push_back(std::move(path));
    }
    if (static_cast<int>(found.size()) == k && verify_bconn_witness(g, in_s, u, r, found)) {
      if (witness != nullptr) {
        *witness = std::move(found);
      }
      return true;
    }
  }
  return false;
}

bool verify_bconn_witness(const Graph &g, const std::vector<char> &in_s, Vertex u, int r,
                          const PathFamily &paths) {
  std::vector<char> used(static_cast<std::size_t>(g.n()), 0);
  for (const auto &p : paths) {
    if (p.size() < 2 || p.front() != u || static_cast<int>(p.size()) - 1 > r) {
      return false;
    }
    for (std::size_t i = 1; i < p.size(); ++i) {
      const Vertex v = p[i];
      if (v < 0 || v >= g.n() || v == u || used[v] || !g.has_edge(p[i - 1], v)) {
        return false;
      }
      const bool last = i + 1 == p.size();
      if (static_cast<bool>(in_s[v]) != last) {
        return false;
      }
      used[v] = 1;
    }
  }
  return true;
}

BlockResult adm_block_ordering(const Graph &g, const ClassParams &params, const BconnConfig &cfg) {
  params.validate();
  cfg.validate();
  if (params.r == 1) {
    return block_ordering(g, 2 * params.d);
  }
  const std::int64_t r = params.r;
  const std::int64_t d = params.d;
  const double approx = 6.0 * r * r * static_cast<double>(d) * d * d;
  // Anything above n - 1 behaves identically, since bconn < n.
  const std::int64_t threshold =
      approx > 4e18 ? std::numeric_limits<std::int64_t>::max() / 2 : 6 * r * r * d * d * d;
  const int k = static_cast<int>(std::min<std::int64_t>(threshold + 1, g.n() + 1));
  const int n = g.n();
  std::vector<char> in_s(static_cast<std::size_t>(n), 1);
  int remaining = n;
  BlockResult result;
  std::vector<std::vector<Vertex>> extracted;
  for (std::uint64_t round = 0; remaining > 0; ++round) {
    std::vector<Vertex> layer;
    for (Vertex v = 0; v < n; ++v) {
      if (in_s[v] && !bconn_at_least(g, in_s, v, params.r, k, cfg, {round, static_cast<std::uint64_t>(v)})) {
        layer.push_back(v);
      }
    }
    if (layer.empty()) {
      fail(ErrorKind::PromiseViolated,
           "promise violated: every remaining vertex has bconn_" + std::to_string(params.r) +
               " > " + std::to_string(threshold));
    }
    for (const Vertex v : layer) {
      in_s[v] = 0;
    }
    remaining -= static_cast<int>(layer.size());
    result.ledger.add("adm_block_ordering", 1);
    extracted.push_back(std::move(layer));
  }
  std::reverse(extracted.begin(), extracted.end());
  result.blocks = BlockOrdering(n, std::move(extracted));
  return result;
}

int measure_admissibility(const Graph &g, const BlockOrdering &blocks, int r) {
  std::vector<char> in_s(static_cast<std::size_t>(g.n()), 0);
  int best = 0;
  for (const auto &block : blocks.blocks()) {
    for (const Vertex v : block) {
      in_s[v] = 1;
    }
    for (const Vertex v : block) {
      best = std::max(best, bconn_exact(g, in_s, v, r));
    }
  }
  return best;
}

std::vector<Vertex> wreach_set(const Graph &g, const VertexOrdering &sigma, Vertex v, int r) {
  require(r >= 0, "wreach: negative radius");
  require(sigma.size() == g.n(), "wreach: ordering does not cover the graph");
  std::vector<Vertex> out;
  std::vector<char> allowed(static_cast<std::size_t>(g.n()), 0);
  for (Vertex u = 0; u < g.n(); ++u) {
    if (sigma.position(u) > sigma.position(v)) {
      continue;
    }
    for (Vertex w = 0; w < g.n(); ++w) {
      allowed[w] = sigma.position(w) >= sigma.position(u) ? 1 : 0;
    }
    if (bounded_distances(g, v, r, &allowed)[u] != kUnreachable) {
      out.push_back(u);
    }
  }
  return out;
}

std::vector<std::vector<Vertex>> wreach_all(const Graph &g, const VertexOrdering &sigma, int r) {
  require(r >= 0, "wreach: negative radius");
  require(sigma.size() == g.n(), "wreach: ordering does not cover the graph");
  const int n = g.n();
  std::vector<std::vector<Vertex>> sets(static_cast<std::size_t>(n));
  std::vector<int> seen(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> frontier;
  std::vector<Vertex> next;
  for (Vertex u = 0; u < n; ++u) {
    // Everything reachable from u through vertices later than u has u in its set.
    const int pu = sigma.position(u);
    seen[u] = u;
    sets[u].push_back(u);
    frontier.assign(1, u);
    for (int level = 1; level <= r && !frontier.empty(); ++level) {
      next.clear();
      for (const Vertex x : frontier) {
        for (const Vertex y : g.neighbors(x)) {
          if (seen[y] != u && sigma.position(y) > pu) {
            seen[y] = u;
            sets[y].push_back(u);
            next.push_back(y);
          }
        }
      }
      frontier.swap(next);
    }
  }
  for (auto &s : sets) {
    std::sort(s.begin(), s.end());
  }
  return sets;
}

int wcol_measure(const Graph &g, const VertexOrdering &sigma, int r) {
  int best = 0;
  for (const auto &s : wreach_all(g, sigma, r)) {
    best = std::max(best, static_cast<int>(s.size()));
  }
  return best;
}

Graph weak_reachability_graph(const Graph &g, const VertexOrdering &sigma, int r) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  const auto sets = wreach_all(g, sigma, r);
  for (Vertex v = 0; v < g.n(); ++v) {
    for (const Vertex u : sets[v]) {
      if (u != v) {
        edges.emplace_back(u, v);
      }
    }
  }
  return Graph::from_edges(g.n(), edges);
}

std::optional<std::uint64_t> try_g_bound(int r, int d) {
  require(r >= 1 && d >= 1, "g_bound: r and d must be >= 1");
  using u128 = unsigned __int128;
  const u128 limit = std::numeric_limits<std::uint64_t>::max();
  const u128 c = u128{6} * r * r * static_cast<u128>(d) * d * d;
  if (c > limit) {
    return std::nullopt;
  }
  u128 sum = 0;
  u128 power = 1;
  for (int i = 0; i <= r; ++i) {
    sum += power;
    if (sum > limit) {
      return std::nullopt;
    }
    if (i < r) {
      power *= c;
      if (power > limit) {
        return std::nullopt;
      }
    }
  }
  return static_cast<std::uint64_t>(sum);
}

std::uint64_t g_bound(int r, int d) {
  const auto value = try_g_bound(r, d);
  if (!value) {
    fail(ErrorKind::GuardExceeded,
         "g(" + std::to_string(r) + "," + std::to_string(d) + ") overflows 64 bits");
  }
  return *value;
}

WcolOrderingResult wcol_ordering(const Graph &g, const ClassParams &params, const BconnConfig &cfg) {
  auto blocks = adm_block_ordering(g, params, cfg);
  WcolOrderingResult result;
  result.ordering = blocks.blocks.flatten();
  result.blocks = std::move(blocks.blocks);
  result.ledger = std::move(blocks.ledger);
  result.measured = wcol_measure(g, result.ordering, params.r);
  result.bound = try_g_bound(params.r, params.d);
  return result;
}

} // namespace sparsemc
