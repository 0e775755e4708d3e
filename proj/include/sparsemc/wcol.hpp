#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sparsemc/degeneracy.hpp"
#include "sparsemc/graph.hpp"
#include "sparsemc/ordering.hpp"

namespace sparsemc {

enum class BconnMode { Exact, MonteCarlo };

struct BconnConfig {
  BconnMode mode = BconnMode::Exact;
  std::int64_t trials = 0; // 0 selects ceil(k^(rk) * ln 100), capped at 1e6
  std::uint64_t seed = 1;
  int exact_cutoff = 64;      // exact search when at most this many vertices are reachable
  std::int64_t max_paths = 200000; // guard for the exact path enumeration

  void validate() const;
};

// Paths from u (first vertex) to a vertex of S \ {u}, pairwise sharing only u.
using PathFamily = std::vector<std::vector<Vertex>>;

// `in_s` is a membership vector over V(G).
int bconn_exact(const Graph &g, const std::vector<char> &in_s, Vertex u, int r,
                std::int64_t max_paths = 200000);

// Round and item select the random stream in Monte-Carlo mode.
struct StreamKey {
  std::uint64_t round = 0;
  std::uint64_t item = 0;
};

// True iff bconn_r(S, u) >= k. A true answer fills `witness` (if given) with k certified paths.
bool bconn_at_least(const Graph &g, const std::vector<char> &in_s, Vertex u, int r, int k,
                    const BconnConfig &cfg, StreamKey stream = {}, PathFamily *witness = nullptr);

bool verify_bconn_witness(const Graph &g, const std::vector<char> &in_s, Vertex u, int r,
                          const PathFamily &paths);

std::int64_t default_trials(int k, int r);

// Threshold 6 r^2 d^3 on back-connectivity; r = 1 delegates to block_ordering(G, 2d).
BlockResult adm_block_ordering(const Graph &g, const ClassParams &params, const BconnConfig &cfg);

// max over v in B_i of bconn_r(B_1 u ... u B_i, v), computed exactly.
int measure_admissibility(const Graph &g, const BlockOrdering &blocks, int r);

std::vector<Vertex> wreach_set(const Graph &g, const VertexOrdering &sigma, Vertex v, int r);
std::vector<std::vector<Vertex>> wreach_all(const Graph &g, const VertexOrdering &sigma, int r);
int wcol_measure(const Graph &g, const VertexOrdering &sigma, int r);
Graph weak_reachability_graph(const Graph &g, const VertexOrdering &sigma, int r);

// sum_{i=0..r} (6 r^2 d^3)^i; GuardExceeded on 64-bit overflow.
std::uint64_t g_bound(int r, int d);
std::optional<std::uint64_t> try_g_bound(int r, int d);

struct WcolOrderingResult {
  VertexOrdering ordering;
  BlockOrdering blocks;
  int measured = 0;
  std::optional<std::uint64_t> bound;
  RoundLedger ledger;
};

WcolOrderingResult wcol_ordering(const Graph &g, const ClassParams &params, const BconnConfig &cfg);

} // namespace sparsemc
