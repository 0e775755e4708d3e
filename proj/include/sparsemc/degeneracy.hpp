#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sparsemc/graph.hpp"
#include "sparsemc/ordering.hpp"

namespace sparsemc {

struct Coloring {
  std::vector<int> color;
  int palette_size = 0;

  [[nodiscard]] int used_colors() const;
};

bool is_proper(const Graph &g, const Coloring &c);
std::string format_coloring(const Coloring &c);

struct DegeneracyOrdering {
  VertexOrdering ordering;
  int degeneracy = 0;
};

// Repeatedly removes a minimum-degree vertex (smallest id on ties); the ordering is the
// reverse removal sequence, so every vertex has at most `degeneracy` earlier neighbours.
DegeneracyOrdering greedy_degeneracy_ordering(const Graph &g);

int measure_ordering_degeneracy(const Graph &g, const VertexOrdering &order);
// Neighbours in the same or earlier blocks.
int measure_ordering_degeneracy(const Graph &g, const BlockOrdering &blocks);

struct BlockResult {
  BlockOrdering blocks;
  RoundLedger ledger;
};

// Peels all vertices of degree <= 4d per round; the first peeled set becomes the last block.
BlockResult block_ordering(const Graph &g, int d);

struct ColoringResult {
  Coloring coloring;
  RoundLedger ledger;
};

ColoringResult color_bounded_degree(const Graph &g, int max_degree);
ColoringResult merge_block_coloring(const Graph &g, const BlockOrdering &blocks, int d);
ColoringResult color_degenerate(const Graph &g, int d);

} // namespace sparsemc
