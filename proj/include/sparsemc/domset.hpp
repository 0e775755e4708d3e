#pragma once

#include <optional>
#include <vector>

#include "sparsemc/graph.hpp"
#include "sparsemc/ordering.hpp"
#include "sparsemc/wcol.hpp"

namespace sparsemc {

struct DomsetResult {
  std::vector<Vertex> dominators; // ascending
  VertexOrdering ordering;
  int measured_wcol = 0; // wcol_{2r}(G, ordering)
  RoundLedger ledger;
};

// Every vertex elects the earliest member of its weak r-reachability set.
// The ordering defaults to wcol_ordering at radius 2r.
DomsetResult domset_approx(const Graph &g, int r, const ClassParams &params, const BconnConfig &cfg,
                           const std::optional<VertexOrdering> &ordering = std::nullopt);

inline constexpr int kExactDomsetLimit = 20;
int domset_exact(const Graph &g, int r);

bool is_distance_dominating(const Graph &g, const std::vector<Vertex> &set, int r);

} // namespace sparsemc
