#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "sparsemc/graph.hpp"
#include "sparsemc/random.hpp"

namespace testgen {

using sparsemc::Graph;
using sparsemc::Rng;
using sparsemc::Vertex;
using Edges = std::vector<std::pair<Vertex, Vertex>>;

inline int uniform(Rng &rng, int lo, int hi) {
  return lo + static_cast<int>(sparsemc::draw_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline bool coin(Rng &rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

inline Graph path(int n) {
  Edges e;
  for (int i = 0; i + 1 < n; ++i) {
    e.emplace_back(i, i + 1);
  }
  return Graph::from_edges(n, e);
}

inline Graph cycle(int n) {
  Edges e;
  for (int i = 0; i < n; ++i) {
    e.emplace_back(i, (i + 1) % n);
  }
  return Graph::from_edges(n, e);
}

inline Graph complete(int n) {
  Edges e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      e.emplace_back(i, j);
    }
  }
  return Graph::from_edges(n, e);
}

inline Graph star(int leaves) {
  Edges e;
  for (int i = 1; i <= leaves; ++i) {
    e.emplace_back(0, i);
  }
  return Graph::from_edges(leaves + 1, e);
}

inline Graph grid(int rows, int cols) {
  Edges e;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int v = i * cols + j;
      if (j + 1 < cols) {
        e.emplace_back(v, v + 1);
      }
      if (i + 1 < rows) {
        e.emplace_back(v, v + cols);
      }
    }
  }
  return Graph::from_edges(rows * cols, e);
}

inline Graph petersen() {
  Edges e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph::from_edges(10, e);
}

// Spokes subdivided once: centre 0, middles 1..k, leaves k+1..2k.
inline Graph subdivided_star(int k) {
  Edges e;
  for (int i = 1; i <= k; ++i) {
    e.emplace_back(0, i);
    e.emplace_back(i, i + k);
  }
  return Graph::from_edges(2 * k + 1, e);
}

inline Graph random_tree(Rng &rng, int n) {
  Edges e;
  for (int v = 1; v < n; ++v) {
    e.emplace_back(uniform(rng, 0, v - 1), v);
  }
  return Graph::from_edges(n, e);
}

// Each new vertex picks up to d distinct earlier neighbours; ids are shuffled afterwards.
inline Graph random_degenerate(Rng &rng, int n, int d, bool shuffle = true) {
  std::vector<Vertex> label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    label[i] = i;
  }
  if (shuffle) {
    for (int i = n - 1; i > 0; --i) {
      std::swap(label[i], label[uniform(rng, 0, i)]);
    }
  }
  Edges e;
  for (int v = 1; v < n; ++v) {
    const int want = std::min(v, uniform(rng, 0, d));
    std::set<int> picked;
    while (static_cast<int>(picked.size()) < want) {
      picked.insert(uniform(rng, 0, v - 1));
    }
    for (const int u : picked) {
      e.emplace_back(label[u], label[v]);
    }
  }
  return Graph::from_edges(n, e);
}

inline Graph random_gnp(Rng &rng, int n, double p) {
  Edges e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng, p)) {
        e.emplace_back(i, j);
      }
    }
  }
  return Graph::from_edges(n, e);
}

// Random planar triangulation by repeated insertion into a random face (stacked triangulation).
inline Graph random_triangulation(Rng &rng, int n) {
  Edges e{{0, 1}, {1, 2}, {0, 2}};
  std::vector<std::array<int, 3>> faces{{0, 1, 2}, {0, 1, 2}};
  for (int v = 3; v < n; ++v) {
    const int f = uniform(rng, 0, static_cast<int>(faces.size()) - 1);
    const auto tri = faces[f];
    for (const int u : tri) {
      e.emplace_back(u, v);
    }
    faces[f] = {tri[0], tri[1], v};
    faces.push_back({tri[1], tri[2], v});
    faces.push_back({tri[0], tri[2], v});
  }
  return Graph::from_edges(std::max(n, 3), e);
}

inline std::vector<Vertex> random_permutation(Rng &rng, int n) {
  std::vector<Vertex> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    p[i] = i;
  }
  for (int i = n - 1; i > 0; --i) {
    std::swap(p[i], p[uniform(rng, 0, i)]);
  }
  return p;
}

} // namespace testgen
