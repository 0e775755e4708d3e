// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "circuit_gen.hpp"
#include "forest_gen.hpp"
#include "generators.hpp"
#include "lcd_oracle.hpp"
#include "logic_gen.hpp"
#include "oracles.hpp"
#include "sparsemc/degeneracy.hpp"
#include "sparsemc/domset.hpp"
#include "sparsemc/error.hpp"
#include "sparsemc/hardness.hpp"
#include "sparsemc/logic/qe.hpp"
#include "sparsemc/logic/reduce.hpp"
#include "sparsemc/treedepth.hpp"
#include "sparsemc/wcol.hpp"

using namespace sparsemc;
using namespace sparsemc::logic;
using testgen::coin;
using testgen::uniform;

namespace {

// Counts checks and keeps the first few failure descriptions.
struct Tally {
  long checks = 0;
  long failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::function<std::string()> &what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (notes.size() < 5) {
        notes.push_back(what());
      }
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool report(int id, const std::string &name, const Tally &t, double secs, const std::string &extra = {}) {
  const bool pass = t.failures == 0 && t.checks > 0;
  std::printf("criterion %d: %s  %s  (%ld checks, %ld failures, %.1fs%s%s)\n", id, pass ? "PASS" : "FAIL",
              name.c_str(), t.checks, t.failures, secs, extra.empty() ? "" : ", ", extra.c_str());
  for (const auto &n : t.notes) {
    std::printf("    %s\n", n.c_str());
  }
  std::fflush(stdout);
  return pass;
}

std::string error_text(const std::exception &e) { return std::string("exception: ") + e.what(); }

// ---------------------------------------------------------------- 1

bool model_checking_equivalence() {
  const auto t0 = Clock::now();
  Tally t;
  testgen::Rng rng(1001);
  for (int round = 0; round < 500; ++round) {
    Graph g;
    switch (round % 3) {
    case 0:
      g = testgen::random_tree(rng, uniform(rng, 1, 20));
      break;
    case 1: {
      const int rows = uniform(rng, 1, 5);
      g = testgen::grid(rows, uniform(rng, 1, std::min(5, 20 / rows)));
      break;
    }
    default:
      g = testgen::random_degenerate(rng, uniform(rng, 1, 20), 2);
    }
    const Structure a = testgen::random_structure(rng, g, uniform(rng, 0, 2), uniform(rng, 1, 2));
    testgen::FormulaGen gen(rng, a.vocabulary());
    const FormulaPtr phi = gen.gen({}, 3, 4);
    try {
      const bool got = model_check(a, phi, {1, 2, 1}, BconnConfig{}).value;
      const bool want = naive_eval(a, *phi, {});
      t.expect(got == want, [&] { return "round " + std::to_string(round) + ": " + to_string(*phi); });
    } catch (const std::exception &e) {
      t.expect(false, [&] { return "round " + std::to_string(round) + ": " + error_text(e); });
    }
  }
  const double secs = seconds_since(t0);
  t.expect(secs <= 600.0, [&] { return "runtime exceeds 10 minutes"; });
  return report(1, "model_check agrees with naive evaluation", t, secs);
}

// ---------------------------------------------------------------- 2

// Type of a realized tuple over k variables with random label literals taken from its nodes.
LcdType type_of_tuple(const LabeledForest &f, const std::vector<Vertex> &tuple) {
  LcdType type;
  const int k = static_cast<int>(tuple.size());
  type.delta.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      type.delta[x][y] = oracle::count_common(f.forest(), tuple[x], tuple[y]);
    }
    std::vector<std::pair<std::string, bool>> lits;
    for (int l = 0; l < f.label_count(); ++l) {
      lits.emplace_back(f.label_name(l), f.has(l, tuple[x]));
    }
    type.labels.push_back(std::move(lits));
  }
  return type;
}

LcdType random_type(testgen::Rng &rng, int k, int d, const std::vector<std::string> &labels) {
  LcdType type;
  type.delta.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
  for (int x = 0; x < k; ++x) {
    type.delta[x][x] = uniform(rng, 1, d);
  }
  for (int x = 0; x < k; ++x) {
    for (int y = x + 1; y < k; ++y) {
      type.delta[x][y] = type.delta[y][x] = uniform(rng, 0, std::min(type.delta[x][x], type.delta[y][y]));
    }
    std::vector<std::pair<std::string, bool>> lits;
    for (const auto &name : labels) {
      lits.emplace_back(name, coin(rng, 0.5));
    }
    type.labels.push_back(std::move(lits));
  }
  return type;
}

bool qe_unit_suite() {
  const auto t0 = Clock::now();
  Tally t;
  testgen::Rng rng(2002);
  long satisfiable = 0;
  for (int round = 0; round < 1000; ++round) {
    const int d = uniform(rng, 1, 4);
    std::vector<std::string> labels;
    for (int l = 0, count = uniform(rng, 0, 2); l < count; ++l) {
      labels.push_back("c" + std::to_string(l));
    }
    const int n = uniform(rng, 1, 25);
    const auto forest = testgen::random_labeled_forest(rng, n, d, labels);
    for (int rep = 0; rep < 3; ++rep) {
      const int vars = uniform(rng, 2, 3);
      LcdType type;
      if (rep == 0) {
        std::vector<Vertex> tuple;
        for (int i = 0; i < vars; ++i) {
          tuple.push_back(uniform(rng, 0, n - 1));
        }
        type = type_of_tuple(forest, tuple);
      } else {
        type = random_type(rng, vars, d, labels);
      }
      satisfiable += type_satisfiable(type, d) ? 1 : 0;
      const LcdPtr psi = type_formula(type, forest.relation());
      try {
        const int k = vars - 1;
        const auto by_type = qe_type_step(type, forest, d);
        const auto by_formula = qe_trees_step(psi, k, forest, d);
        const LcdProgram alpha(*by_type.alpha, by_type.forest);
        const LcdProgram beta(*by_formula.alpha, by_formula.forest);
        testgen::for_each_tuple(n, k, [&](const std::vector<Vertex> &u) {
          auto full = u;
          full.push_back(0);
          bool exists = false;
          for (Vertex w = 0; w < n && !exists; ++w) {
            full.back() = w;
            exists = oracle::interpret(forest, *psi, full);
          }
          t.expect(alpha.eval(u) == exists && beta.eval(u) == exists,
                   [&] { return "round " + std::to_string(round) + " disagrees"; });
        });
      } catch (const std::exception &e) {
        t.expect(false, [&] { return "round " + std::to_string(round) + ": " + error_text(e); });
      }
    }
  }
  return report(2, "qe_trees_step exact on random forests and types", t, seconds_since(t0),
                std::to_string(satisfiable) + " satisfiable types");
}

// ---------------------------------------------------------------- 3

bool block_ordering_bounds() {
  const auto t0 = Clock::now();
  Tally t;
  testgen::Rng rng(3003);
  for (int round = 0; round < 200; ++round) {
    const int d = uniform(rng, 1, 4);
    const int n = uniform(rng, 2, 5000);
    const Graph g = testgen::random_degenerate(rng, n, d);
    try {
      const auto res = block_ordering(g, d);
      const int deg = measure_ordering_degeneracy(g, res.blocks);
      t.expect(deg <= 4 * d, [&] { return "block degeneracy " + std::to_string(deg) + " > 4d"; });
      t.expect(res.blocks.size() <= floor_log2(static_cast<std::uint64_t>(n)), [&] {
        return "n=" + std::to_string(n) + ": " + std::to_string(res.blocks.size()) + " blocks";
      });
      int remaining = n;
      for (int b = res.blocks.size() - 1; b >= 0; --b) {
        const int taken = static_cast<int>(res.blocks.blocks()[b].size());
        t.expect(2 * taken > remaining, [&] { return "round removed at most half"; });
        remaining -= taken;
      }
    } catch (const std::exception &e) {
      t.expect(false, [&] { return error_text(e); });
    }
  }
  return report(3, "block ordering: degeneracy <= 4d, <= floor(log2 n) blocks, halving", t, seconds_since(t0));
}

// ---------------------------------------------------------------- 4

Graph random_bounded_degree(testgen::Rng &rng, int n, int delta) {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  std::set<std::pair<Vertex, Vertex>> edges;
  for (int tries = 0; tries < n * delta; ++tries) {
    Vertex u = uniform(rng, 0, n - 1);
    Vertex v = uniform(rng, 0, n - 1);
    if (u == v || deg[u] >= delta || deg[v] >= delta) {
      continue;
    }
    if (edges.insert({std::min(u, v), std::max(u, v)}).second) {
      ++deg[u];
      ++deg[v];
    }
  }
  std::vector<std::pair<Vertex, Vertex>> list(edges.begin(), edges.end());
  return Graph::from_edges(n, list);
}

bool coloring_bounds() {
  const auto t0 = Clock::now();
  Tally t;
  testgen::Rng rng(4004);
  try {
    for (int round = 0; round < 100; ++round) {
      const int delta = uniform(rng, 0, 5);
      const Graph g = random_bounded_degree(rng, uniform(rng, 1, 2000), delta);
      const auto c = color_bounded_degree(g, delta);
      t.expect(is_proper(g, c.coloring), [] { return "bounded-degree colouring not proper"; });
      t.expect(c.coloring.used_colors() <= delta + 1, [&] { return "more than delta+1 colours"; });
    }
    for (int round = 0; round < 100; ++round) {
      const int d = uniform(rng, 0, 3);
      const Graph g = testgen::random_degenerate(rng, uniform(rng, 1, 2000), d);
      const auto c = color_degenerate(g, d);
      t.expect(is_proper(g, c.coloring), [] { return "degenerate colouring not proper"; });
      t.expect(c.coloring.used_colors() <= (4 * d + 1) * (4 * d + 1), [&] { return "more than (4d+1)^2 colours"; });
    }
    const Graph k4 = testgen::complete(4);
    t.expect(color_bounded_degree(k4, 3).coloring.used_colors() == 4, [] { return "K4 bounded-degree colours"; });
    t.expect(color_degenerate(k4, 3).coloring.used_colors() == 4, [] { return "K4 degenerate colours"; });
  } catch (const std::exception &e) {
    t.expect(false, [&] { return error_text(e); });
  }
  return report(4, "colourings proper within Delta+1 and (4d+1)^2; K4 gets 4", t, seconds_since(t0));
}

// ---------------------------------------------------------------- 5

bool wcol_bound() {
  const auto t0 = Clock::now();
  Tally exact;
  testgen::Rng rng(5005);
  // Per-class density constants: grids 2, stacked triangulations 3.
  std::vector<std::pair<Graph, int>> graphs;
  for (const int side : {5, 12, 30, 44}) {
    graphs.emplace_back(testgen::grid(side, side), 2);
  }
  for (const int n : {20, 150, 800, 2000}) {
    graphs.emplace_back(testgen::random_triangulation(rng, n), 3);
  }
  for (const auto &[g, d] : graphs) {
    for (const int r : {2, 3}) {
      try {
        const auto w = wcol_ordering(g, {r, d, 1}, BconnConfig{});
        const auto bound = g_bound(r, d);
        exact.expect(static_cast<std::uint64_t>(w.measured) <= bound, [&] { return "exact mode above bound"; });
        exact.expect(w.measured == wcol_measure(g, w.ordering, r), [] { return "measured value not reproducible"; });
      } catch (const std::exception &e) {
        exact.expect(false, [&] { return error_text(e); });
      }
    }
  }
  // Monte-Carlo mode: 20 seeds per graph, at least 95% within the bound.
  long runs = 0;
  long within = 0;
  int worst = 0;
  for (const auto &[g, d] : graphs) {
    if (g.n() > 800) {
      continue;
    }
    for (const int r : {2, 3}) {
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        BconnConfig cfg;
        cfg.mode = BconnMode::MonteCarlo;
        cfg.seed = seed;
        ++runs;
        try {
          const auto w = wcol_ordering(g, {r, d, 1}, cfg);
          worst = std::max(worst, w.measured);
          within += static_cast<std::uint64_t>(w.measured) <= g_bound(r, d) ? 1 : 0;
        } catch (const Error &) {
          // a failed run counts against the allowance
        }
      }
    }
  }
  exact.expect(within * 100 >= runs * 95, [&] {
    return "Monte-Carlo within bound on " + std::to_string(within) + "/" + std::to_string(runs) + " runs";
  });
  return report(5, "wcol_r of wcol_ordering <= g(r,d)", exact, seconds_since(t0),
                "monte-carlo " + std::to_string(within) + "/" + std::to_string(runs) + " within, max wcol " +
                    std::to_string(worst));
}

// ---------------------------------------------------------------- 6

std::vector<std::vector<int>> subsets_up_to(const std::vector<int> &items, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (!cur.empty()) {
      out.push_back(cur);
    }
    if (static_cast<int>(cur.size()) == p) {
      return;
    }
    for (std::size_t j = i; j < items.size(); ++j) {
      cur.push_back(items[j]);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Vertex> class_members(const Coloring &c, const std::vector<int> &classes) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < c.color.size(); ++v) {
    if (std::find(classes.begin(), classes.end(), c.color[v]) != classes.end()) {
      out.push_back(static_cast<Vertex>(v));
    }
  }
  return out;
}

std::vector<int> used_colors(const Coloring &c) {
  std::set<int> s(c.color.begin(), c.color.end());
  return {s.begin(), s.end()};
}

Graph sparse_sample(testgen::Rng &rng, int n, int kind) {
  switch (kind) {
  case 0:
    return testgen::random_tree(rng, n);
  case 1: {
    const int rows = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
    return testgen::grid(rows, std::max(1, n / rows));
  }
  default:
    return testgen::random_degenerate(rng, n, 2);
  }
}

bool low_treedepth_coloring_property() {
  const auto t0 = Clock::now();
  Tally t;
  testgen::Rng rng(6006);
  for (int round = 0; round < 120; ++round) {
    const int p = 2 + round % 2;
    const Graph g = sparse_sample(rng, uniform(rng, 1, 12), round % 3);
    try {
      const auto res = low_treedepth_coloring(g, {1, 2, p}, BconnConfig{});
      t.expect(is_proper(g, res.coloring), [] { return "colouring not proper"; });
      for (const auto &cls : subsets_up_to(used_colors(res.coloring), p)) {
        const auto sub = induced_subgraph(g, class_members(res.coloring, cls));
        const int td = treedepth_exact(sub.graph);
        t.expect(td <= static_cast<int>(cls.size()), [&] {
          return "p=" + std::to_string(p) + ": " + std::to_string(cls.size()) + " classes have treedepth " +
                 std::to_string(td);
        });
      }
    } catch (const std::exception &e) {
      t.expect(false, [&] { return error_text(e); });
    }
  }
  for (int round = 0; round < 12; ++round) {
    const int p = 2 + round % 2;
    const Graph g = sparse_sample(rng, uniform(rng, 200, 2000), round % 3);
    try {
      const auto res = low_treedepth_coloring(g, {1, 2, p}, BconnConfig{});
      const auto colors = used_colors(res.coloring);
      for (int s = 0; s < 100; ++s) {
        std::vector<int> pick = colors;
        for (int i = static_cast<int>(pick.size()) - 1; i > 0; --i) {
          std::swap(pick[i], pick[uniform(rng, 0, i)]);
        }
        pick.resize(std::min<std::size_t>(pick.size(), static_cast<std::size_t>(uniform(rng, 1, p))));
        const auto sub = induced_subgraph(g, class_members(res.coloring, pick));
        try {
          const int depth = dfs_forest(sub.graph, p).forest.depth();
          t.expect(depth < (1 << p), [&] { return "DFS depth certificate fails"; });
        } catch (const Error &e) {
          t.expect(false, [&] { return error_text(e); });
        }
      }
    } catch (const std::exception &e) {
      t.expect(false, [&] { return error_text(e); });
    }
  }
  return report(6, "unions of i <= p colour classes have treedepth <= i", t, seconds_since(t0));
}

// ---------------------------------------------------------------- 7

// Random subgraph of the closure of a random forest of depth <= h, ids shuffled.
Graph bounded_treedepth_graph(testgen::Rng &rng, int n, int h) {
  const RootedForest f = testgen::random_forest(rng, n, h);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex a = f.parent(v); a >= 0; a = f.parent(a)) {
      if (a == f.parent(v) ? coin(rng, 0.8) : coin(rng, 0.3)) {
        edges.emplace_back(a, v);
      }
    }
  }
  return Graph::from_edges(n, edges);
}

bool treedepth_facts() {
  const auto t0 = Clock::now();
  Tally t;
  for (int k = 0; k <= 3; ++k) {
    const int td = treedepth_exact(testgen::path(1 << k));
    t.expect(td == k + 1, [&] { return "path on 2^" + std::to_string(k) + " vertices: " + std::to_string(td); });
  }
  testgen::Rng rng(7007);
  for (int round = 0; round < 500; ++round) {
    const int h = uniform(rng, 1, 5);
    const int n = uniform(rng, 1, 200);
    const Graph g = bounded_treedepth_graph(rng, n, h);
    try {
      const auto res = dfs_forest(g, h);
      t.expect(res.forest.depth() < (1 << h), [&] { return "depth reaches 2^h"; });
      t.expect(check_separation_forest(g, res.forest), [] { return "not a separation forest"; });
    } catch (const std::exception &e) {
      t.expect(false, [&] { return error_text(e); });
    }
  }
  return report(7, "treedepth of paths; DFS forest depth < 2^h", t, seconds_since(t0));
}

// ---------------------------------------------------------------- 8

bool dominating_set() {
  const auto t0 = Clock::now();
  Tally t;
  testgen::Rng rng(8008);
  for (int round = 0; round < 150; ++round) {
    const bool small = round % 2 == 0;
    const int n = small ? uniform(rng, 1, 15) : uniform(rng, 16, 400);
    Graph g;
    switch (round % 3) {
    case 0:
      g = testgen::random_tree(rng, n);
      break;
    case 1:
      g = testgen::path(n);
      break;
    default: {
      const int rows = uniform(rng, 1, std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n)))));
      g = testgen::grid(rows, std::max(1, n / rows));
    }
    }
    const int r = uniform(rng, 1, 2);
    try {
      const auto res = domset_approx(g, r, {1, 2, 1}, BconnConfig{});
      t.expect(is_distance_dominating(g, res.dominators, r), [] { return "not a dominating set"; });
      if (g.n() <= 15) {
        const int wcol = wcol_measure(g, res.ordering, 2 * r);
        const int opt = domset_exact(g, r);
        t.expect(static_cast<int>(res.dominators.size()) <= wcol * opt, [&] {
          return "|D|=" + std::to_string(res.dominators.size()) + " > " + std::to_string(wcol) + "*" +
                 std::to_string(opt);
        });
      }
    } catch (const std::exception &e) {
      t.expect(false, [&] { return error_text(e); });
    }
  }
  return report(8, "distance-r dominating set valid, |D| <= wcol_2r * optimum", t, seconds_since(t0));
}

// ---------------------------------------------------------------- 9

bool hardness_reduction() {
  const auto t0 = Clock::now();
  Tally t;
  const auto self = gadget_self_test();
  t.expect(self.ok, [&] { return self.failures.empty() ? "gadget self-test" : self.failures.front(); });
  testgen::Rng rng(9009);
  int truths = 0;
  for (int round = 0; round < 200; ++round) {
    try {
      const Circuit c = normalize_circuit(testgen::random_circuit(rng, uniform(rng, 1, 40)));
      std::string why;
      t.expect(is_normalized(c, &why), [&] { return "not normalized: " + why; });
      const bool value = eval_circuit(c);
      truths += value ? 1 : 0;
      t.expect(degeneracy_le(circuit_to_graph(c).graph, 2) == value,
               [&] { return "round " + std::to_string(round) + " disagrees"; });
    } catch (const std::exception &e) {
      t.expect(false, [&] { return error_text(e); });
    }
  }
  return report(9, "circuit value iff reduction graph is 2-degenerate", t, seconds_since(t0),
                std::to_string(truths) + "/200 true circuits");
}

// ---------------------------------------------------------------- 10

bool cross_oracle_coherence() {
  const auto t0 = Clock::now();
  Tally t;
  testgen::Rng rng(10010);
  for (int round = 0; round < 500; ++round) {
    const int n = uniform(rng, 1, 200);
    const Graph g = round % 2 ? testgen::random_degenerate(rng, n, uniform(rng, 0, 5))
                              : testgen::random_gnp(rng, n, uniform(rng, 1, 8) / static_cast<double>(n));
    const int greedy = greedy_degeneracy_ordering(g).degeneracy;
    const int threshold = oracle::elimination_threshold(g);
    t.expect(greedy == threshold, [&] {
      return "greedy " + std::to_string(greedy) + " vs elimination threshold " + std::to_string(threshold);
    });
    t.expect(degeneracy_le(g, greedy) && (greedy == 0 || !degeneracy_le(g, greedy - 1)),
             [] { return "degeneracy_le threshold differs"; });
  }
  for (int round = 0; round < 300; ++round) {
    const int n = uniform(rng, 1, 12);
    const Graph g = testgen::random_gnp(rng, n, 0.15 + 0.35 * coin(rng, 0.5));
    std::vector<char> in_s(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      in_s[v] = coin(rng, 0.4) ? 1 : 0;
    }
    const Vertex u = uniform(rng, 0, n - 1);
    in_s[u] = 1;
    const int r = uniform(rng, 1, 4);
    const int k = uniform(rng, 0, 5);
    try {
      const int exact = bconn_exact(g, in_s, u, r);
      t.expect(exact == oracle::bconn_bruteforce(g, in_s, u, r), [] { return "bconn_exact vs brute force"; });
      t.expect(bconn_at_least(g, in_s, u, r, k, BconnConfig{}) == (exact >= k),
               [&] { return "bconn_at_least(k=" + std::to_string(k) + ") vs bconn_exact " + std::to_string(exact); });
    } catch (const std::exception &e) {
      t.expect(false, [&] { return error_text(e); });
    }
  }
  return report(10, "degeneracy and back-connectivity oracles agree", t, seconds_since(t0));
}

} // namespace

int main() {
  const auto t0 = Clock::now();
  int passed = 0;
  passed += model_checking_equivalence();
  passed += qe_unit_suite();
  passed += block_ordering_bounds();
  passed += coloring_bounds();
  passed += wcol_bound();
  passed += low_treedepth_coloring_property();
  passed += treedepth_facts();
  passed += dominating_set();
  passed += hardness_reduction();
  passed += cross_oracle_coherence();
  std::printf("acceptance: %d/10 criteria passed in %.1fs\n", passed, seconds_since(t0));
  return passed == 10 ? 0 : 1;
}
