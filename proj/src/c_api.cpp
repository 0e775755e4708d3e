#include "sparsemc.h"

#include <cstdint>
#include <fstream>
#include <memory>
#include <map>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "sparsemc/degeneracy.hpp"
#include "sparsemc/domset.hpp"
#include "sparsemc/error.hpp"
#include "sparsemc/graph.hpp"
#include "sparsemc/hardness.hpp"
#include "sparsemc/logic/formula.hpp"
#include "sparsemc/logic/reduce.hpp"
#include "sparsemc/logic/structure.hpp"
#include "sparsemc/treedepth.hpp"
#include "sparsemc/wcol.hpp"

struct smc_graph {
  sparsemc::Graph g;
};

struct smc_structure {
  sparsemc::logic::Structure s;
};

struct smc_circuit {
  sparsemc::Circuit c;
};

struct smc_result {
  std::string text;
  std::vector<int32_t> values;
  std::map<std::string, int64_t> metrics;
  sparsemc::RoundLedger ledger;
  std::string ledger_text;
};

namespace {

using namespace sparsemc;

thread_local std::string last_error;

smc_status status_of(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Parse:
    return SMC_ERR_PARSE;
  case ErrorKind::InvalidArgument:
    return SMC_ERR_INVALID;
  case ErrorKind::PromiseViolated:
    return SMC_ERR_PROMISE;
  case ErrorKind::GuardExceeded:
    return SMC_ERR_GUARD;
  }
  return SMC_ERR_INTERNAL;
}

template <class F> smc_status guarded(F &&body) {
  last_error.clear();
  try {
    body();
    return SMC_OK;
  } catch (const Error &e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc &) {
    last_error = "out of memory";
    return SMC_ERR_GUARD;
  } catch (const std::exception &e) {
    last_error = e.what();
    return SMC_ERR_INTERNAL;
  }
}

smc_status bad_argument(const char *what) {
  last_error = what;
  return SMC_ERR_INVALID;
}

std::string read_path(const char *path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::ios_base::failure(std::string("cannot open '") + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class F> smc_status load_guarded(const char *path, F &&parse) {
  if (path == nullptr) {
    return bad_argument("null path");
  }
  std::string text;
  try {
    text = read_path(path);
  } catch (const std::exception &e) {
    last_error = e.what();
    return SMC_ERR_IO;
  }
  return guarded([&] { parse(text); });
}

ClassParams params_of(const smc_config *cfg) {
  smc_config local;
  if (cfg == nullptr) {
    smc_config_default(&local);
    cfg = &local;
  }
  ClassParams p{cfg->r, cfg->d, cfg->p};
  p.validate();
  return p;
}

BconnConfig bconn_of(const smc_config *cfg) {
  BconnConfig b;
  if (cfg != nullptr) {
    b.mode = cfg->bconn_mode == SMC_BCONN_MONTE_CARLO ? BconnMode::MonteCarlo : BconnMode::Exact;
    b.trials = cfg->trials;
    b.seed = cfg->seed;
  }
  b.validate();
  return b;
}

VertexOrdering ordering_of(const Graph &g, const int32_t *order, size_t len) {
  require(order != nullptr || len == 0, "null ordering");
  require(len == static_cast<size_t>(g.n()), "ordering length differs from vertex count");
  return VertexOrdering(std::vector<Vertex>(order, order + len));
}

void set_ledger(smc_result &r, RoundLedger ledger) {
  r.ledger = std::move(ledger);
  r.ledger_text = format_ledger(r.ledger);
}

template <class Fill> smc_status produce(smc_result **out, Fill &&fill) {
  if (out == nullptr) {
    return bad_argument("null output pointer");
  }
  *out = nullptr;
  return guarded([&] {
    auto res = std::make_unique<smc_result>();
    fill(*res);
    *out = res.release();
  });
}

void fill_coloring(smc_result &r, const Graph &g, const ColoringResult &c) {
  r.text = format_coloring(c.coloring);
  r.values.assign(c.coloring.color.begin(), c.coloring.color.end());
  r.metrics["colors"] = c.coloring.used_colors();
  r.metrics["palette"] = c.coloring.palette_size;
  r.metrics["proper"] = is_proper(g, c.coloring) ? 1 : 0;
  set_ledger(r, c.ledger);
}

constexpr int kAdmissibilityMeasureLimit = 500;

} // namespace

extern "C" {

const char *smc_last_error(void) { return last_error.c_str(); }

const char *smc_status_name(smc_status status) {
  switch (status) {
  case SMC_OK:
    return "ok";
  case SMC_ERR_PARSE:
    return "parse error";
  case SMC_ERR_INVALID:
    return "invalid argument";
  case SMC_ERR_PROMISE:
    return "promise violated";
  case SMC_ERR_GUARD:
    return "guard exceeded";
  case SMC_ERR_IO:
    return "i/o error";
  case SMC_ERR_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char *smc_version(void) { return "0.1.0"; }

void smc_config_default(smc_config *cfg) {
  if (cfg == nullptr) {
    return;
  }
  cfg->r = 1;
  cfg->d = 1;
  cfg->p = 1;
  cfg->delta = -1;
  cfg->bconn_mode = SMC_BCONN_EXACT;
  cfg->trials = 0;
  cfg->seed = 1;
  cfg->cover = SMC_COVER_AUTO;
}

// ------------------------------------------------------------------ handles

smc_status smc_graph_parse(const char *text, smc_graph **out) {
  if (text == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  *out = nullptr;
  return guarded([&] { *out = new smc_graph{parse_graph(text)}; });
}

smc_status smc_graph_load(const char *path, smc_graph **out) {
  if (out == nullptr) {
    return bad_argument("null output pointer");
  }
  *out = nullptr;
  return load_guarded(path, [&](const std::string &text) { *out = new smc_graph{parse_graph(text)}; });
}

smc_status smc_graph_from_edges(int n, const int32_t *edges, size_t m, smc_graph **out) {
  if (out == nullptr || (edges == nullptr && m > 0)) {
    return bad_argument("null argument");
  }
  *out = nullptr;
  return guarded([&] {
    require(n >= 0, "negative vertex count");
    std::vector<std::pair<Vertex, Vertex>> list;
    for (size_t i = 0; i < m; ++i) {
      list.emplace_back(edges[2 * i], edges[2 * i + 1]);
    }
    *out = new smc_graph{Graph::from_edges(n, list)};
  });
}

void smc_graph_free(smc_graph *g) { delete g; }

int smc_graph_n(const smc_graph *g) { return g == nullptr ? 0 : g->g.n(); }

size_t smc_graph_edge_count(const smc_graph *g) { return g == nullptr ? 0 : g->g.edge_count(); }

smc_status smc_structure_parse(const char *text, smc_structure **out) {
  if (text == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  *out = nullptr;
  return guarded([&] { *out = new smc_structure{logic::parse_structure(text)}; });
}

smc_status smc_structure_load(const char *path, smc_structure **out) {
  if (out == nullptr) {
    return bad_argument("null output pointer");
  }
  *out = nullptr;
  return load_guarded(path,
                      [&](const std::string &text) { *out = new smc_structure{logic::parse_structure(text)}; });
}

void smc_structure_free(smc_structure *s) { delete s; }

int smc_structure_n(const smc_structure *s) { return s == nullptr ? 0 : s->s.n(); }

smc_status smc_circuit_parse(const char *text, smc_circuit **out) {
  if (text == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  *out = nullptr;
  return guarded([&] { *out = new smc_circuit{parse_circuit(text)}; });
}

smc_status smc_circuit_load(const char *path, smc_circuit **out) {
  if (out == nullptr) {
    return bad_argument("null output pointer");
  }
  *out = nullptr;
  return load_guarded(path, [&](const std::string &text) { *out = new smc_circuit{parse_circuit(text)}; });
}

void smc_circuit_free(smc_circuit *c) { delete c; }

// ------------------------------------------------------------------ results

void smc_result_free(smc_result *res) { delete res; }

const char *smc_result_text(const smc_result *res) { return res == nullptr ? "" : res->text.c_str(); }

const int32_t *smc_result_values(const smc_result *res, size_t *len) {
  if (res == nullptr) {
    if (len != nullptr) {
      *len = 0;
    }
    return nullptr;
  }
  if (len != nullptr) {
    *len = res->values.size();
  }
  return res->values.data();
}

smc_status smc_result_metric(const smc_result *res, const char *name, int64_t *value) {
  if (res == nullptr || name == nullptr || value == nullptr) {
    return bad_argument("null argument");
  }
  const auto it = res->metrics.find(name);
  if (it == res->metrics.end()) {
    last_error = std::string("no metric '") + name + "'";
    return SMC_ERR_INVALID;
  }
  *value = it->second;
  return SMC_OK;
}

size_t smc_result_phase_count(const smc_result *res) { return res == nullptr ? 0 : res->ledger.phases().size(); }

smc_status smc_result_phase(const smc_result *res, size_t i, const char **name, int64_t *rounds) {
  if (res == nullptr || i >= res->ledger.phases().size()) {
    return bad_argument("phase index out of range");
  }
  const auto &phase = res->ledger.phases()[i];
  if (name != nullptr) {
    *name = phase.name.c_str();
  }
  if (rounds != nullptr) {
    *rounds = phase.rounds;
  }
  return SMC_OK;
}

const char *smc_result_ledger_text(const smc_result *res) { return res == nullptr ? "" : res->ledger_text.c_str(); }

// ------------------------------------------------------------------ orderings

smc_status smc_order_greedy(const smc_graph *g, smc_result **out) {
  if (g == nullptr) {
    return bad_argument("null graph");
  }
  return produce(out, [&](smc_result &r) {
    const auto d = greedy_degeneracy_ordering(g->g);
    r.text = format_ordering(d.ordering);
    r.values = d.ordering.sequence();
    r.metrics["degeneracy"] = d.degeneracy;
  });
}

smc_status smc_order_block(const smc_graph *g, const smc_config *cfg, smc_result **out) {
  if (g == nullptr) {
    return bad_argument("null graph");
  }
  return produce(out, [&](smc_result &r) {
    const auto params = params_of(cfg);
    auto b = block_ordering(g->g, params.d);
    r.text = format_blocks(b.blocks);
    r.values = b.blocks.flatten().sequence();
    r.metrics["blocks"] = b.blocks.size();
    r.metrics["degeneracy"] = measure_ordering_degeneracy(g->g, b.blocks);
    set_ledger(r, std::move(b.ledger));
  });
}

smc_status smc_order_adm(const smc_graph *g, const smc_config *cfg, smc_result **out) {
  if (g == nullptr) {
    return bad_argument("null graph");
  }
  return produce(out, [&](smc_result &r) {
    auto b = adm_block_ordering(g->g, params_of(cfg), bconn_of(cfg));
    r.text = format_blocks(b.blocks);
    r.values = b.blocks.flatten().sequence();
    r.metrics["blocks"] = b.blocks.size();
    if (g->g.n() <= kAdmissibilityMeasureLimit) {
      try {
        r.metrics["admissibility"] = measure_admissibility(g->g, b.blocks, params_of(cfg).r);
      } catch (const Error &e) {
        if (e.kind() != ErrorKind::GuardExceeded) {
          throw;
        }
      }
    }
    set_ledger(r, std::move(b.ledger));
  });
}

smc_status smc_order_wcol(const smc_graph *g, const smc_config *cfg, smc_result **out) {
  if (g == nullptr) {
    return bad_argument("null graph");
  }
  return produce(out, [&](smc_result &r) {
    auto w = wcol_ordering(g->g, params_of(cfg), bconn_of(cfg));
    r.text = format_ordering(w.ordering);
    r.values = w.ordering.sequence();
    r.metrics["wcol"] = w.measured;
    r.metrics["blocks"] = w.blocks.size();
    if (w.bound && *w.bound <= static_cast<std::uint64_t>(INT64_MAX)) {
      r.metrics["bound"] = static_cast<int64_t>(*w.bound);
    }
    set_ledger(r, std::move(w.ledger));
  });
}

smc_status smc_wcol_measure(const smc_graph *g, const int32_t *order, size_t len, int r, int *out) {
  if (g == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    require(r >= 0, "negative radius");
    *out = wcol_measure(g->g, ordering_of(g->g, order, len), r);
  });
}

smc_status smc_ordering_degeneracy(const smc_graph *g, const int32_t *order, size_t len, int *out) {
  if (g == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] { *out = measure_ordering_degeneracy(g->g, ordering_of(g->g, order, len)); });
}

smc_status smc_elimination_threshold(const smc_graph *g, int *out) {
  if (g == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    int c = 0;
    while (!degeneracy_le(g->g, c)) {
      ++c;
    }
    *out = c;
  });
}

smc_status smc_degeneracy_le(const smc_graph *g, int c, int *out) {
  if (g == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    require(c >= 0, "negative threshold");
    *out = degeneracy_le(g->g, c) ? 1 : 0;
  });
}

// ------------------------------------------------------------------ colourings

smc_status smc_color_bounded_degree(const smc_graph *g, const smc_config *cfg, smc_result **out) {
  if (g == nullptr) {
    return bad_argument("null graph");
  }
  return produce(out, [&](smc_result &r) {
    const int delta = cfg != nullptr && cfg->delta >= 0 ? cfg->delta : g->g.max_degree();
    fill_coloring(r, g->g, color_bounded_degree(g->g, delta));
  });
}

smc_status smc_color_degenerate(const smc_graph *g, const smc_config *cfg, smc_result **out) {
  if (g == nullptr) {
    return bad_argument("null graph");
  }
  return produce(out, [&](smc_result &r) { fill_coloring(r, g->g, color_degenerate(g->g, params_of(cfg).d)); });
}

smc_status smc_color_low_treedepth(const smc_graph *g, const smc_config *cfg, smc_result **out) {
  if (g == nullptr) {
    return bad_argument("null graph");
  }
  return produce(out, [&](smc_result &r) {
    auto lt = low_treedepth_coloring(g->g, params_of(cfg), bconn_of(cfg));
    fill_coloring(r, g->g, ColoringResult{lt.coloring, lt.ledger});
    r.metrics["radius"] = lt.radius;
    r.metrics["wcol"] = lt.measured_wcol;
  });
}

// ------------------------------------------------------------------ forests

smc_status smc_dfs_forest(const smc_graph *g, int h, smc_result **out) {
  if (g == nullptr) {
    return bad_argument("null graph");
  }
  return produce(out, [&](smc_result &r) {
    auto f = dfs_forest(g->g, h <= 0 ? trivial_depth_bound(g->g.n()) : h);
    r.text = format_forest(f.forest);
    r.values = f.forest.parents();
    r.metrics["depth"] = f.forest.depth();
    r.metrics["separation"] = check_separation_forest(g->g, f.forest) ? 1 : 0;
    set_ledger(r, std::move(f.ledger));
  });
}

smc_status smc_treedepth_exact(const smc_graph *g, int *out) {
  if (g == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] { *out = treedepth_exact(g->g); });
}

// ------------------------------------------------------------------ dominating sets

smc_status smc_domset(const smc_graph *g, const smc_config *cfg, smc_result **out) {
  if (g == nullptr) {
    return bad_argument("null graph");
  }
  return produce(out, [&](smc_result &r) {
    const auto params = params_of(cfg);
    auto d = domset_approx(g->g, params.r, params, bconn_of(cfg));
    std::ostringstream text;
    for (std::size_t i = 0; i < d.dominators.size(); ++i) {
      text << (i ? " " : "") << d.dominators[i];
    }
    text << '\n';
    r.text = text.str();
    r.values = d.dominators;
    r.metrics["size"] = static_cast<int64_t>(d.dominators.size());
    r.metrics["wcol"] = d.measured_wcol;
    set_ledger(r, std::move(d.ledger));
  });
}

smc_status smc_domset_exact(const smc_graph *g, int r, int *out) {
  if (g == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] { *out = domset_exact(g->g, r); });
}

smc_status smc_is_dominating(const smc_graph *g, const int32_t *set, size_t len, int r, int *out) {
  if (g == nullptr || out == nullptr || (set == nullptr && len > 0)) {
    return bad_argument("null argument");
  }
  return guarded([&] { *out = is_distance_dominating(g->g, std::vector<Vertex>(set, set + len), r) ? 1 : 0; });
}

// ------------------------------------------------------------------ model checking

smc_status smc_model_check(const smc_structure *s, const char *sentence, const smc_config *cfg, smc_result **out) {
  if (s == nullptr || sentence == nullptr) {
    return bad_argument("null argument");
  }
  return produce(out, [&](smc_result &r) {
    const auto phi = logic::parse_formula(sentence, s->s.vocabulary());
    logic::ReduceOptions opts;
    if (cfg != nullptr) {
      opts.cover = cfg->cover == SMC_COVER_COLORED ? logic::CoverMode::Colored
                   : cfg->cover == SMC_COVER_SINGLE ? logic::CoverMode::Single
                                                    : logic::CoverMode::Auto;
    }
    auto mc = logic::model_check(s->s, phi, params_of(cfg), bconn_of(cfg), opts);
    r.text = mc.value ? "true\n" : "false\n";
    r.metrics["value"] = mc.value ? 1 : 0;
    r.metrics["labels"] = static_cast<int64_t>(mc.stats.labels);
    r.metrics["subsets"] = static_cast<int64_t>(mc.stats.subsets);
    r.metrics["colored"] = mc.stats.colored ? 1 : 0;
    r.metrics["qe_types"] = static_cast<int64_t>(mc.stats.qe_types);
    set_ledger(r, std::move(mc.ledger));
  });
}

smc_status smc_naive_eval(const smc_structure *s, const char *sentence, int *out) {
  if (s == nullptr || sentence == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] {
    const auto phi = logic::parse_formula(sentence, s->s.vocabulary());
    require(logic::free_variables(*phi).empty(), "naive evaluation needs a sentence");
    *out = logic::naive_eval(s->s, *phi, {}) ? 1 : 0;
  });
}

// ------------------------------------------------------------------ circuits

smc_status smc_reduce_circuit(const smc_circuit *c, smc_result **out) {
  if (c == nullptr) {
    return bad_argument("null circuit");
  }
  return produce(out, [&](smc_result &r) {
    const Circuit normalized = normalize_circuit(c->c);
    const CircuitGraph cg = circuit_to_graph(normalized);
    RoundLedger ledger;
    const bool degenerate = degeneracy_le(cg.graph, 2, &ledger);
    const bool value = eval_circuit(c->c);
    r.text = format_graph(cg.graph);
    r.metrics["degeneracy_le2"] = degenerate ? 1 : 0;
    r.metrics["eval"] = value ? 1 : 0;
    r.metrics["agree"] = degenerate == value ? 1 : 0;
    r.metrics["vertices"] = cg.graph.n();
    r.metrics["edges"] = static_cast<int64_t>(cg.graph.edge_count());
    r.metrics["gates"] = static_cast<int64_t>(normalized.gates.size());
    set_ledger(r, std::move(ledger));
  });
}

smc_status smc_eval_circuit(const smc_circuit *c, int *out) {
  if (c == nullptr || out == nullptr) {
    return bad_argument("null argument");
  }
  return guarded([&] { *out = eval_circuit(c->c) ? 1 : 0; });
}

smc_status smc_gadget_self_test(smc_result **out) {
  return produce(out, [&](smc_result &r) {
    const auto t = gadget_self_test();
    for (const auto &f : t.failures) {
      r.text += f + "\n";
    }
    r.metrics["ok"] = t.ok ? 1 : 0;
  });
}

} // extern "C"
