// sparsemc command-line front end; talks to the library only through the C API.
#include <cstdint>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sparsemc.h"

namespace {

enum Exit { kOk = 0, kInputError = 1, kViolation = 2, kMismatch = 3 };

// Size limits for the brute-force cross-checks behind --oracle.
constexpr int kOracleTreedepthN = 12;
constexpr int kOracleDomsetN = 15;
constexpr int kOracleModelCheckN = 64;

struct Failure {
  int code;
  std::string message;
};

int exit_for(smc_status s) {
  switch (s) {
  case SMC_OK:
    return kOk;
  case SMC_ERR_PROMISE:
  case SMC_ERR_GUARD:
    return kViolation;
  default:
    return kInputError;
  }
}

void check(smc_status s) {
  if (s != SMC_OK) {
    throw Failure{exit_for(s), std::string(smc_status_name(s)) + ": " + smc_last_error()};
  }
}

template <class T, void (*Free)(T *)> struct Deleter {
  void operator()(T *p) const { Free(p); }
};
using GraphPtr = std::unique_ptr<smc_graph, Deleter<smc_graph, smc_graph_free>>;
using StructurePtr = std::unique_ptr<smc_structure, Deleter<smc_structure, smc_structure_free>>;
using CircuitPtr = std::unique_ptr<smc_circuit, Deleter<smc_circuit, smc_circuit_free>>;
using ResultPtr = std::unique_ptr<smc_result, Deleter<smc_result, smc_result_free>>;

struct Options {
  int r = 1;
  int d = 1;
  int p = 1;
  int delta = -1;
  int h = 0;
  std::uint64_t seed = 1;
  std::int64_t trials = 0;
  std::string bconn_mode = "exact";
  std::string cover = "auto";
  bool ledger = false;
  bool oracle = false;
  std::string graph;
  std::string structure;
  std::string formula;
  std::string circuit;
  std::string kind;

  smc_config config() const {
    smc_config c;
    smc_config_default(&c);
    c.r = r;
    c.d = d;
    c.p = p;
    c.delta = delta;
    c.seed = seed;
    c.trials = trials;
    c.bconn_mode = bconn_mode == "mc" ? SMC_BCONN_MONTE_CARLO : SMC_BCONN_EXACT;
    c.cover = cover == "colored" ? SMC_COVER_COLORED : cover == "single" ? SMC_COVER_SINGLE : SMC_COVER_AUTO;
    return c;
  }
};

std::string require_path(const std::string &path, const char *flag) {
  if (path.empty()) {
    throw Failure{kInputError, std::string("missing ") + flag};
  }
  return path;
}

GraphPtr load_graph(const Options &o) {
  smc_graph *g = nullptr;
  check(smc_graph_load(require_path(o.graph, "--graph").c_str(), &g));
  return GraphPtr(g);
}

int64_t metric(const smc_result *r, const char *name) {
  int64_t v = 0;
  check(smc_result_metric(r, name, &v));
  return v;
}

bool has_metric(const smc_result *r, const char *name) {
  int64_t v = 0;
  return smc_result_metric(r, name, &v) == SMC_OK;
}

std::vector<int32_t> values(const smc_result *r) {
  size_t len = 0;
  const int32_t *v = smc_result_values(r, &len);
  return std::vector<int32_t>(v, v + len);
}

const char *yes_no(bool b) { return b ? "true" : "false"; }

// Collects output and the verdict of oracle comparisons.
struct Report {
  std::ostringstream out;
  bool mismatch = false;

  void compare(bool ok, const std::string &what) {
    out << "oracle " << what << ": " << (ok ? "agree" : "MISMATCH") << '\n';
    mismatch = mismatch || !ok;
  }
};

void print_ledger(Report &rep, const smc_result *r, const Options &o) {
  if (o.ledger) {
    rep.out << smc_result_ledger_text(r);
  }
}

int elimination_threshold(const smc_graph *g) {
  int t = 0;
  check(smc_elimination_threshold(g, &t));
  return t;
}

void run_order(const Options &o, Report &rep) {
  const GraphPtr g = load_graph(o);
  const smc_config cfg = o.config();
  smc_result *raw = nullptr;
  if (o.kind == "greedy") {
    check(smc_order_greedy(g.get(), &raw));
  } else if (o.kind == "block") {
    check(smc_order_block(g.get(), &cfg, &raw));
  } else if (o.kind == "adm") {
    check(smc_order_adm(g.get(), &cfg, &raw));
  } else if (o.kind == "wcol") {
    check(smc_order_wcol(g.get(), &cfg, &raw));
  } else {
    throw Failure{kInputError, "unknown ordering '" + o.kind + "' (greedy|block|adm|wcol)"};
  }
  const ResultPtr res(raw);
  rep.out << smc_result_text(res.get());
  if (o.kind == "greedy") {
    const auto deg = metric(res.get(), "degeneracy");
    rep.out << "degeneracy = " << deg << '\n';
    if (o.oracle) {
      rep.compare(deg == elimination_threshold(g.get()), "degeneracy vs elimination threshold");
    }
  } else if (o.kind == "block") {
    const auto deg = metric(res.get(), "degeneracy");
    const auto blocks = metric(res.get(), "blocks");
    rep.out << "blocks = " << blocks << "\nblock_degeneracy = " << deg << " (bound " << 4 * o.d << ")\n";
    if (o.oracle) {
      rep.compare(deg <= 4 * o.d, "block degeneracy <= 4d");
    }
  } else if (o.kind == "adm") {
    rep.out << "blocks = " << metric(res.get(), "blocks") << '\n';
    if (has_metric(res.get(), "admissibility")) {
      rep.out << "adm_" << o.r << " = " << metric(res.get(), "admissibility") << '\n';
    }
  } else {
    const auto measured = metric(res.get(), "wcol");
    rep.out << "wcol_" << o.r << " = " << measured << " (bound g(" << o.r << "," << o.d << ")";
    if (has_metric(res.get(), "bound")) {
      rep.out << " = " << metric(res.get(), "bound");
    } else {
      rep.out << " overflows";
    }
    rep.out << ")\n";
    if (o.oracle) {
      const auto order = values(res.get());
      int again = 0;
      check(smc_wcol_measure(g.get(), order.data(), order.size(), o.r, &again));
      rep.compare(again == measured, "wcol remeasured");
      if (has_metric(res.get(), "bound")) {
        rep.compare(measured <= metric(res.get(), "bound"), "wcol <= g(r,d)");
      }
    }
  }
  print_ledger(rep, res.get(), o);
}

void run_color(const Options &o, Report &rep) {
  const GraphPtr g = load_graph(o);
  const smc_config cfg = o.config();
  smc_result *raw = nullptr;
  if (o.kind == "bnddeg") {
    check(smc_color_bounded_degree(g.get(), &cfg, &raw));
  } else if (o.kind == "degenerate") {
    check(smc_color_degenerate(g.get(), &cfg, &raw));
  } else if (o.kind == "ltd") {
    check(smc_color_low_treedepth(g.get(), &cfg, &raw));
  } else {
    throw Failure{kInputError, "unknown colouring '" + o.kind + "' (bnddeg|degenerate|ltd)"};
  }
  const ResultPtr res(raw);
  rep.out << smc_result_text(res.get());
  rep.out << "colors = " << metric(res.get(), "colors") << '\n';
  if (o.kind == "ltd") {
    rep.out << "radius = " << metric(res.get(), "radius") << "\nwcol = " << metric(res.get(), "wcol") << '\n';
  }
  if (o.oracle) {
    rep.compare(metric(res.get(), "proper") == 1, "proper colouring");
  }
  print_ledger(rep, res.get(), o);
}

void run_forest(const Options &o, Report &rep) {
  const GraphPtr g = load_graph(o);
  smc_result *raw = nullptr;
  check(smc_dfs_forest(g.get(), o.h, &raw));
  const ResultPtr res(raw);
  const auto depth = metric(res.get(), "depth");
  rep.out << smc_result_text(res.get()) << "depth = " << depth << '\n';
  if (o.oracle) {
    rep.compare(metric(res.get(), "separation") == 1, "separation forest");
    if (smc_graph_n(g.get()) <= kOracleTreedepthN) {
      int td = 0;
      check(smc_treedepth_exact(g.get(), &td));
      rep.out << "treedepth = " << td << '\n';
      rep.compare(td <= depth, "treedepth <= forest depth");
      if (o.h > 0 && o.h < 62) {
        rep.compare(td > o.h || depth < (int64_t{1} << o.h), "depth < 2^h");
      }
    }
  }
  print_ledger(rep, res.get(), o);
}

void run_mc(const Options &o, Report &rep) {
  smc_structure *raw_s = nullptr;
  check(smc_structure_load(require_path(o.structure, "--structure").c_str(), &raw_s));
  const StructurePtr s(raw_s);
  if (o.formula.empty()) {
    throw Failure{kInputError, "missing --formula"};
  }
  const smc_config cfg = o.config();
  smc_result *raw = nullptr;
  check(smc_model_check(s.get(), o.formula.c_str(), &cfg, &raw));
  const ResultPtr res(raw);
  rep.out << smc_result_text(res.get());
  if (o.oracle && smc_structure_n(s.get()) <= kOracleModelCheckN) {
    int naive = 0;
    check(smc_naive_eval(s.get(), o.formula.c_str(), &naive));
    rep.compare((naive == 1) == (metric(res.get(), "value") == 1), "naive evaluation");
  }
  print_ledger(rep, res.get(), o);
}

void run_domset(const Options &o, Report &rep) {
  const GraphPtr g = load_graph(o);
  const smc_config cfg = o.config();
  smc_result *raw = nullptr;
  check(smc_domset(g.get(), &cfg, &raw));
  const ResultPtr res(raw);
  const auto size = metric(res.get(), "size");
  const auto wcol = metric(res.get(), "wcol");
  rep.out << "D = " << smc_result_text(res.get()) << "|D| = " << size << '\n'
          << "wcol_" << 2 * o.r << " = " << wcol << '\n';
  if (o.oracle) {
    const auto d = values(res.get());
    int dominating = 0;
    check(smc_is_dominating(g.get(), d.data(), d.size(), o.r, &dominating));
    rep.compare(dominating == 1, "distance-r domination");
    if (smc_graph_n(g.get()) <= kOracleDomsetN) {
      int opt = 0;
      check(smc_domset_exact(g.get(), o.r, &opt));
      std::ostringstream ratio;
      ratio.setf(std::ios::fixed);
      ratio.precision(3);
      ratio << (opt == 0 ? 0.0 : static_cast<double>(size) / opt);
      rep.out << "optimum = " << opt << "\nratio = " << ratio.str() << '\n';
      rep.compare(size <= wcol * opt, "|D| <= wcol * optimum");
    }
  }
  print_ledger(rep, res.get(), o);
}

void run_reduce_circuit(const Options &o, Report &rep) {
  smc_circuit *raw_c = nullptr;
  check(smc_circuit_load(require_path(o.circuit, "--circuit").c_str(), &raw_c));
  const CircuitPtr c(raw_c);
  smc_result *raw = nullptr;
  check(smc_reduce_circuit(c.get(), &raw));
  const ResultPtr res(raw);
  const bool agree = metric(res.get(), "agree") == 1;
  rep.out << "degeneracy<=2: " << yes_no(metric(res.get(), "degeneracy_le2") == 1)
          << "  eval: " << yes_no(metric(res.get(), "eval") == 1) << "  agree: " << yes_no(agree) << '\n';
  rep.mismatch = rep.mismatch || !agree;
  print_ledger(rep, res.get(), o);
}

// `check <kind>`: the matching pipeline with every oracle comparison on, verdict only.
void run_check(Options o, Report &rep) {
  o.oracle = true;
  Report inner;
  const std::string kind = o.kind;
  if (kind == "mc") {
    run_mc(o, inner);
  } else if (kind == "degeneracy") {
    o.kind = "greedy";
    run_order(o, inner);
  } else if (kind == "wcol") {
    run_order(o, inner);
  } else if (kind == "forest") {
    run_forest(o, inner);
  } else if (kind == "domset") {
    run_domset(o, inner);
  } else if (kind == "color") {
    o.kind = "degenerate";
    run_color(o, inner);
  } else if (kind == "circuit") {
    run_reduce_circuit(o, inner);
    inner.compare(!inner.mismatch, "circuit value vs degeneracy<=2");
  } else if (kind == "gadgets") {
    smc_result *raw = nullptr;
    check(smc_gadget_self_test(&raw));
    const ResultPtr res(raw);
    inner.out << smc_result_text(res.get());
    inner.compare(metric(res.get(), "ok") == 1, "gadget self-test");
  } else {
    throw Failure{kInputError,
                  "unknown check '" + kind + "' (mc|degeneracy|wcol|forest|domset|color|circuit|gadgets)"};
  }
  std::istringstream lines(inner.out.str());
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("oracle ", 0) == 0 || line.rfind("phase ", 0) == 0) {
      rep.out << line << '\n';
    }
  }
  rep.out << "check " << kind << ": " << (inner.mismatch ? "MISMATCH" : "ok") << '\n';
  rep.mismatch = inner.mismatch;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Sparse-graph orderings, colourings, forests and first-order model checking"};
  app.set_help_flag("--help", "print usage");
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--r", o.r, "radius r")->check(CLI::NonNegativeNumber);
  app.add_option("--d", o.d, "density parameter d")->check(CLI::NonNegativeNumber);
  app.add_option("--p", o.p, "treedepth colouring depth p")->check(CLI::PositiveNumber);
  app.add_option("--delta", o.delta, "degree bound for bnddeg colouring (default: measured)");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--trials", o.trials, "Monte-Carlo trials (0 = default)")->check(CLI::NonNegativeNumber);
  app.add_option("--bconn-mode", o.bconn_mode, "back-connectivity mode")->check(CLI::IsMember({"exact", "mc"}));
  app.add_flag("--ledger", o.ledger, "print the round ledger");
  app.add_flag("--oracle", o.oracle, "cross-check with brute-force oracles (size-guarded)");
  app.add_option("--graph", o.graph, "graph file");
  app.add_option("--structure", o.structure, "structure file");
  app.add_option("--formula", o.formula, "first-order sentence");
  app.add_option("--circuit", o.circuit, "circuit file");

  auto *order = app.add_subcommand("order", "vertex orderings");
  order->add_option("kind", o.kind, "greedy|block|adm|wcol")->required();
  auto *color = app.add_subcommand("color", "colourings");
  color->add_option("kind", o.kind, "bnddeg|degenerate|ltd")->required();
  auto *forest = app.add_subcommand("forest", "DFS separation forest");
  forest->add_option("--h", o.h, "depth promise: forest depth < 2^h (default: trivial bound)");
  auto *mc = app.add_subcommand("mc", "model-check a sentence");
  mc->add_option("--cover", o.cover, "structure cover")->check(CLI::IsMember({"auto", "colored", "single"}));
  auto *domset = app.add_subcommand("domset", "distance-r dominating set");
  auto *reduce = app.add_subcommand("reduce-circuit", "circuit to degeneracy-2 reduction");
  auto *chk = app.add_subcommand("check", "oracle comparison");
  chk->add_option("kind", o.kind, "mc|degeneracy|wcol|forest|domset|color|circuit|gadgets")->required();
  chk->add_option("--cover", o.cover, "structure cover")->check(CLI::IsMember({"auto", "colored", "single"}));
  chk->add_option("--h", o.h, "depth promise for the forest check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    if (app.get_subcommands().empty() && argc > 1 && argv[1][0] != '-') {
      std::cerr << "error: unknown subcommand '" << argv[1] << "'\n\n" << app.help();
      return kInputError;
    }
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  Report rep;
  try {
    if (*order) {
      run_order(o, rep);
    } else if (*color) {
      run_color(o, rep);
    } else if (*forest) {
      run_forest(o, rep);
    } else if (*mc) {
      run_mc(o, rep);
    } else if (*domset) {
      run_domset(o, rep);
    } else if (*reduce) {
      run_reduce_circuit(o, rep);
    } else if (*chk) {
      run_check(o, rep);
    }
  } catch (const Failure &f) {
    std::cout << rep.out.str();
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
  std::cout << rep.out.str();
  return rep.mismatch ? kMismatch : kOk;
}
