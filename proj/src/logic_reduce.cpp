#include "sparsemc/logic/reduce.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>

#include "sparsemc/error.hpp"
#include "sparsemc/logic/qe.hpp"
#include "sparsemc/treedepth.hpp"

namespace sparsemc::logic {

// ---------------------------------------------------------------- encoding

Encoding encode_substructure(const Structure &a, std::span<const Vertex> vertices, const RootedForest &forest,
                             const std::string &relation, const std::string &label_prefix) {
  const int n = static_cast<int>(vertices.size());
  require(forest.n() == n, "forest size does not match the vertex set");
  const Graph g = gaifman_graph(a);
  const auto sub = induced_subgraph(g, vertices);
  if (!check_separation_forest(sub.graph, forest)) {
    fail(ErrorKind::InvalidArgument, "forest is not a separation forest of the induced Gaifman graph");
  }
  for (Vertex v = 0; v < n; ++v) {
    if (forest.parent(v) >= 0 && !sub.graph.has_edge(v, forest.parent(v))) {
      fail(ErrorKind::InvalidArgument, "forest parent edge is not a Gaifman edge");
    }
  }

  Encoding enc{LabeledForest(forest, relation), sub.to_parent, {}, nullptr};
  const int depth = forest.depth();
  const auto &vocab = a.vocabulary();
  for (std::size_t r = 0; r < vocab.unary.size(); ++r) {
    const std::string name = label_prefix + "u:" + vocab.unary[r];
    const int l = enc.forest.add_label(name);
    for (Vertex v = 0; v < n; ++v) {
      enc.forest.set(l, v, a.unary_holds(static_cast<int>(r), sub.to_parent[v]));
    }
    enc.relation[vocab.unary[r]] = lcd_label(name, 0);
  }
  for (std::size_t r = 0; r < vocab.binary.size(); ++r) {
    const int rel = static_cast<int>(r);
    std::vector<LcdPtr> cases;
    for (int i = 1; i <= depth; ++i) {
      const std::string up = label_prefix + "up" + std::to_string(i) + ":" + vocab.binary[r];
      const std::string down = label_prefix + "down" + std::to_string(i) + ":" + vocab.binary[r];
      const int lu = enc.forest.add_label(up);
      const int ld = enc.forest.add_label(down);
      for (Vertex v = 0; v < n; ++v) {
        if (forest.depth_of(v) < i) {
          continue;
        }
        const Vertex self = sub.to_parent[v];
        const Vertex anc = sub.to_parent[forest.ancestor_at(v, i)];
        enc.forest.set(lu, v, a.binary_holds(rel, self, anc));
        enc.forest.set(ld, v, a.binary_holds(rel, anc, self));
      }
      // x is the depth-i ancestor of y, or y that of x.
      cases.push_back(lcd_and({lcd_atom(relation, i, 0, 0), lcd_atom(relation, i, 0, 1), lcd_label(down, 1)}));
      cases.push_back(lcd_and({lcd_atom(relation, i, 1, 1), lcd_atom(relation, i, 0, 1), lcd_label(up, 0)}));
    }
    enc.relation[vocab.binary[r]] = lcd_or(std::move(cases));
  }
  std::vector<LcdPtr> same;
  for (int i = 1; i <= depth; ++i) {
    same.push_back(lcd_and({lcd_atom(relation, i, 0, 0), lcd_atom(relation, i, 1, 1), lcd_atom(relation, i, 0, 1)}));
  }
  enc.equality = lcd_or(std::move(same));
  return enc;
}

LcdPtr substitute(const Formula &qf, const Encoding &enc, const std::map<std::string, int> &var_index) {
  const auto index = [&](const std::string &v) {
    const auto it = var_index.find(v);
    require(it != var_index.end(), "variable '" + v + "' has no index");
    return it->second;
  };
  switch (qf.kind) {
  case FormulaKind::True:
    return lcd_true();
  case FormulaKind::False:
    return lcd_false();
  case FormulaKind::Atom: {
    const auto it = enc.relation.find(qf.name);
    require(it != enc.relation.end(), "relation '" + qf.name + "' not in the structure");
    const int a = index(qf.args[0]);
    const int b = qf.args.size() > 1 ? index(qf.args[1]) : a;
    return lcd_rename_vars(it->second, {a, b});
  }
  case FormulaKind::Equal:
    return lcd_rename_vars(enc.equality, {index(qf.args[0]), index(qf.args[1])});
  case FormulaKind::Not:
    return lcd_not(substitute(*qf.kids[0], enc, var_index));
  case FormulaKind::And:
  case FormulaKind::Or: {
    std::vector<LcdPtr> kids;
    for (const auto &k : qf.kids) {
      kids.push_back(substitute(*k, enc, var_index));
    }
    return qf.kind == FormulaKind::And ? lcd_and(std::move(kids)) : lcd_or(std::move(kids));
  }
  case FormulaKind::Exists:
  case FormulaKind::Forall:
    break;
  }
  fail(ErrorKind::InvalidArgument, "substitution needs a quantifier-free formula");
}

// ---------------------------------------------------------------- existential reduction

namespace {

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::size_t factor = n - k + i;
    if (result > cap * i / factor + 1) {
      return cap + 1;
    }
    result = result * factor / i;
    if (result > cap) {
      return cap + 1;
    }
  }
  return result;
}

void check_free_vars(const Formula &phi, const std::vector<std::string> &free_vars) {
  require(!free_vars.empty(), "reduction needs at least one free variable");
  std::set<std::string> listed(free_vars.begin(), free_vars.end());
  require(listed.size() == free_vars.size(), "free variable listed twice");
  for (const auto &v : free_variables(phi)) {
    require(listed.count(v) != 0, "free variable '" + v + "' not listed");
  }
}

struct Cover {
  std::vector<std::vector<Vertex>> parts;
  int height = 1; // dfs_forest bound
  bool colored = false;
  int colors_used = 0;
  RoundLedger ledger;
};

Cover single_cover(int n) {
  Cover c;
  c.parts.emplace_back();
  for (Vertex v = 0; v < n; ++v) {
    c.parts.back().push_back(v);
  }
  c.height = trivial_depth_bound(n);
  return c;
}

Cover build_cover(const Graph &g, int p, const ClassParams &params, const BconnConfig &cfg,
                  const ReduceOptions &opts) {
  if (opts.cover == CoverMode::Single) {
    return single_cover(g.n());
  }
  LowTreedepthColoring lt;
  try {
    lt = low_treedepth_coloring(g, {params.r, params.d, p}, cfg);
  } catch (const Error &e) {
    if (opts.cover == CoverMode::Auto && e.kind() == ErrorKind::GuardExceeded) {
      return single_cover(g.n());
    }
    throw;
  }
  std::vector<int> used;
  for (const int c : lt.coloring.color) {
    used.push_back(c);
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  const std::size_t s = std::min<std::size_t>(static_cast<std::size_t>(p), used.size());
  const std::size_t limit = opts.cover == CoverMode::Auto ? std::min(opts.auto_subset_budget, opts.max_color_subsets)
                                                          : opts.max_color_subsets;
  const std::size_t count = binomial_capped(used.size(), s, limit);
  if (count > limit) {
    if (opts.cover == CoverMode::Auto) {
      return single_cover(g.n());
    }
    fail(ErrorKind::GuardExceeded, "colour-subset guard exceeded: C(" + std::to_string(used.size()) + "," +
                                       std::to_string(s) + ") > " + std::to_string(opts.max_color_subsets));
  }
  Cover c;
  c.colored = true;
  c.height = p;
  c.colors_used = static_cast<int>(used.size());
  c.ledger = std::move(lt.ledger);
  // Lexicographic s-subsets of the used colours.
  std::vector<std::size_t> pick(s);
  for (std::size_t i = 0; i < s; ++i) {
    pick[i] = i;
  }
  std::vector<int> slot(static_cast<std::size_t>(*std::max_element(used.begin(), used.end())) + 1, -1);
  for (std::size_t i = 0; i < used.size(); ++i) {
    slot[used[i]] = static_cast<int>(i);
  }
  for (;;) {
    std::vector<char> in(used.size(), 0);
    for (const std::size_t i : pick) {
      in[i] = 1;
    }
    std::vector<Vertex> part;
    for (Vertex v = 0; v < g.n(); ++v) {
      if (in[slot[lt.coloring.color[v]]]) {
        part.push_back(v);
      }
    }
    c.parts.push_back(std::move(part));
    std::size_t i = s;
    while (i > 0 && pick[i - 1] == used.size() - s + (i - 1)) {
      --i;
    }
    if (i == 0) {
      break;
    }
    ++pick[i - 1];
    for (std::size_t j = i; j < s; ++j) {
      pick[j] = pick[j - 1] + 1;
    }
  }
  return c;
}

void copy_labels(const LabeledForest &from, const std::vector<Vertex> &to_global,
                 const std::vector<std::string> &names, Skeleton &to) {
  for (const auto &name : names) {
    const int src = from.label_index(name);
    if (src < 0) {
      continue;
    }
    const int dst = to.add_label(name);
    for (Vertex v = 0; v < from.n(); ++v) {
      if (from.has(src, v)) {
        to.set_label(dst, to_global[v]);
      }
    }
  }
}

// Rewrites a first-order formula into a quantifier-free one over a growing labeled forest,
// eliminating quantifiers innermost first so each step only sees the free variables of its subformula.
class TreeEliminator {
public:
  TreeEliminator(const Encoding &enc, LabeledForest &current, std::string prefix, std::size_t max_labels)
      : enc_(enc), current_(current), prefix_(std::move(prefix)), max_labels_(max_labels),
        depth_(std::max(1, current.depth())) {}

  LcdPtr run(const Formula &f, std::map<std::string, int> scope) {
    bound_ = static_cast<int>(scope.size());
    scope_ = std::move(scope);
    return walk(f);
  }

  std::size_t types() const { return types_; }
  int steps() const { return steps_; }

private:
  LcdPtr walk(const Formula &f) {
    switch (f.kind) {
    case FormulaKind::Not:
      return lcd_not(walk(*f.kids[0]));
    case FormulaKind::And:
    case FormulaKind::Or: {
      if (is_quantifier_free(f)) {
        return substitute(f, enc_, scope_);
      }
      std::vector<LcdPtr> kids;
      for (const auto &k : f.kids) {
        kids.push_back(walk(*k));
      }
      return f.kind == FormulaKind::And ? lcd_and(std::move(kids)) : lcd_or(std::move(kids));
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      const bool exists = f.kind == FormulaKind::Exists;
      const int index = bound_++;
      const auto saved = scope_.find(f.name) == scope_.end() ? std::optional<int>() : scope_[f.name];
      scope_[f.name] = index;
      const LcdPtr body = walk(*f.kids[0]);
      if (saved) {
        scope_[f.name] = *saved;
      } else {
        scope_.erase(f.name);
      }
      --bound_;
      QeOptions qo;
      qo.label_prefix = prefix_ + "q" + std::to_string(steps_++) + "/";
      qo.max_labels = max_labels_;
      auto step = qe_trees_step(exists ? body : lcd_not(body), index, current_, depth_, qo);
      types_ += static_cast<std::size_t>(step.types);
      current_ = std::move(step.forest);
      return exists ? step.alpha : lcd_not(step.alpha);
    }
    default:
      return substitute(f, enc_, scope_);
    }
  }

  const Encoding &enc_;
  LabeledForest &current_;
  std::string prefix_;
  std::size_t max_labels_;
  int depth_;
  std::map<std::string, int> scope_;
  int bound_ = 0;
  int steps_ = 0;
  std::size_t types_ = 0;
};

RootedForest globalize(const RootedForest &local, const std::vector<Vertex> &to_global, int n) {
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < local.n(); ++v) {
    if (local.parent(v) >= 0) {
      parent[to_global[v]] = to_global[local.parent(v)];
    }
  }
  return RootedForest(std::move(parent));
}

} // namespace

Reduction reduce_existential(const FormulaPtr &phi, const std::vector<std::string> &free_vars, const Structure &a,
                             const ClassParams &params, const BconnConfig &cfg, const ReduceOptions &opts) {
  check_free_vars(*phi, free_vars);
  require(a.n() >= 1, "structure must be non-empty");
  NameSupply names(all_variables(*phi));
  for (const auto &v : free_vars) {
    names.reserve(v);
  }
  const PrenexForm pre = prenexify(phi, &names);
  const int k = static_cast<int>(free_vars.size());
  const int ell = static_cast<int>(pre.prefix.size());
  std::map<std::string, int> free_index;
  for (int i = 0; i < k; ++i) {
    free_index[free_vars[i]] = i;
  }

  Reduction out{Skeleton(a.n()), nullptr, free_vars, {}, {}};
  out.stats.p = k + ell;
  const Graph g = gaifman_graph(a);
  Cover cover = build_cover(g, k + ell, params, cfg, opts);
  out.stats.colored = cover.colored;
  out.stats.colors_used = cover.colors_used;
  out.ledger = std::move(cover.ledger);

  std::vector<LcdPtr> disjuncts;
  std::int64_t forest_rounds = 0;
  for (std::size_t c = 0; c < cover.parts.size(); ++c) {
    const auto &part = cover.parts[c];
    if (part.empty()) {
      continue;
    }
    const std::string tag = "C" + std::to_string(c);
    const auto sub = induced_subgraph(g, part);
    auto forest = dfs_forest(sub.graph, cover.height);
    forest_rounds = std::max(forest_rounds, forest.ledger.total());
    Encoding enc = encode_substructure(a, part, forest.forest, tag, tag + "/");
    LabeledForest current = enc.forest;
    TreeEliminator elim(enc, current, tag + "/", opts.max_labels);
    LcdPtr alpha = elim.run(*phi, free_index);
    out.stats.qe_types += elim.types();
    ++out.stats.subsets;
    if (alpha->kind == LcdKind::False && cover.colored) {
      continue;
    }
    out.skeleton.add_forest(tag, globalize(current.forest(), enc.to_global, a.n()));
    copy_labels(current, enc.to_global, lcd_label_names(*alpha), out.skeleton);
    const std::string cls = "class/" + tag;
    const int cl = out.skeleton.add_label(cls);
    for (const Vertex v : part) {
      out.skeleton.set_label(cl, v);
    }
    std::vector<LcdPtr> parts{alpha};
    for (int i = 0; i < k; ++i) {
      parts.push_back(lcd_label(cls, i));
    }
    disjuncts.push_back(lcd_and(std::move(parts)));
    out.stats.labels = out.skeleton.label_names().size();
    if (out.stats.labels > opts.max_labels) {
      fail(ErrorKind::GuardExceeded, "label guard exceeded (" + std::to_string(opts.max_labels) + " labels)");
    }
  }
  out.alpha = lcd_or(std::move(disjuncts));
  out.ledger.add("dfs_forest", forest_rounds);
  out.ledger.add("qe_trees_step", ell);
  return out;
}

// ---------------------------------------------------------------- back-translation

namespace {

class ExistentialWriter {
public:
  ExistentialWriter(const std::vector<std::string> &vars, int d) : vars_(vars), d_(d), names_(vars) {}

  FormulaPtr write(const LcdNode &f, bool negate) {
    switch (f.kind) {
    case LcdKind::True:
      return negate ? f_false() : f_true();
    case LcdKind::False:
      return negate ? f_true() : f_false();
    case LcdKind::Label: {
      auto atom = f_atom(f.name, {vars_.at(f.a)});
      return negate ? f_not(atom) : atom;
    }
    case LcdKind::Lcd: {
      if (!negate) {
        return exactly(f.name, f.depth, f.a, f.b);
      }
      std::vector<FormulaPtr> other;
      for (int j = 0; j <= d_; ++j) {
        if (j != f.depth) {
          other.push_back(exactly(f.name, j, f.a, f.b));
        }
      }
      return f_or(std::move(other));
    }
    case LcdKind::Not:
      return write(*f.kids[0], !negate);
    case LcdKind::And:
    case LcdKind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto &k : f.kids) {
        kids.push_back(write(*k, negate));
      }
      return ((f.kind == LcdKind::And) != negate) ? f_and(std::move(kids)) : f_or(std::move(kids));
    }
    }
    return f_false();
  }

private:
  // Exactly `i` common ancestors: walk both root paths explicitly.
  FormulaPtr exactly(const std::string &rel, int i, int a, int b) {
    const std::string x = vars_.at(a);
    const std::string y = vars_.at(b);
    if (a == b) {
      if (i < 1 || i > d_) {
        return f_false();
      }
      std::vector<std::string> chain;
      for (int j = 1; j < i; ++j) {
        chain.push_back(names_.fresh("w"));
      }
      chain.push_back(x);
      return quantify(chain, {x}, path_atoms(rel, chain));
    }
    std::vector<FormulaPtr> options;
    for (int da = std::max(i, 1); da <= d_; ++da) {
      for (int db = std::max(i, 1); db <= d_; ++db) {
        std::vector<std::string> cx(static_cast<std::size_t>(da));
        std::vector<std::string> cy(static_cast<std::size_t>(db));
        std::vector<FormulaPtr> atoms;
        for (int j = 1; j <= i; ++j) {
          std::string shared;
          if (j == da && j == db) {
            shared = x;
            atoms.push_back(f_eq(x, y));
          } else if (j == da) {
            shared = x;
          } else if (j == db) {
            shared = y;
          } else {
            shared = names_.fresh("w");
          }
          cx[j - 1] = shared;
          cy[j - 1] = shared;
        }
        for (int j = i + 1; j <= da; ++j) {
          cx[j - 1] = j == da ? x : names_.fresh("w");
        }
        for (int j = i + 1; j <= db; ++j) {
          cy[j - 1] = j == db ? y : names_.fresh("w");
        }
        for (auto &atom : path_atoms(rel, cx)) {
          atoms.push_back(atom);
        }
        if (i == 0) {
          atoms.push_back(f_atom(root_label(rel), {cy[0]}));
        }
        for (int j = std::max(i, 1); j < db; ++j) {
          atoms.push_back(f_atom(rel, {cy[j - 1], cy[j]}));
        }
        if (i < da && i < db) {
          atoms.push_back(f_not(f_eq(cx[i], cy[i])));
        }
        std::vector<std::string> all = cx;
        all.insert(all.end(), cy.begin(), cy.end());
        options.push_back(quantify(all, {x, y}, std::move(atoms)));
      }
    }
    return f_or(std::move(options));
  }

  static std::vector<FormulaPtr> path_atoms(const std::string &rel, const std::vector<std::string> &chain) {
    std::vector<FormulaPtr> atoms{f_atom(root_label(rel), {chain[0]})};
    for (std::size_t j = 1; j < chain.size(); ++j) {
      atoms.push_back(f_atom(rel, {chain[j - 1], chain[j]}));
    }
    return atoms;
  }

  static FormulaPtr quantify(const std::vector<std::string> &chain, const std::vector<std::string> &free,
                             std::vector<FormulaPtr> atoms) {
    FormulaPtr body = f_and(std::move(atoms));
    std::set<std::string> seen(free.begin(), free.end());
    std::vector<std::string> bound;
    for (const auto &v : chain) {
      if (seen.insert(v).second) {
        bound.push_back(v);
      }
    }
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      body = f_exists(*it, body);
    }
    return body;
  }

  const std::vector<std::string> &vars_;
  int d_;
  NameSupply names_;
};

} // namespace

FormulaPtr lcd_to_existential(const LcdNode &alpha, const std::vector<std::string> &var_names, int d,
                              const std::vector<std::string> &relations) {
  require(d >= 1, "depth bound must be positive");
  require(lcd_var_count(alpha) <= static_cast<int>(var_names.size()), "not enough variable names");
  for (const auto &rel : lcd_relation_names(alpha)) {
    require(std::find(relations.begin(), relations.end(), rel) != relations.end(),
            "relation '" + rel + "' not among the skeleton relations");
  }
  ExistentialWriter writer(var_names, d);
  return writer.write(alpha, false);
}

// ---------------------------------------------------------------- full reduction

namespace {

Reduction chain_route(const FormulaPtr &phi, const std::vector<std::string> &free_vars, const Structure &a,
                      std::size_t max_labels) {
  const int k = static_cast<int>(free_vars.size());
  const Graph g = gaifman_graph(a);
  std::vector<Vertex> all(static_cast<std::size_t>(a.n()));
  for (Vertex v = 0; v < a.n(); ++v) {
    all[v] = v;
  }
  auto forest = dfs_forest(g, trivial_depth_bound(a.n()));
  const std::string tag = "chain";
  Encoding enc = encode_substructure(a, all, forest.forest, tag, tag + "/");
  LabeledForest current = enc.forest;
  std::map<std::string, int> free_index;
  for (int i = 0; i < k; ++i) {
    free_index[free_vars[i]] = i;
  }
  TreeEliminator elim(enc, current, tag + "/", max_labels);
  LcdPtr alpha = elim.run(*phi, free_index);

  Reduction out{Skeleton(a.n()), alpha, free_vars, {}, {}};
  out.stats.qe_types = elim.types();
  out.skeleton.add_forest(current.relation(), current.forest());
  copy_labels(current, all, lcd_label_names(*alpha), out.skeleton);
  out.stats.subsets = 1;
  out.stats.labels = out.skeleton.label_names().size();
  out.stats.p = k + quantifier_count(*phi);
  out.ledger.add("dfs_forest", forest.ledger.total());
  out.ledger.add("qe_trees_step", elim.steps());
  return out;
}

Reduction existential_route(const PrenexForm &pnf, const std::vector<std::string> &free_vars, const Structure &a,
                            const ClassParams &params, const BconnConfig &cfg, const ReduceOptions &opts) {
  const int k = static_cast<int>(free_vars.size());
  const int m = static_cast<int>(pnf.prefix.size());
  std::vector<std::string> vars = free_vars;
  for (const auto &q : pnf.prefix) {
    vars.push_back(q.var);
  }
  Reduction current = reduce_existential(pnf.matrix, vars, a, params, cfg, opts);
  for (int j = m - 1; j >= 0; --j) {
    const bool exists = pnf.prefix[j].exists;
    const std::vector<std::string> names(vars.begin(), vars.begin() + k + j + 1);
    const LcdPtr beta = exists ? current.alpha : lcd_not(current.alpha);
    const auto gamma = lcd_to_existential(*beta, names, std::max(1, current.skeleton.depth()),
                                          current.skeleton.relation_names());
    const auto body = f_exists(vars[k + j], gamma);
    const int witnesses = quantifier_count(*body) - 1;
    if (witnesses > opts.max_witness_vars) {
      fail(ErrorKind::GuardExceeded, "existential back-translation needs " + std::to_string(witnesses) +
                                         " witness variables (guard " + std::to_string(opts.max_witness_vars) + ")");
    }
    const Structure skeleton_structure = current.skeleton.to_structure(true);
    Reduction next = reduce_existential(body, std::vector<std::string>(names.begin(), names.end() - 1),
                                        skeleton_structure, params, cfg, opts);
    if (!exists) {
      next.alpha = lcd_not(next.alpha);
    }
    next.ledger.append(current.ledger);
    current = std::move(next);
  }
  return current;
}

} // namespace

Reduction reduce_formula(const FormulaPtr &phi, const std::vector<std::string> &free_vars, const Structure &a,
                         const ClassParams &params, const BconnConfig &cfg, const ReduceOptions &opts) {
  check_free_vars(*phi, free_vars);
  NameSupply names(all_variables(*phi));
  for (const auto &v : free_vars) {
    names.reserve(v);
  }
  const PrenexForm pnf = prenex_normal_form(phi, &names);
  if (pnf.alternation_blocks() <= 1) {
    if (pnf.prefix.empty() || pnf.prefix.front().exists) {
      return reduce_existential(pnf.to_formula(), free_vars, a, params, cfg, opts);
    }
    PrenexForm dual{pnf.prefix, f_not(pnf.matrix)};
    for (auto &q : dual.prefix) {
      q.exists = true;
    }
    Reduction r = reduce_existential(dual.to_formula(), free_vars, a, params, cfg, opts);
    r.alpha = lcd_not(r.alpha);
    return r;
  }
  if (opts.route == ExistsRoute::Existential) {
    return existential_route(pnf, free_vars, a, params, cfg, opts);
  }
  return chain_route(phi, free_vars, a, opts.max_labels);
}

ModelCheckResult model_check(const Structure &a, const FormulaPtr &sentence, const ClassParams &params,
                             const BconnConfig &cfg, const ReduceOptions &opts) {
  require(free_variables(*sentence).empty(), "model checking needs a sentence");
  require(a.n() >= 1, "structure must be non-empty");
  NameSupply names(all_variables(*sentence));
  const std::string z = names.fresh("z");
  Reduction r = reduce_formula(sentence, {z}, a, params, cfg, opts);
  ModelCheckResult out;
  const std::vector<Vertex> element{0};
  out.value = eval_lcd(r.skeleton, *r.alpha, element);
  out.stats = r.stats;
  out.ledger = std::move(r.ledger);
  return out;
}

bool is_guarded(const Skeleton &b, const Structure &a) {
  if (b.n() != a.n()) {
    return false;
  }
  const Graph g = gaifman_graph(a);
  for (std::size_t f = 0; f < b.relation_names().size(); ++f) {
    const auto &forest = b.forest(static_cast<int>(f));
    for (Vertex v = 0; v < b.n(); ++v) {
      if (forest.parent(v) >= 0 && !g.has_edge(v, forest.parent(v))) {
        return false;
      }
    }
  }
  return true;
}

} // namespace sparsemc::logic
