#include "sparsemc/logic/qe.hpp"

#include <algorithm>
#include <map>

#include "sparsemc/error.hpp"

namespace sparsemc::logic {

namespace {

// A satisfiable type over local variables 0..m, the last one being eliminated.
struct TypeSpec {
  int m = 0;
  std::vector<std::vector<std::pair<int, bool>>> lits; // label index in the forest
  std::vector<std::vector<int>> delta;
  std::vector<int> global; // local x-variable -> variable index in alpha
};

class Eliminator {
public:
  Eliminator(LabeledForest &s, const QeOptions &opts) : s_(s), opts_(opts) {
    const auto &f = s_.forest();
    by_depth_.resize(static_cast<std::size_t>(f.depth()) + 2);
    for (Vertex v = 0; v < s_.n(); ++v) {
      by_depth_[f.depth_of(v)].push_back(v);
    }
  }

  std::vector<std::string> added;

  LcdPtr eliminate(const TypeSpec &t, int type_index) {
    const auto &f = s_.forest();
    const int m = t.m;
    const int y = m;
    int h = -1;
    int x1 = 0;
    for (int i = 0; i < m; ++i) {
      if (t.delta[i][y] > h) {
        h = t.delta[i][y];
        x1 = i;
      }
    }
    const int hy = t.delta[y][y];
    const int h1 = t.delta[x1][x1];
    const std::string base = opts_.label_prefix + "qe/" + std::to_string(type_index) + "/";
    std::vector<int> kappa; // kappa[t-1] marks "at least t"
    for (int c = 1; c <= m + 1; ++c) {
      kappa.push_back(fresh(base + "kappa>=" + std::to_string(c)));
    }
    const int anc = fresh(base + "anc");

    std::vector<char> cand(static_cast<std::size_t>(s_.n()), 0);
    if (hy < static_cast<int>(by_depth_.size())) {
      for (const Vertex v : by_depth_[hy]) {
        bool ok = true;
        for (const auto &[label, present] : t.lits[y]) {
          ok = ok && s_.has(label, v) == present;
        }
        cand[v] = ok ? 1 : 0;
      }
    }
    const auto x_check = [&] {
      std::vector<LcdPtr> parts;
      for (int i = 0; i < m; ++i) {
        parts.push_back(pattern_block(t.global[i], t.lits[i]));
        for (int j = i; j < m; ++j) {
          parts.push_back(lcd_atom(s_.relation(), t.delta[i][j], t.global[i], t.global[j]));
        }
      }
      return parts;
    };
    const auto depth_nodes = [&](int depth) -> const std::vector<Vertex> & {
      static const std::vector<Vertex> none;
      return depth < static_cast<int>(by_depth_.size()) ? by_depth_[depth] : none;
    };

    if (h == hy) {
      // y is the depth-h ancestor of x1 itself.
      for (const Vertex u : depth_nodes(h1)) {
        if (cand[f.ancestor_at(u, h)]) {
          s_.set(kappa[0], u);
        }
      }
      auto parts = x_check();
      parts.push_back(lcd_label(s_.label_name(kappa[0]), t.global[x1]));
      return lcd_and_block(std::move(parts));
    }

    // sub[v]: some candidate lies in the subtree of v.
    std::vector<char> sub = cand;
    for (int depth = static_cast<int>(by_depth_.size()) - 1; depth >= 2; --depth) {
      for (const Vertex v : by_depth_[depth]) {
        if (sub[v]) {
          sub[f.parent(v)] = 1;
        }
      }
    }
    std::vector<int> count(static_cast<std::size_t>(s_.n()), 0);
    int roots_with_candidates = 0;
    for (const Vertex c : depth_nodes(h + 1)) {
      if (sub[c]) {
        if (h == 0) {
          ++roots_with_candidates;
        } else {
          ++count[f.parent(c)];
        }
      }
    }
    for (const Vertex u : depth_nodes(h1)) {
      const int k = h == 0 ? roots_with_candidates : count[f.ancestor_at(u, h)];
      for (int c = 1; c <= std::min(k, m + 1); ++c) {
        s_.set(kappa[c - 1], u);
      }
    }
    for (int depth = h + 1; depth < static_cast<int>(by_depth_.size()); ++depth) {
      for (const Vertex u : by_depth_[depth]) {
        if (sub[f.ancestor_at(u, h + 1)]) {
          s_.set(anc, u);
        }
      }
    }

    // Subtrees below the depth-h ancestor of x1 that already hold some x-variable.
    std::vector<int> reps;
    for (int i = 0; i < m; ++i) {
      if (t.delta[i][x1] < h || t.delta[i][i] <= h) {
        continue;
      }
      const bool fresh_group = std::none_of(reps.begin(), reps.end(), [&](int r) { return t.delta[i][r] > h; });
      if (fresh_group) {
        reps.push_back(i);
      }
    }
    std::vector<LcdPtr> options;
    const int groups = static_cast<int>(reps.size());
    for (int mask = 0; mask < (1 << groups); ++mask) {
      std::vector<LcdPtr> parts;
      int occupied = 0;
      for (int g = 0; g < groups; ++g) {
        auto atom = lcd_label(s_.label_name(anc), t.global[reps[g]]);
        if ((mask >> g) & 1) {
          ++occupied;
          parts.push_back(atom);
        } else {
          parts.push_back(lcd_not(atom));
        }
      }
      parts.push_back(lcd_label(s_.label_name(kappa[occupied]), t.global[x1]));
      options.push_back(lcd_and(std::move(parts)));
    }
    auto parts = x_check();
    parts.push_back(lcd_or(std::move(options)));
    return lcd_and_block(std::move(parts));
  }

private:
  // Label literals of one variable; shared by every type with the same pattern.
  LcdPtr pattern_block(int var, const std::vector<std::pair<int, bool>> &lits) {
    auto &slot = patterns_[{var, lits}];
    if (!slot) {
      std::vector<LcdPtr> atoms;
      for (const auto &[label, present] : lits) {
        auto atom = lcd_label(s_.label_name(label), var);
        atoms.push_back(present ? atom : lcd_not(atom));
      }
      slot = lcd_and_block(std::move(atoms));
    }
    return slot;
  }

  int fresh(const std::string &name) {
    if (static_cast<std::size_t>(s_.label_count()) >= opts_.max_labels) {
      fail(ErrorKind::GuardExceeded, "label guard exceeded (" + std::to_string(opts_.max_labels) + " labels)");
    }
    require(s_.label_index(name) < 0, "fresh label '" + name + "' clashes with an existing label");
    added.push_back(name);
    return s_.add_label(name);
  }

  LabeledForest &s_;
  const QeOptions &opts_;
  std::vector<std::vector<Vertex>> by_depth_;
  std::map<std::pair<int, std::vector<std::pair<int, bool>>>, LcdPtr> patterns_;
};

void check_depth(const LabeledForest &t, int d) {
  require(d >= 1, "depth bound must be positive");
  if (t.depth() > d) {
    fail(ErrorKind::PromiseViolated,
         "forest depth " + std::to_string(t.depth()) + " exceeds bound " + std::to_string(d));
  }
}

} // namespace

QeResult qe_trees_step(const LcdPtr &psi, int k, const LabeledForest &t, int d, const QeOptions &opts) {
  require(k >= 1, "quantifier elimination needs at least one remaining variable");
  check_depth(t, d);
  for (const auto &rel : lcd_relation_names(*psi)) {
    require(rel == t.relation(), "formula uses relation '" + rel + "', forest is '" + t.relation() + "'");
  }
  const auto vars = lcd_variables(*psi);
  require(vars.empty() || vars.back() <= k, "formula uses a variable beyond the eliminated one");
  std::vector<int> locals; // local -> global; eliminated variable last
  for (const int v : vars) {
    if (v != k) {
      locals.push_back(v);
    }
  }
  if (locals.empty()) {
    locals.push_back(0);
  }
  locals.push_back(k);
  const int m = static_cast<int>(locals.size()) - 1;
  const int width = m + 1;

  const auto labels_by_var = lcd_labels_by_var(*psi);
  std::vector<std::vector<int>> tested(static_cast<std::size_t>(width));
  for (int j = 0; j < width; ++j) {
    if (const auto it = labels_by_var.find(locals[j]); it != labels_by_var.end()) {
      for (const auto &name : it->second) {
        const int l = t.label_index(name);
        require(l >= 0, "unknown label '" + name + "'");
        tested[j].push_back(l);
      }
    }
  }
  // Interned label patterns per local variable and node.
  std::vector<std::vector<int>> pattern(static_cast<std::size_t>(width), std::vector<int>(static_cast<std::size_t>(t.n())));
  std::vector<std::vector<std::vector<char>>> pattern_bits(static_cast<std::size_t>(width));
  for (int j = 0; j < width; ++j) {
    std::map<std::vector<char>, int> ids;
    for (Vertex v = 0; v < t.n(); ++v) {
      std::vector<char> bits;
      for (const int l : tested[j]) {
        bits.push_back(t.has(l, v) ? 1 : 0);
      }
      const auto [it, inserted] = ids.emplace(bits, static_cast<int>(ids.size()));
      if (inserted) {
        pattern_bits[j].push_back(bits);
      }
      pattern[j][v] = it->second;
    }
  }

  const LcdProgram program(*psi, t);
  std::map<std::vector<int>, bool> truth;
  std::vector<Vertex> tuple(static_cast<std::size_t>(k) + 1, 0);
  std::vector<Vertex> local(static_cast<std::size_t>(width), 0);
  std::vector<int> key;
  if (t.n() > 0) {
    for (;;) {
      key.clear();
      for (int j = 0; j < width; ++j) {
        key.push_back(pattern[j][local[j]]);
      }
      for (int i = 0; i < width; ++i) {
        for (int j = i; j < width; ++j) {
          key.push_back(t.forest().common_ancestors(local[i], local[j]));
        }
      }
      if (truth.find(key) == truth.end()) {
        for (int j = 0; j < width; ++j) {
          tuple[locals[j]] = local[j];
        }
        truth.emplace(key, program.eval(tuple));
      }
      int i = 0;
      while (i < width && ++local[i] == t.n()) {
        local[i++] = 0;
      }
      if (i == width) {
        break;
      }
    }
  }

  QeResult out{t, nullptr, {}, 0};
  Eliminator elim(out.forest, opts);
  std::vector<LcdPtr> disjuncts;
  for (const auto &[type_key, holds] : truth) {
    if (!holds) {
      continue;
    }
    TypeSpec spec;
    spec.m = m;
    spec.global.assign(locals.begin(), locals.end() - 1);
    spec.lits.resize(static_cast<std::size_t>(width));
    for (int j = 0; j < width; ++j) {
      const auto &bits = pattern_bits[j][type_key[j]];
      for (std::size_t b = 0; b < bits.size(); ++b) {
        spec.lits[j].emplace_back(tested[j][b], bits[b] != 0);
      }
    }
    spec.delta.assign(static_cast<std::size_t>(width), std::vector<int>(static_cast<std::size_t>(width), 0));
    std::size_t pos = static_cast<std::size_t>(width);
    for (int i = 0; i < width; ++i) {
      for (int j = i; j < width; ++j) {
        spec.delta[i][j] = spec.delta[j][i] = type_key[pos++];
      }
    }
    disjuncts.push_back(elim.eliminate(spec, out.types++));
  }
  out.alpha = lcd_or(std::move(disjuncts));
  out.new_labels = std::move(elim.added);
  return out;
}

QeResult qe_type_step(const LcdType &type, const LabeledForest &t, int d, const QeOptions &opts) {
  const int k = type.size() - 1;
  require(k >= 1, "quantifier elimination needs at least one remaining variable");
  require(static_cast<int>(type.labels.size()) == type.size(), "type label table has wrong size");
  check_depth(t, d);
  QeResult out{t, lcd_false(), {}, 0};
  if (!type_satisfiable(type, d)) {
    return out;
  }
  TypeSpec spec;
  spec.m = k;
  spec.delta = type.delta;
  for (int i = 0; i < k; ++i) {
    spec.global.push_back(i);
  }
  for (const auto &lits : type.labels) {
    std::vector<std::pair<int, bool>> row;
    for (const auto &[name, present] : lits) {
      const int l = t.label_index(name);
      require(l >= 0, "unknown label '" + name + "'");
      row.emplace_back(l, present);
    }
    spec.lits.push_back(std::move(row));
  }
  Eliminator elim(out.forest, opts);
  out.alpha = elim.eliminate(spec, 0);
  out.types = 1;
  out.new_labels = std::move(elim.added);
  return out;
}

} // namespace sparsemc::logic
