#include "sparsemc/logic/lcd.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "sparsemc/error.hpp"
#include "sparsemc/random.hpp"

namespace sparsemc::logic {

namespace {

LcdPtr make(LcdKind kind) {
  auto f = std::make_shared<LcdNode>();
  f->kind = kind;
  return f;
}

LcdPtr junction(LcdKind kind, std::vector<LcdPtr> kids) {
  const LcdKind unit = kind == LcdKind::And ? LcdKind::True : LcdKind::False;
  const LcdKind absorbing = kind == LcdKind::And ? LcdKind::False : LcdKind::True;
  std::vector<LcdPtr> flat;
  for (auto &k : kids) {
    if (k->kind == unit) {
      continue;
    }
    if (k->kind == absorbing) {
      return k;
    }
    if (k->kind == kind) {
      flat.insert(flat.end(), k->kids.begin(), k->kids.end());
    } else {
      flat.push_back(std::move(k));
    }
  }
  if (flat.empty()) {
    return make(unit);
  }
  if (flat.size() == 1) {
    return flat.front();
  }
  auto f = std::make_shared<LcdNode>();
  f->kind = kind;
  f->kids = std::move(flat);
  return f;
}

void print(const LcdNode &f, const std::vector<std::string> *names, std::ostringstream &out) {
  const auto var = [&](int v) { return names != nullptr ? names->at(v) : "x" + std::to_string(v); };
  switch (f.kind) {
  case LcdKind::True:
    out << "true";
    break;
  case LcdKind::False:
    out << "false";
    break;
  case LcdKind::Label:
    out << f.name << '(' << var(f.a) << ')';
    break;
  case LcdKind::Lcd:
    out << "lcd[" << f.name << ',' << f.depth << "](" << var(f.a) << ',' << var(f.b) << ')';
    break;
  case LcdKind::Not:
    out << '!';
    if (f.kids[0]->kind == LcdKind::And || f.kids[0]->kind == LcdKind::Or) {
      out << '(';
      print(*f.kids[0], names, out);
      out << ')';
    } else {
      print(*f.kids[0], names, out);
    }
    break;
  case LcdKind::And:
  case LcdKind::Or:
    for (std::size_t i = 0; i < f.kids.size(); ++i) {
      if (i) {
        out << (f.kind == LcdKind::And ? " & " : " | ");
      }
      const bool wrap = f.kids[i]->kind == LcdKind::And || f.kids[i]->kind == LcdKind::Or;
      if (wrap) {
        out << '(';
      }
      print(*f.kids[i], names, out);
      if (wrap) {
        out << ')';
      }
    }
    break;
  }
}

// Visits each distinct node once; formulas may share subtrees.
template <class Fn> void visit(const LcdNode &f, const Fn &fn) {
  std::unordered_set<const LcdNode *> seen;
  std::vector<const LcdNode *> stack{&f};
  while (!stack.empty()) {
    const LcdNode *n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) {
      continue;
    }
    fn(*n);
    for (const auto &k : n->kids) {
      stack.push_back(k.get());
    }
  }
}

LcdPtr rename(const LcdPtr &f, const std::vector<int> &new_index, std::unordered_map<const LcdNode *, LcdPtr> &memo) {
  if (const auto it = memo.find(f.get()); it != memo.end()) {
    return it->second;
  }
  LcdPtr out;
  switch (f->kind) {
  case LcdKind::True:
  case LcdKind::False:
    out = f;
    break;
  case LcdKind::Label:
    out = lcd_label(f->name, new_index.at(f->a));
    break;
  case LcdKind::Lcd:
    out = lcd_atom(f->name, f->depth, new_index.at(f->a), new_index.at(f->b));
    break;
  case LcdKind::Not:
    out = lcd_not(rename(f->kids[0], new_index, memo));
    break;
  default: {
    std::vector<LcdPtr> kids;
    for (const auto &k : f->kids) {
      kids.push_back(rename(k, new_index, memo));
    }
    out = f->kind == LcdKind::And ? lcd_and(std::move(kids)) : lcd_or(std::move(kids));
  }
  }
  memo.emplace(f.get(), out);
  return out;
}

} // namespace

LcdPtr lcd_true() {
  static const LcdPtr t = make(LcdKind::True);
  return t;
}

LcdPtr lcd_false() {
  static const LcdPtr f = make(LcdKind::False);
  return f;
}

LcdPtr lcd_label(std::string label, int var) {
  require(var >= 0, "negative variable index");
  auto f = std::make_shared<LcdNode>();
  f->kind = LcdKind::Label;
  f->name = std::move(label);
  f->a = f->b = var;
  return f;
}

LcdPtr lcd_atom(std::string relation, int depth, int a, int b) {
  require(a >= 0 && b >= 0, "negative variable index");
  require(depth >= 0, "negative common-ancestor count");
  auto f = std::make_shared<LcdNode>();
  f->kind = LcdKind::Lcd;
  f->name = std::move(relation);
  f->depth = depth;
  f->a = a;
  f->b = b;
  return f;
}

LcdPtr lcd_not(LcdPtr f) {
  switch (f->kind) {
  case LcdKind::True:
    return lcd_false();
  case LcdKind::False:
    return lcd_true();
  case LcdKind::Not:
    return f->kids[0];
  default: {
    auto n = std::make_shared<LcdNode>();
    n->kind = LcdKind::Not;
    n->kids.push_back(std::move(f));
    return n;
  }
  }
}

LcdPtr lcd_and(std::vector<LcdPtr> kids) { return junction(LcdKind::And, std::move(kids)); }

LcdPtr lcd_and_block(std::vector<LcdPtr> kids) {
  for (const auto &k : kids) {
    if (k->kind == LcdKind::False) {
      return k;
    }
  }
  std::erase_if(kids, [](const LcdPtr &k) { return k->kind == LcdKind::True; });
  if (kids.empty()) {
    return lcd_true();
  }
  if (kids.size() == 1) {
    return kids.front();
  }
  auto f = std::make_shared<LcdNode>();
  f->kind = LcdKind::And;
  f->kids = std::move(kids);
  return f;
}
LcdPtr lcd_or(std::vector<LcdPtr> kids) { return junction(LcdKind::Or, std::move(kids)); }

std::string to_string(const LcdNode &f, const std::vector<std::string> *var_names) {
  std::ostringstream out;
  print(f, var_names, out);
  return out.str();
}

int lcd_var_count(const LcdNode &f) {
  int count = 0;
  visit(f, [&](const LcdNode &n) {
    if (n.kind == LcdKind::Label || n.kind == LcdKind::Lcd) {
      count = std::max({count, n.a + 1, n.b + 1});
    }
  });
  return count;
}

std::size_t lcd_size(const LcdNode &f) {
  std::size_t size = 0;
  visit(f, [&](const LcdNode &) { ++size; });
  return size;
}

std::vector<int> lcd_variables(const LcdNode &f) {
  std::set<int> vars;
  visit(f, [&](const LcdNode &n) {
    if (n.kind == LcdKind::Label || n.kind == LcdKind::Lcd) {
      vars.insert(n.a);
      vars.insert(n.b);
    }
  });
  return {vars.begin(), vars.end()};
}

std::map<int, std::vector<std::string>> lcd_labels_by_var(const LcdNode &f) {
  std::map<int, std::set<std::string>> sets;
  visit(f, [&](const LcdNode &n) {
    if (n.kind == LcdKind::Label) {
      sets[n.a].insert(n.name);
    }
  });
  std::map<int, std::vector<std::string>> out;
  for (auto &[v, s] : sets) {
    out[v] = {s.begin(), s.end()};
  }
  return out;
}

std::vector<std::string> lcd_label_names(const LcdNode &f) {
  std::set<std::string> names;
  visit(f, [&](const LcdNode &n) {
    if (n.kind == LcdKind::Label) {
      names.insert(n.name);
    }
  });
  return {names.begin(), names.end()};
}

std::vector<std::string> lcd_relation_names(const LcdNode &f) {
  std::set<std::string> names;
  visit(f, [&](const LcdNode &n) {
    if (n.kind == LcdKind::Lcd) {
      names.insert(n.name);
    }
  });
  return {names.begin(), names.end()};
}

LcdPtr lcd_rename_vars(const LcdPtr &f, const std::vector<int> &new_index) {
  std::unordered_map<const LcdNode *, LcdPtr> memo;
  return rename(f, new_index, memo);
}

// ---------------------------------------------------------------- forests and skeletons

LabeledForest::LabeledForest(RootedForest forest, std::string relation)
    : forest_(std::move(forest)), relation_(std::move(relation)) {
  require(!relation_.empty(), "empty forest relation name");
}

int LabeledForest::add_label(const std::string &name) {
  require(!name.empty(), "empty label name");
  require(index_.emplace(name, label_count()).second, "label '" + name + "' already exists");
  names_.push_back(name);
  labels_.emplace_back(static_cast<std::size_t>(n()), 0);
  return label_count() - 1;
}

int LabeledForest::label_index(std::string_view name) const {
  const auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int Skeleton::add_label(const std::string &name) {
  require(!name.empty(), "empty label name");
  require(forest_index_.find(name) == forest_index_.end(), "'" + name + "' is already a relation");
  const int id = static_cast<int>(label_names_.size());
  require(label_index_.emplace(name, id).second, "label '" + name + "' already exists");
  label_names_.push_back(name);
  labels_.emplace_back(static_cast<std::size_t>(n_), 0);
  return id;
}

int Skeleton::label_index(std::string_view name) const {
  const auto it = label_index_.find(name);
  return it == label_index_.end() ? -1 : it->second;
}

int Skeleton::add_forest(const std::string &relation, RootedForest forest) {
  require(!relation.empty(), "empty relation name");
  require(forest.n() == n_, "forest size does not match skeleton");
  require(label_index_.find(relation) == label_index_.end(), "'" + relation + "' is already a label");
  const int id = static_cast<int>(forests_.size());
  require(forest_index_.emplace(relation, id).second, "relation '" + relation + "' already exists");
  relation_names_.push_back(relation);
  forests_.push_back(std::move(forest));
  return id;
}

int Skeleton::forest_index(std::string_view relation) const {
  const auto it = forest_index_.find(relation);
  return it == forest_index_.end() ? -1 : it->second;
}

int Skeleton::depth() const {
  int d = 0;
  for (const auto &f : forests_) {
    d = std::max(d, f.depth());
  }
  return d;
}

std::string root_label(const std::string &relation) { return "root:" + relation; }

Structure Skeleton::to_structure(bool with_roots) const {
  Structure s(n_);
  for (std::size_t l = 0; l < label_names_.size(); ++l) {
    const int rel = s.add_unary(label_names_[l]);
    for (Vertex v = 0; v < n_; ++v) {
      if (labels_[l][v]) {
        s.set_unary(rel, v);
      }
    }
  }
  for (std::size_t f = 0; f < forests_.size(); ++f) {
    const int rel = s.add_binary(relation_names_[f]);
    for (Vertex v = 0; v < n_; ++v) {
      if (forests_[f].parent(v) >= 0) {
        s.add_pair(rel, forests_[f].parent(v), v);
      }
    }
  }
  if (with_roots) {
    for (std::size_t f = 0; f < forests_.size(); ++f) {
      const int rel = s.add_unary(root_label(relation_names_[f]));
      for (Vertex v = 0; v < n_; ++v) {
        if (forests_[f].parent(v) < 0) {
          s.set_unary(rel, v);
        }
      }
    }
  }
  return s;
}

Skeleton Skeleton::from_structure(const Structure &s, int max_depth) {
  Skeleton out(s.n());
  const auto &vocab = s.vocabulary();
  for (std::size_t r = 0; r < vocab.unary.size(); ++r) {
    const int l = out.add_label(vocab.unary[r]);
    for (Vertex v = 0; v < s.n(); ++v) {
      if (s.unary_holds(static_cast<int>(r), v)) {
        out.set_label(l, v);
      }
    }
  }
  for (std::size_t r = 0; r < vocab.binary.size(); ++r) {
    std::vector<Vertex> parent(static_cast<std::size_t>(s.n()), -1);
    for (const auto &[u, v] : s.pairs(static_cast<int>(r))) {
      if (u == v || parent[v] >= 0) {
        fail(ErrorKind::InvalidArgument, "relation '" + vocab.binary[r] + "' is not a parent relation");
      }
      parent[v] = u;
    }
    RootedForest forest(std::move(parent));
    if (forest.depth() > max_depth) {
      fail(ErrorKind::InvalidArgument, "relation '" + vocab.binary[r] + "' has depth " +
                                           std::to_string(forest.depth()) + " > " + std::to_string(max_depth));
    }
    out.add_forest(vocab.binary[r], std::move(forest));
  }
  return out;
}

// ---------------------------------------------------------------- compiled evaluation

std::size_t LcdProgram::VecHash::operator()(const std::vector<int> &v) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (const int x : v) {
    h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)));
  }
  return static_cast<std::size_t>(h);
}

LcdProgram::LcdProgram(const LcdNode &f, const LabeledForest &target) : universe_(target.n()) {
  find_label_ = [&target](const std::string &name) -> const std::vector<char> * {
    const int l = target.label_index(name);
    return l < 0 ? nullptr : &target.members(l);
  };
  find_forest_ = [&target](const std::string &name) -> const RootedForest * {
    return name == target.relation() ? &target.forest() : nullptr;
  };
  vars_ = lcd_var_count(f);
  root_ = compile(f);
  find_label_ = nullptr;
  find_forest_ = nullptr;
  compiled_.clear();
  fixed_memo_.clear();
}

LcdProgram::LcdProgram(const LcdNode &f, const Skeleton &target) : universe_(target.n()) {
  find_label_ = [&target](const std::string &name) -> const std::vector<char> * {
    const int l = target.label_index(name);
    return l < 0 ? nullptr : &target.members(l);
  };
  find_forest_ = [&target](const std::string &name) -> const RootedForest * {
    const int i = target.forest_index(name);
    return i < 0 ? nullptr : &target.forest(i);
  };
  vars_ = lcd_var_count(f);
  root_ = compile(f);
  find_label_ = nullptr;
  find_forest_ = nullptr;
  compiled_.clear();
  fixed_memo_.clear();
}

int LcdProgram::label_id(const std::string &name) {
  if (const auto it = label_ids_.find(name); it != label_ids_.end()) {
    return it->second;
  }
  const auto *members = find_label_(name);
  require(members != nullptr, "unknown label '" + name + "'");
  labels_.push_back(members);
  return label_ids_[name] = static_cast<int>(labels_.size()) - 1;
}

int LcdProgram::forest_id(const std::string &name) {
  if (const auto it = forest_ids_.find(name); it != forest_ids_.end()) {
    return it->second;
  }
  const auto *forest = find_forest_(name);
  require(forest != nullptr, "unknown forest relation '" + name + "'");
  forests_.push_back(forest);
  return forest_ids_[name] = static_cast<int>(forests_.size()) - 1;
}

int LcdProgram::compile(const LcdNode &f) {
  if (const auto it = compiled_.find(&f); it != compiled_.end()) {
    return it->second;
  }
  Node node;
  node.kind = f.kind;
  switch (f.kind) {
  case LcdKind::Label:
    node.target = label_id(f.name);
    node.a = f.a;
    break;
  case LcdKind::Lcd:
    node.target = forest_id(f.name);
    node.depth = f.depth;
    node.a = f.a;
    node.b = f.b;
    break;
  case LcdKind::Or:
    if (try_index(f, node)) {
      break;
    }
    [[fallthrough]];
  default:
    for (const auto &k : f.kids) {
      node.kids.push_back(compile(*k));
    }
  }
  nodes_.push_back(std::move(node));
  const int id = static_cast<int>(nodes_.size()) - 1;
  compiled_.emplace(&f, id);
  return id;
}

namespace {

constexpr int kVarBits = 10;

std::uint64_t pack_key(bool is_lcd, int target, int a, int b) {
  require(a < (1 << kVarBits) && b < (1 << kVarBits), "too many variables for the disjunction index");
  return (static_cast<std::uint64_t>(target) << (2 * kVarBits + 1)) | (static_cast<std::uint64_t>(a) << (kVarBits + 1)) |
         (static_cast<std::uint64_t>(b) << 1) | (is_lcd ? 1u : 0u);
}

} // namespace

const std::vector<std::pair<std::uint64_t, int>> &LcdProgram::fixed_atoms(const LcdNode &n) {
  if (const auto it = fixed_memo_.find(&n); it != fixed_memo_.end()) {
    return it->second;
  }
  std::vector<std::pair<std::uint64_t, int>> out;
  if (n.kind == LcdKind::And) {
    for (const auto &k : n.kids) {
      const auto &part = fixed_atoms(*k);
      out.insert(out.end(), part.begin(), part.end());
    }
  } else if (n.kind == LcdKind::Lcd) {
    out.emplace_back(pack_key(true, forest_id(n.name), std::min(n.a, n.b), std::max(n.a, n.b)), n.depth);
  } else if (n.kind == LcdKind::Label) {
    out.emplace_back(pack_key(false, label_id(n.name), n.a, n.a), 1);
  } else if (n.kind == LcdKind::Not && n.kids[0]->kind == LcdKind::Label) {
    out.emplace_back(pack_key(false, label_id(n.kids[0]->name), n.kids[0]->a, n.kids[0]->a), 0);
  }
  return fixed_memo_.emplace(&n, std::move(out)).first->second;
}

bool LcdProgram::try_index(const LcdNode &f, Node &node) {
  constexpr std::size_t kMinIndexed = 16;
  if (f.kids.size() < kMinIndexed) {
    return false;
  }
  using Fixed = std::vector<std::pair<std::uint64_t, int>>;
  std::vector<Fixed> fixed(f.kids.size());
  std::vector<char> dead(f.kids.size(), 0);
  std::vector<std::uint64_t> common;
  bool first = true;
  for (std::size_t i = 0; i < f.kids.size(); ++i) {
    Fixed list = fixed_atoms(*f.kids[i]);
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (std::size_t j = 1; j < list.size(); ++j) {
      if (list[j].first == list[j - 1].first) {
        dead[i] = 1; // contradictory literals
      }
    }
    if (dead[i]) {
      continue;
    }
    std::vector<std::uint64_t> keys;
    keys.reserve(list.size());
    for (const auto &entry : list) {
      keys.push_back(entry.first);
    }
    if (first) {
      common = std::move(keys);
      first = false;
    } else {
      std::vector<std::uint64_t> both;
      std::set_intersection(common.begin(), common.end(), keys.begin(), keys.end(), std::back_inserter(both));
      common = std::move(both);
    }
    fixed[i] = std::move(list);
  }
  if (common.empty()) {
    return false;
  }
  Index index;
  for (const std::uint64_t key : common) {
    KeyAtom atom;
    atom.is_lcd = (key & 1u) != 0;
    atom.b = static_cast<int>((key >> 1) & ((1u << kVarBits) - 1));
    atom.a = static_cast<int>((key >> (kVarBits + 1)) & ((1u << kVarBits) - 1));
    atom.target = static_cast<int>(key >> (2 * kVarBits + 1));
    index.keys.push_back(atom);
  }
  for (std::size_t i = 0; i < f.kids.size(); ++i) {
    if (dead[i]) {
      continue;
    }
    std::vector<int> values;
    values.reserve(common.size());
    std::size_t pos = 0;
    for (const std::uint64_t key : common) {
      while (fixed[i][pos].first != key) {
        ++pos;
      }
      values.push_back(fixed[i][pos].second);
    }
    const int kid = compile(*f.kids[i]);
    index.buckets[values].push_back(kid);
  }
  node.index = static_cast<int>(indexes_.size());
  indexes_.push_back(std::move(index));
  scratch_.emplace_back();
  return true;
}

int LcdProgram::key_value(const KeyAtom &k, std::span<const Vertex> t) const {
  if (k.is_lcd) {
    return forests_[k.target]->common_ancestors(t[k.a], t[k.b]);
  }
  return (*labels_[k.target])[t[k.a]] != 0 ? 1 : 0;
}

bool LcdProgram::eval(std::span<const Vertex> tuple) const {
  require(static_cast<int>(tuple.size()) >= vars_,
          "tuple has " + std::to_string(tuple.size()) + " entries, formula uses " + std::to_string(vars_));
  for (const Vertex v : tuple) {
    require(v >= 0 && v < universe_, "tuple element out of range");
  }
  return run(root_, tuple);
}

bool LcdProgram::run(int id, std::span<const Vertex> t) const {
  const Node &node = nodes_[id];
  switch (node.kind) {
  case LcdKind::True:
    return true;
  case LcdKind::False:
    return false;
  case LcdKind::Label:
    return (*labels_[node.target])[t[node.a]] != 0;
  case LcdKind::Lcd:
    return forests_[node.target]->common_ancestors(t[node.a], t[node.b]) == node.depth;
  case LcdKind::Not:
    return !run(node.kids[0], t);
  case LcdKind::And:
    for (const int k : node.kids) {
      if (!run(k, t)) {
        return false;
      }
    }
    return true;
  case LcdKind::Or:
    if (node.index >= 0) {
      const Index &index = indexes_[node.index];
      auto &key = scratch_[node.index];
      key.clear();
      for (const auto &k : index.keys) {
        key.push_back(key_value(k, t));
      }
      const auto it = index.buckets.find(key);
      if (it == index.buckets.end()) {
        return false;
      }
      for (const int k : it->second) {
        if (run(k, t)) {
          return true;
        }
      }
      return false;
    }
    for (const int k : node.kids) {
      if (run(k, t)) {
        return true;
      }
    }
    return false;
  }
  return false;
}

bool eval_lcd(const Skeleton &b, const LcdNode &f, std::span<const Vertex> tuple) {
  return LcdProgram(f, b).eval(tuple);
}

bool eval_lcd(const LabeledForest &t, const LcdNode &f, std::span<const Vertex> tuple) {
  return LcdProgram(f, t).eval(tuple);
}

// ---------------------------------------------------------------- lcd-types

LcdPtr type_formula(const LcdType &type, const std::string &relation) {
  std::vector<LcdPtr> parts;
  const int k = type.size();
  require(static_cast<int>(type.labels.size()) == k, "type label table has wrong size");
  for (int x = 0; x < k; ++x) {
    for (const auto &[name, present] : type.labels[x]) {
      parts.push_back(present ? lcd_label(name, x) : lcd_not(lcd_label(name, x)));
    }
  }
  for (int x = 0; x < k; ++x) {
    for (int y = x; y < k; ++y) {
      parts.push_back(lcd_atom(relation, type.delta[x][y], x, y));
    }
  }
  return lcd_and(std::move(parts));
}

std::optional<TypeShape> shape_from_delta(const std::vector<std::vector<int>> &delta, int d) {
  const int k = static_cast<int>(delta.size());
  for (const auto &row : delta) {
    require(static_cast<int>(row.size()) == k, "delta is not square");
  }
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      require(delta[x][y] == delta[y][x], "delta is not symmetric");
    }
  }
  for (int x = 0; x < k; ++x) {
    if (delta[x][x] < 1 || delta[x][x] > d) {
      return std::nullopt;
    }
    for (int y = 0; y < k; ++y) {
      if (delta[x][y] < 0 || delta[x][y] > std::min(delta[x][x], delta[y][y])) {
        return std::nullopt;
      }
      for (int z = 0; z < k; ++z) {
        if (delta[x][z] < std::min(delta[x][y], delta[y][z])) {
          return std::nullopt;
        }
      }
    }
  }
  // Ancestor of x at depth i is identified with that of y iff i <= delta(x,y).
  const auto rep = [&](int x, int i) {
    for (int y = 0;; ++y) {
      if (delta[x][y] >= i) {
        return y;
      }
    }
  };
  int max_depth = 0;
  for (int x = 0; x < k; ++x) {
    max_depth = std::max(max_depth, delta[x][x]);
  }
  std::map<std::pair<int, int>, Vertex> node;
  std::vector<Vertex> parent;
  for (int i = 1; i <= max_depth; ++i) {
    for (int x = 0; x < k; ++x) {
      if (delta[x][x] < i) {
        continue;
      }
      const auto key = std::make_pair(rep(x, i), i);
      if (node.find(key) == node.end()) {
        node[key] = static_cast<Vertex>(parent.size());
        parent.push_back(i == 1 ? -1 : node.at({rep(x, i - 1), i - 1}));
      }
    }
  }
  TypeShape shape{RootedForest(std::move(parent)), {}};
  for (int x = 0; x < k; ++x) {
    shape.node_of_var.push_back(node.at({rep(x, delta[x][x]), delta[x][x]}));
  }
  return shape;
}

bool type_satisfiable(const LcdType &type, int d) {
  const auto shape = shape_from_delta(type.delta, d);
  if (!shape) {
    return false;
  }
  const int k = type.size();
  for (int x = 0; x < k; ++x) {
    for (int y = x; y < k; ++y) {
      if (shape->node_of_var[x] != shape->node_of_var[y]) {
        continue;
      }
      for (const auto &[name, present] : type.labels[x]) {
        for (const auto &[other, present2] : type.labels[y]) {
          if (name == other && present != present2) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

std::vector<LcdType> lcd_types_enum(int k, int d, const std::vector<std::string> &labels) {
  require(k >= 1, "lcd types need at least one variable");
  require(d >= 1, "depth bound must be positive");
  require(labels.size() < 16, "too many labels to enumerate types");
  std::vector<LcdType> out;
  std::vector<std::vector<int>> delta(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k), 0));
  std::vector<std::pair<int, int>> cells;
  for (int x = 0; x < k; ++x) {
    cells.emplace_back(x, x);
  }
  for (int x = 0; x < k; ++x) {
    for (int y = x + 1; y < k; ++y) {
      cells.emplace_back(x, y);
    }
  }
  const int masks = 1 << labels.size();
  std::function<void(std::size_t)> fill = [&](std::size_t c) {
    if (c == cells.size()) {
      const auto shape = shape_from_delta(delta, d);
      if (!shape) {
        return;
      }
      std::vector<int> mask(static_cast<std::size_t>(k), 0);
      std::function<void(int)> pick = [&](int x) {
        if (x == k) {
          LcdType t;
          t.delta = delta;
          for (int v = 0; v < k; ++v) {
            std::vector<std::pair<std::string, bool>> lits;
            for (std::size_t l = 0; l < labels.size(); ++l) {
              lits.emplace_back(labels[l], ((mask[v] >> l) & 1) != 0);
            }
            t.labels.push_back(std::move(lits));
          }
          out.push_back(std::move(t));
          return;
        }
        for (int m = 0; m < masks; ++m) {
          bool ok = true;
          for (int y = 0; y < x && ok; ++y) {
            ok = shape->node_of_var[x] != shape->node_of_var[y] || mask[y] == m;
          }
          if (ok) {
            mask[x] = m;
            pick(x + 1);
          }
        }
      };
      pick(0);
      return;
    }
    const auto [x, y] = cells[c];
    const int lo = x == y ? 1 : 0;
    const int hi = x == y ? d : std::min(delta[x][x], delta[y][y]);
    for (int v = lo; v <= hi; ++v) {
      delta[x][y] = delta[y][x] = v;
      fill(c + 1);
    }
  };
  fill(0);
  return out;
}

namespace {

bool holds_in_type(const LcdNode &f, const LcdType &type, const std::string &relation) {
  switch (f.kind) {
  case LcdKind::True:
    return true;
  case LcdKind::False:
    return false;
  case LcdKind::Label: {
    require(f.a < type.size(), "variable outside the type");
    for (const auto &[name, present] : type.labels[f.a]) {
      if (name == f.name) {
        return present;
      }
    }
    fail(ErrorKind::InvalidArgument, "label '" + f.name + "' not in the label set");
  }
  case LcdKind::Lcd:
    require(f.name == relation, "unexpected forest relation '" + f.name + "'");
    require(f.a < type.size() && f.b < type.size(), "variable outside the type");
    return type.delta[f.a][f.b] == f.depth;
  case LcdKind::Not:
    return !holds_in_type(*f.kids[0], type, relation);
  case LcdKind::And:
    return std::all_of(f.kids.begin(), f.kids.end(),
                       [&](const LcdPtr &k) { return holds_in_type(*k, type, relation); });
  case LcdKind::Or:
    return std::any_of(f.kids.begin(), f.kids.end(),
                       [&](const LcdPtr &k) { return holds_in_type(*k, type, relation); });
  }
  return false;
}

} // namespace

std::vector<LcdType> lcd_normalize(const LcdNode &f, int k, int d, const std::vector<std::string> &labels,
                                   const std::string &relation) {
  std::vector<LcdType> out;
  for (auto &t : lcd_types_enum(k, d, labels)) {
    if (holds_in_type(f, t, relation)) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

} // namespace sparsemc::logic
