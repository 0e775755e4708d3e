#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sparsemc/logic/structure.hpp"
#include "sparsemc/treedepth.hpp"

namespace sparsemc::logic {

enum class LcdKind { True, False, Label, Lcd, Not, And, Or };

struct LcdNode;
using LcdPtr = std::shared_ptr<const LcdNode>;

// Quantifier-free formula over label tests and common-ancestor counts; variables are indices.
struct LcdNode {
  LcdKind kind = LcdKind::True;
  std::string name; // label (Label) or forest relation (Lcd)
  int depth = 0;    // Lcd: number of common ancestors
  int a = 0, b = 0; // variables
  std::vector<LcdPtr> kids;
};

LcdPtr lcd_true();
LcdPtr lcd_false();
LcdPtr lcd_label(std::string label, int var);
LcdPtr lcd_atom(std::string relation, int depth, int a, int b);
// The constructors below fold constants.
LcdPtr lcd_not(LcdPtr f);
LcdPtr lcd_and(std::vector<LcdPtr> kids);
LcdPtr lcd_or(std::vector<LcdPtr> kids);
// Conjunction kept as one node, so that it can be shared between formulas.
LcdPtr lcd_and_block(std::vector<LcdPtr> kids);

std::string to_string(const LcdNode &f, const std::vector<std::string> *var_names = nullptr);
int lcd_var_count(const LcdNode &f); // largest variable index + 1
std::size_t lcd_size(const LcdNode &f); // distinct nodes
std::vector<int> lcd_variables(const LcdNode &f);
// Labels tested on each variable, sorted.
std::map<int, std::vector<std::string>> lcd_labels_by_var(const LcdNode &f);
std::vector<std::string> lcd_label_names(const LcdNode &f);
std::vector<std::string> lcd_relation_names(const LcdNode &f);
LcdPtr lcd_rename_vars(const LcdPtr &f, const std::vector<int> &new_index);

// Forest whose nodes carry named labels.
class LabeledForest {
public:
  LabeledForest() = default;
  LabeledForest(RootedForest forest, std::string relation);

  [[nodiscard]] int n() const { return forest_.n(); }
  [[nodiscard]] const RootedForest &forest() const { return forest_; }
  [[nodiscard]] const std::string &relation() const { return relation_; }
  [[nodiscard]] int depth() const { return forest_.depth(); }

  int add_label(const std::string &name);
  void set(int label, Vertex v, bool value = true) { labels_[label][v] = value ? 1 : 0; }
  [[nodiscard]] bool has(int label, Vertex v) const { return labels_[label][v] != 0; }
  [[nodiscard]] int label_index(std::string_view name) const;
  [[nodiscard]] int label_count() const { return static_cast<int>(names_.size()); }
  [[nodiscard]] const std::string &label_name(int label) const { return names_[label]; }
  [[nodiscard]] const std::vector<std::string> &label_names() const { return names_; }
  [[nodiscard]] const std::vector<char> &members(int label) const { return labels_[label]; }

private:
  RootedForest forest_;
  std::string relation_;
  std::vector<std::string> names_;
  std::map<std::string, int, std::less<>> index_;
  std::vector<std::vector<char>> labels_;
};

// Labeled structure whose binary relations are parent relations of bounded-depth forests.
class Skeleton {
public:
  explicit Skeleton(int n = 0) : n_(n) {}

  [[nodiscard]] int n() const { return n_; }
  int add_label(const std::string &name);
  void set_label(int label, Vertex v, bool value = true) { labels_[label][v] = value ? 1 : 0; }
  [[nodiscard]] bool has_label(int label, Vertex v) const { return labels_[label][v] != 0; }
  [[nodiscard]] int label_index(std::string_view name) const;
  [[nodiscard]] const std::vector<std::string> &label_names() const { return label_names_; }
  [[nodiscard]] const std::vector<char> &members(int label) const { return labels_[label]; }

  int add_forest(const std::string &relation, RootedForest forest);
  [[nodiscard]] int forest_index(std::string_view relation) const;
  [[nodiscard]] const RootedForest &forest(int i) const { return forests_[i]; }
  [[nodiscard]] const std::vector<std::string> &relation_names() const { return relation_names_; }
  [[nodiscard]] int depth() const;

  // Unary labels plus parent pairs (parent, child); optionally a unary "root:<R>" per relation.
  [[nodiscard]] Structure to_structure(bool with_roots = false) const;
  // Every binary relation must be a parent relation of depth <= max_depth.
  static Skeleton from_structure(const Structure &s, int max_depth);

private:
  int n_ = 0;
  std::vector<std::string> label_names_;
  std::map<std::string, int, std::less<>> label_index_;
  std::vector<std::vector<char>> labels_;
  std::vector<std::string> relation_names_;
  std::map<std::string, int, std::less<>> forest_index_;
  std::vector<RootedForest> forests_;
};

std::string root_label(const std::string &relation);

// Compiled evaluator. Large disjunctions whose members fix the same atoms are bucketed by the
// values of those atoms, so evaluation only visits the matching members. Not thread-safe.
class LcdProgram {
public:
  LcdProgram(const LcdNode &f, const LabeledForest &target);
  LcdProgram(const LcdNode &f, const Skeleton &target);

  [[nodiscard]] bool eval(std::span<const Vertex> tuple) const;
  [[nodiscard]] int var_count() const { return vars_; }

private:
  struct KeyAtom {
    bool is_lcd = false;
    int target = 0; // forest or label
    int a = 0, b = 0;
  };
  struct VecHash {
    std::size_t operator()(const std::vector<int> &v) const noexcept;
  };
  struct Index {
    std::vector<KeyAtom> keys;
    std::unordered_map<std::vector<int>, std::vector<int>, VecHash> buckets;
  };
  struct Node {
    LcdKind kind = LcdKind::True;
    int target = 0;
    int depth = 0;
    int a = 0, b = 0;
    std::vector<int> kids;
    int index = -1;
  };

  int compile(const LcdNode &f);
  bool try_index(const LcdNode &f, Node &node);
  // Literals every model of n fixes, as (packed atom, value).
  const std::vector<std::pair<std::uint64_t, int>> &fixed_atoms(const LcdNode &n);
  int label_id(const std::string &name);
  int forest_id(const std::string &name);
  [[nodiscard]] bool run(int node, std::span<const Vertex> t) const;
  [[nodiscard]] int key_value(const KeyAtom &k, std::span<const Vertex> t) const;

  std::function<const std::vector<char> *(const std::string &)> find_label_;
  std::function<const RootedForest *(const std::string &)> find_forest_;
  std::unordered_map<const LcdNode *, int> compiled_;
  std::unordered_map<const LcdNode *, std::vector<std::pair<std::uint64_t, int>>> fixed_memo_;
  std::map<std::string, int> label_ids_;
  std::map<std::string, int> forest_ids_;
  std::vector<const std::vector<char> *> labels_;
  std::vector<const RootedForest *> forests_;
  std::vector<Node> nodes_;
  std::vector<Index> indexes_;
  mutable std::vector<std::vector<int>> scratch_;
  int root_ = -1;
  int vars_ = 0;
  int universe_ = 0;
};

bool eval_lcd(const Skeleton &b, const LcdNode &f, std::span<const Vertex> tuple);
bool eval_lcd(const LabeledForest &t, const LcdNode &f, std::span<const Vertex> tuple);

// ---------------------------------------------------------------- lcd-types

struct LcdType {
  // Per variable: label literals (name, present).
  std::vector<std::vector<std::pair<std::string, bool>>> labels;
  // Symmetric; diagonal holds depths.
  std::vector<std::vector<int>> delta;

  [[nodiscard]] int size() const { return static_cast<int>(delta.size()); }
};

LcdPtr type_formula(const LcdType &type, const std::string &relation);

struct TypeShape {
  RootedForest forest;
  std::vector<Vertex> node_of_var;
};

std::optional<TypeShape> shape_from_delta(const std::vector<std::vector<int>> &delta, int d);
bool type_satisfiable(const LcdType &type, int d);
std::vector<LcdType> lcd_types_enum(int k, int d, const std::vector<std::string> &labels);
// Types over variables 0..k-1 on which f holds.
std::vector<LcdType> lcd_normalize(const LcdNode &f, int k, int d, const std::vector<std::string> &labels,
                                   const std::string &relation);

} // namespace sparsemc::logic
