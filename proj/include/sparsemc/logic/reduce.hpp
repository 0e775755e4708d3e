#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sparsemc/logic/formula.hpp"
#include "sparsemc/logic/lcd.hpp"
#include "sparsemc/ordering.hpp"
#include "sparsemc/wcol.hpp"

namespace sparsemc::logic {

// Relations of a structure restricted to a vertex set, expressed over a labeled DFS forest of it.
struct Encoding {
  LabeledForest forest; // local ids
  std::vector<Vertex> to_global;
  std::map<std::string, LcdPtr> relation; // binary: variables 0,1; unary: variable 0
  LcdPtr equality;                        // variables 0,1
};

Encoding encode_substructure(const Structure &a, std::span<const Vertex> vertices, const RootedForest &forest,
                             const std::string &relation, const std::string &label_prefix = {});

// Replaces every atom of a quantifier-free formula by its encoding.
LcdPtr substitute(const Formula &qf, const Encoding &enc, const std::map<std::string, int> &var_index);

enum class CoverMode {
  Auto,    // coloured cover when it needs few subsets, else one forest of the whole structure
  Colored, // low-treedepth colouring, one forest per colour subset
  Single,  // one DFS forest of the whole Gaifman graph
};

enum class ExistsRoute {
  Chain,       // eliminate quantifiers one by one on a single forest
  Existential, // back-translate to an existential formula over the current skeleton each step
};

struct ReduceOptions {
  CoverMode cover = CoverMode::Auto;
  ExistsRoute route = ExistsRoute::Chain;
  std::size_t auto_subset_budget = 64;
  std::size_t max_color_subsets = 50'000;
  std::size_t max_labels = 2'000'000;
  int max_witness_vars = 4; // existential route: quantifiers introduced per step
};

struct ReduceStats {
  int p = 0;
  int colors_used = 0;
  std::size_t subsets = 0;
  std::size_t labels = 0;
  std::size_t qe_types = 0;
  bool colored = false;
};

struct Reduction {
  Skeleton skeleton;
  LcdPtr alpha;
  std::vector<std::string> free_vars; // variable i of alpha
  ReduceStats stats;
  RoundLedger ledger;
};

Reduction reduce_existential(const FormulaPtr &phi, const std::vector<std::string> &free_vars, const Structure &a,
                             const ClassParams &params, const BconnConfig &cfg, const ReduceOptions &opts = {});

// Existential formula equivalent to alpha on every skeleton of depth <= d over `relations`;
// uses a unary "root:<R>" per relation for its roots.
FormulaPtr lcd_to_existential(const LcdNode &alpha, const std::vector<std::string> &var_names, int d,
                              const std::vector<std::string> &relations);

Reduction reduce_formula(const FormulaPtr &phi, const std::vector<std::string> &free_vars, const Structure &a,
                         const ClassParams &params, const BconnConfig &cfg, const ReduceOptions &opts = {});

struct ModelCheckResult {
  bool value = false;
  ReduceStats stats;
  RoundLedger ledger;
};

ModelCheckResult model_check(const Structure &a, const FormulaPtr &sentence, const ClassParams &params,
                             const BconnConfig &cfg, const ReduceOptions &opts = {});

// Every forest edge of b joins elements adjacent in the Gaifman graph of a.
bool is_guarded(const Skeleton &b, const Structure &a);

} // namespace sparsemc::logic
