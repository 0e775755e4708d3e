#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sparsemc/logic/structure.hpp"

namespace sparsemc::logic {

enum class FormulaKind { True, False, Atom, Equal, Not, And, Or, Exists, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind = FormulaKind::True;
  std::string name;              // relation (Atom) or bound variable (Exists/Forall)
  std::vector<std::string> args; // Atom and Equal operands
  std::vector<FormulaPtr> kids;
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(std::string rel, std::vector<std::string> args);
FormulaPtr f_eq(std::string a, std::string b);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(std::vector<FormulaPtr> kids);
FormulaPtr f_or(std::vector<FormulaPtr> kids);
FormulaPtr f_exists(std::string var, FormulaPtr body);
FormulaPtr f_forall(std::string var, FormulaPtr body);

// Grammar:
//   phi  := "E" var "." phi | "A" var "." phi | disj
//   disj := conj {"|" conj}     conj := lit {"&" lit}
//   lit  := "!" lit | "(" phi ")" | atom | quantified phi
//   atom := name "(" var {"," var} ")" | var "=" var | "true" | "false"
FormulaPtr parse_formula(std::string_view text, const Vocabulary &vocab);
std::string to_string(const Formula &f);

// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula &f);
std::vector<std::string> all_variables(const Formula &f);
bool is_quantifier_free(const Formula &f);
int quantifier_count(const Formula &f);

bool naive_eval(const Structure &a, const Formula &f, const std::map<std::string, Vertex> &assignment);

// Evaluator with variables resolved to slots; `free_vars` fixes the argument order of eval().
class FoEvaluator {
public:
  FoEvaluator(const Structure &a, const Formula &f, const std::vector<std::string> &free_vars);
  bool eval(std::span<const Vertex> values);

private:
  struct Node {
    FormulaKind kind = FormulaKind::True;
    int rel = -1;
    bool unary = false;
    int a = -1, b = -1; // variable slots
    std::vector<int> kids;
  };
  int compile(const Formula &f, std::map<std::string, int> &scope);
  bool run(int node);

  const Structure *a_;
  std::vector<Node> nodes_;
  std::vector<Vertex> env_;
  int root_ = -1;
  int free_count_ = 0;
};

// Fresh names avoiding every name already present.
class NameSupply {
public:
  explicit NameSupply(std::vector<std::string> taken = {});
  std::string fresh(const std::string &base);
  void reserve(const std::string &name);

private:
  std::map<std::string, int> counters_;
  std::vector<std::string> taken_;
};

struct Prefix {
  bool exists = true;
  std::string var;
};

struct PrenexForm {
  std::vector<Prefix> prefix;
  FormulaPtr matrix;

  [[nodiscard]] FormulaPtr to_formula() const;
  [[nodiscard]] int alternation_blocks() const;
};

// Positive combination of existential blocks -> single existential prefix over a
// quantifier-free matrix; bound variables are renamed apart.
PrenexForm prenexify(const FormulaPtr &f, NameSupply *names = nullptr);
PrenexForm prenex_normal_form(const FormulaPtr &f, NameSupply *names = nullptr);
FormulaPtr negation_normal_form(const FormulaPtr &f);

} // namespace sparsemc::logic
