#include "sparsemc/logic/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

#include "sparsemc/error.hpp"

namespace sparsemc::logic {

namespace {

FormulaPtr make(FormulaKind kind, std::string name = {}, std::vector<std::string> args = {},
                std::vector<FormulaPtr> kids = {}) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->name = std::move(name);
  f->args = std::move(args);
  f->kids = std::move(kids);
  return f;
}

} // namespace

FormulaPtr f_true() { return make(FormulaKind::True); }
FormulaPtr f_false() { return make(FormulaKind::False); }
FormulaPtr f_atom(std::string rel, std::vector<std::string> args) {
  return make(FormulaKind::Atom, std::move(rel), std::move(args));
}
FormulaPtr f_eq(std::string a, std::string b) { return make(FormulaKind::Equal, {}, {std::move(a), std::move(b)}); }
FormulaPtr f_not(FormulaPtr f) { return make(FormulaKind::Not, {}, {}, {std::move(f)}); }

FormulaPtr f_and(std::vector<FormulaPtr> kids) {
  if (kids.empty()) {
    return f_true();
  }
  if (kids.size() == 1) {
    return kids.front();
  }
  return make(FormulaKind::And, {}, {}, std::move(kids));
}

FormulaPtr f_or(std::vector<FormulaPtr> kids) {
  if (kids.empty()) {
    return f_false();
  }
  if (kids.size() == 1) {
    return kids.front();
  }
  return make(FormulaKind::Or, {}, {}, std::move(kids));
}

FormulaPtr f_exists(std::string var, FormulaPtr body) {
  return make(FormulaKind::Exists, std::move(var), {}, {std::move(body)});
}
FormulaPtr f_forall(std::string var, FormulaPtr body) {
  return make(FormulaKind::Forall, std::move(var), {}, {std::move(body)});
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
  enum Kind { Ident, Sym, End } kind;
  std::string text;
  int col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '/' || c == '\'';
}

class Parser {
public:
  Parser(std::string_view text, const Vocabulary &vocab) : vocab_(vocab) { tokenize(text); }

  FormulaPtr parse() {
    auto f = phi();
    if (peek().kind != Token::End) {
      error(peek(), "unexpected '" + peek().text + "'");
    }
    return f;
  }

private:
  [[noreturn]] static void error(const Token &t, const std::string &msg) {
    fail(ErrorKind::Parse, "column " + std::to_string(t.col) + ": " + msg);
  }

  void tokenize(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
      const char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (ident_start(c)) {
        std::size_t j = i;
        while (j < s.size() && ident_char(s[j])) {
          ++j;
        }
        toks_.push_back({Token::Ident, std::string(s.substr(i, j - i)), static_cast<int>(i) + 1});
        i = j;
      } else if (std::string_view("().,!&|=").find(c) != std::string_view::npos) {
        toks_.push_back({Token::Sym, std::string(1, c), static_cast<int>(i) + 1});
        ++i;
      } else {
        fail(ErrorKind::Parse, "column " + std::to_string(i + 1) + ": unexpected character '" + std::string(1, c) + "'");
      }
    }
    toks_.push_back({Token::End, "end of input", static_cast<int>(s.size()) + 1});
  }

  const Token &peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token &take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at_sym(const char *s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Sym && peek(ahead).text == s;
  }
  void expect(const char *s) {
    if (!at_sym(s)) {
      error(peek(), std::string("expected '") + s + "', got '" + peek().text + "'");
    }
    ++pos_;
  }

  bool at_quantifier() const {
    return peek().kind == Token::Ident && (peek().text == "E" || peek().text == "A") &&
           peek(1).kind == Token::Ident && at_sym(".", 2);
  }

  std::string variable() {
    const Token &t = take();
    if (t.kind != Token::Ident) {
      error(t, "expected variable, got '" + t.text + "'");
    }
    if (vocab_.arity(t.text) != 0) {
      error(t, "'" + t.text + "' is a relation, not a variable");
    }
    return t.text;
  }

  FormulaPtr phi() {
    if (at_quantifier()) {
      const bool exists = take().text == "E";
      const Token &vt = peek();
      const std::string var = variable();
      if (std::find(bound_.begin(), bound_.end(), var) != bound_.end()) {
        error(vt, "variable '" + var + "' is already bound");
      }
      expect(".");
      bound_.push_back(var);
      auto body = phi();
      bound_.pop_back();
      return exists ? f_exists(var, body) : f_forall(var, body);
    }
    return disj();
  }

  FormulaPtr disj() {
    std::vector<FormulaPtr> kids{conj()};
    while (at_sym("|")) {
      ++pos_;
      kids.push_back(conj());
    }
    return f_or(std::move(kids));
  }

  FormulaPtr conj() {
    std::vector<FormulaPtr> kids{lit()};
    while (at_sym("&")) {
      ++pos_;
      kids.push_back(lit());
    }
    return f_and(std::move(kids));
  }

  FormulaPtr lit() {
    if (at_sym("!")) {
      ++pos_;
      return f_not(lit());
    }
    if (at_sym("(")) {
      ++pos_;
      auto f = phi();
      expect(")");
      return f;
    }
    if (at_quantifier()) {
      return phi();
    }
    return atom();
  }

  FormulaPtr atom() {
    const Token &t = peek();
    if (t.kind != Token::Ident) {
      error(t, "expected atom, got '" + t.text + "'");
    }
    if (at_sym("(", 1)) {
      const std::string rel = take().text;
      ++pos_;
      std::vector<std::string> args{variable()};
      while (at_sym(",")) {
        ++pos_;
        args.push_back(variable());
      }
      expect(")");
      const int arity = vocab_.arity(rel);
      if (arity == 0) {
        error(t, "unknown relation '" + rel + "'");
      }
      if (arity != static_cast<int>(args.size())) {
        error(t, "relation '" + rel + "' has arity " + std::to_string(arity) + ", applied to " +
                     std::to_string(args.size()) + " argument(s)");
      }
      return f_atom(rel, std::move(args));
    }
    if (at_sym("=", 1)) {
      std::string a = variable();
      ++pos_;
      std::string b = variable();
      return f_eq(std::move(a), std::move(b));
    }
    if (t.text == "true" || t.text == "false") {
      ++pos_;
      return t.text == "true" ? f_true() : f_false();
    }
    error(t, "expected atom, got '" + t.text + "'");
  }

  const Vocabulary &vocab_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

void print(const Formula &f, std::ostringstream &out);

void print_kid(const Formula &kid, FormulaKind parent, std::ostringstream &out) {
  const bool wrap = kid.kind == FormulaKind::Exists || kid.kind == FormulaKind::Forall ||
                    ((kid.kind == FormulaKind::And || kid.kind == FormulaKind::Or) && kid.kind != parent) ||
                    (parent == FormulaKind::Not && (kid.kind == FormulaKind::And || kid.kind == FormulaKind::Or));
  if (wrap) {
    out << '(';
  }
  print(kid, out);
  if (wrap) {
    out << ')';
  }
}

void print(const Formula &f, std::ostringstream &out) {
  switch (f.kind) {
  case FormulaKind::True:
    out << "true";
    break;
  case FormulaKind::False:
    out << "false";
    break;
  case FormulaKind::Atom:
    out << f.name << '(';
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      out << (i ? "," : "") << f.args[i];
    }
    out << ')';
    break;
  case FormulaKind::Equal:
    out << f.args[0] << " = " << f.args[1];
    break;
  case FormulaKind::Not:
    out << '!';
    print_kid(*f.kids[0], FormulaKind::Not, out);
    break;
  case FormulaKind::And:
  case FormulaKind::Or:
    for (std::size_t i = 0; i < f.kids.size(); ++i) {
      if (i) {
        out << (f.kind == FormulaKind::And ? " & " : " | ");
      }
      print_kid(*f.kids[i], f.kind, out);
    }
    break;
  case FormulaKind::Exists:
  case FormulaKind::Forall:
    out << (f.kind == FormulaKind::Exists ? "E " : "A ") << f.name << ". ";
    print(*f.kids[0], out);
    break;
  }
}

void collect_vars(const Formula &f, std::vector<std::string> &bound, std::vector<std::string> &free_out,
                  std::vector<std::string> *all) {
  const auto note = [&](const std::string &v) {
    if (all != nullptr && std::find(all->begin(), all->end(), v) == all->end()) {
      all->push_back(v);
    }
    if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
        std::find(free_out.begin(), free_out.end(), v) == free_out.end()) {
      free_out.push_back(v);
    }
  };
  switch (f.kind) {
  case FormulaKind::Atom:
  case FormulaKind::Equal:
    for (const auto &v : f.args) {
      note(v);
    }
    break;
  case FormulaKind::Exists:
  case FormulaKind::Forall:
    if (all != nullptr && std::find(all->begin(), all->end(), f.name) == all->end()) {
      all->push_back(f.name);
    }
    bound.push_back(f.name);
    collect_vars(*f.kids[0], bound, free_out, all);
    bound.pop_back();
    break;
  default:
    for (const auto &k : f.kids) {
      collect_vars(*k, bound, free_out, all);
    }
  }
}

} // namespace

FormulaPtr parse_formula(std::string_view text, const Vocabulary &vocab) { return Parser(text, vocab).parse(); }

std::string to_string(const Formula &f) {
  std::ostringstream out;
  print(f, out);
  return out.str();
}

std::vector<std::string> free_variables(const Formula &f) {
  std::vector<std::string> bound, out;
  collect_vars(f, bound, out, nullptr);
  return out;
}

std::vector<std::string> all_variables(const Formula &f) {
  std::vector<std::string> bound, free_out, all;
  collect_vars(f, bound, free_out, &all);
  return all;
}

bool is_quantifier_free(const Formula &f) { return quantifier_count(f) == 0; }

int quantifier_count(const Formula &f) {
  int count = (f.kind == FormulaKind::Exists || f.kind == FormulaKind::Forall) ? 1 : 0;
  for (const auto &k : f.kids) {
    count += quantifier_count(*k);
  }
  return count;
}

// ---------------------------------------------------------------- evaluation

FoEvaluator::FoEvaluator(const Structure &a, const Formula &f, const std::vector<std::string> &free_vars) : a_(&a) {
  std::map<std::string, int> scope;
  for (const auto &v : free_vars) {
    require(scope.emplace(v, static_cast<int>(scope.size())).second, "free variable '" + v + "' listed twice");
  }
  free_count_ = static_cast<int>(free_vars.size());
  env_.assign(free_vars.size(), 0);
  root_ = compile(f, scope);
}

int FoEvaluator::compile(const Formula &f, std::map<std::string, int> &scope) {
  Node node;
  node.kind = f.kind;
  const auto slot = [&](const std::string &v) {
    const auto it = scope.find(v);
    require(it != scope.end(), "unbound variable '" + v + "'");
    return it->second;
  };
  switch (f.kind) {
  case FormulaKind::Atom: {
    const int arity = static_cast<int>(f.args.size());
    node.unary = arity == 1;
    node.rel = node.unary ? a_->unary_index(f.name) : a_->binary_index(f.name);
    require(node.rel >= 0 && (arity == 1 || arity == 2),
            "relation '" + f.name + "' of arity " + std::to_string(arity) + " not in structure");
    node.a = slot(f.args[0]);
    node.b = node.unary ? node.a : slot(f.args[1]);
    break;
  }
  case FormulaKind::Equal:
    node.a = slot(f.args[0]);
    node.b = slot(f.args[1]);
    break;
  case FormulaKind::Exists:
  case FormulaKind::Forall: {
    node.a = static_cast<int>(env_.size());
    env_.push_back(0);
    auto saved = scope.find(f.name) == scope.end() ? std::optional<int>{} : std::optional<int>{scope[f.name]};
    scope[f.name] = node.a;
    node.kids.push_back(compile(*f.kids[0], scope));
    if (saved) {
      scope[f.name] = *saved;
    } else {
      scope.erase(f.name);
    }
    break;
  }
  default:
    for (const auto &k : f.kids) {
      node.kids.push_back(compile(*k, scope));
    }
  }
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

bool FoEvaluator::eval(std::span<const Vertex> values) {
  require(static_cast<int>(values.size()) == free_count_, "wrong number of free-variable values");
  for (int i = 0; i < free_count_; ++i) {
    require(values[i] >= 0 && values[i] < a_->n(), "element out of range");
    env_[i] = values[i];
  }
  return run(root_);
}

bool FoEvaluator::run(int id) {
  const Node &node = nodes_[id];
  switch (node.kind) {
  case FormulaKind::True:
    return true;
  case FormulaKind::False:
    return false;
  case FormulaKind::Atom:
    return node.unary ? a_->unary_holds(node.rel, env_[node.a]) : a_->binary_holds(node.rel, env_[node.a], env_[node.b]);
  case FormulaKind::Equal:
    return env_[node.a] == env_[node.b];
  case FormulaKind::Not:
    return !run(node.kids[0]);
  case FormulaKind::And:
    for (const int k : node.kids) {
      if (!run(k)) {
        return false;
      }
    }
    return true;
  case FormulaKind::Or:
    for (const int k : node.kids) {
      if (run(k)) {
        return true;
      }
    }
    return false;
  case FormulaKind::Exists:
  case FormulaKind::Forall: {
    const bool exists = node.kind == FormulaKind::Exists;
    for (Vertex v = 0; v < a_->n(); ++v) {
      env_[node.a] = v;
      if (run(node.kids[0]) == exists) {
        return exists;
      }
    }
    return !exists;
  }
  }
  return false;
}

bool naive_eval(const Structure &a, const Formula &f, const std::map<std::string, Vertex> &assignment) {
  std::vector<std::string> vars;
  std::vector<Vertex> values;
  for (const auto &[name, value] : assignment) {
    vars.push_back(name);
    values.push_back(value);
  }
  FoEvaluator ev(a, f, vars);
  return ev.eval(values);
}

// ---------------------------------------------------------------- prenex forms

NameSupply::NameSupply(std::vector<std::string> taken) : taken_(std::move(taken)) {
  std::sort(taken_.begin(), taken_.end());
}

void NameSupply::reserve(const std::string &name) {
  const auto it = std::lower_bound(taken_.begin(), taken_.end(), name);
  if (it == taken_.end() || *it != name) {
    taken_.insert(it, name);
  }
}

std::string NameSupply::fresh(const std::string &base) {
  for (;;) {
    std::string name = base + "_" + std::to_string(++counters_[base]);
    if (!std::binary_search(taken_.begin(), taken_.end(), name)) {
      reserve(name);
      return name;
    }
  }
}

FormulaPtr PrenexForm::to_formula() const {
  FormulaPtr f = matrix;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    f = it->exists ? f_exists(it->var, f) : f_forall(it->var, f);
  }
  return f;
}

int PrenexForm::alternation_blocks() const {
  int blocks = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (i == 0 || prefix[i].exists != prefix[i - 1].exists) {
      ++blocks;
    }
  }
  return blocks;
}

namespace {

FormulaPtr nnf(const FormulaPtr &f, bool negate) {
  switch (f->kind) {
  case FormulaKind::True:
    return negate ? f_false() : f;
  case FormulaKind::False:
    return negate ? f_true() : f;
  case FormulaKind::Atom:
  case FormulaKind::Equal:
    return negate ? f_not(f) : f;
  case FormulaKind::Not:
    return nnf(f->kids[0], !negate);
  case FormulaKind::And:
  case FormulaKind::Or: {
    std::vector<FormulaPtr> kids;
    for (const auto &k : f->kids) {
      kids.push_back(nnf(k, negate));
    }
    const bool conj = (f->kind == FormulaKind::And) != negate;
    return conj ? f_and(std::move(kids)) : f_or(std::move(kids));
  }
  case FormulaKind::Exists:
  case FormulaKind::Forall: {
    const bool exists = (f->kind == FormulaKind::Exists) != negate;
    auto body = nnf(f->kids[0], negate);
    return exists ? f_exists(f->name, body) : f_forall(f->name, body);
  }
  }
  return f;
}

FormulaPtr rename_free(const FormulaPtr &f, const std::map<std::string, std::string> &sub) {
  switch (f->kind) {
  case FormulaKind::Atom:
  case FormulaKind::Equal: {
    auto args = f->args;
    bool changed = false;
    for (auto &a : args) {
      if (const auto it = sub.find(a); it != sub.end()) {
        a = it->second;
        changed = true;
      }
    }
    if (!changed) {
      return f;
    }
    return f->kind == FormulaKind::Atom ? f_atom(f->name, std::move(args)) : f_eq(args[0], args[1]);
  }
  case FormulaKind::Exists:
  case FormulaKind::Forall: {
    auto inner = sub;
    inner.erase(f->name);
    auto body = rename_free(f->kids[0], inner);
    return f->kind == FormulaKind::Exists ? f_exists(f->name, body) : f_forall(f->name, body);
  }
  case FormulaKind::True:
  case FormulaKind::False:
    return f;
  default: {
    std::vector<FormulaPtr> kids;
    for (const auto &k : f->kids) {
      kids.push_back(rename_free(k, sub));
    }
    if (f->kind == FormulaKind::Not) {
      return f_not(kids[0]);
    }
    return f->kind == FormulaKind::And ? f_and(std::move(kids)) : f_or(std::move(kids));
  }
  }
}

// Pulls quantifiers out of a formula whose negations sit only above quantifier-free parts.
PrenexForm pull(const FormulaPtr &f, std::map<std::string, std::string> &sub, NameSupply &names,
                bool allow_forall) {
  if (is_quantifier_free(*f)) {
    return {{}, rename_free(f, sub)};
  }
  switch (f->kind) {
  case FormulaKind::Not:
    return pull(nnf(f->kids[0], true), sub, names, allow_forall);
  case FormulaKind::Forall:
    if (!allow_forall) {
      fail(ErrorKind::InvalidArgument, "formula is not existential");
    }
    [[fallthrough]];
  case FormulaKind::Exists: {
    const std::string fresh = names.fresh(f->name);
    auto saved = sub.find(f->name) == sub.end() ? std::optional<std::string>{} : std::optional<std::string>{sub[f->name]};
    sub[f->name] = fresh;
    PrenexForm inner = pull(f->kids[0], sub, names, allow_forall);
    if (saved) {
      sub[f->name] = *saved;
    } else {
      sub.erase(f->name);
    }
    inner.prefix.insert(inner.prefix.begin(), Prefix{f->kind == FormulaKind::Exists, fresh});
    return inner;
  }
  case FormulaKind::And:
  case FormulaKind::Or: {
    PrenexForm out;
    std::vector<FormulaPtr> kids;
    for (const auto &k : f->kids) {
      PrenexForm part = pull(k, sub, names, allow_forall);
      out.prefix.insert(out.prefix.end(), part.prefix.begin(), part.prefix.end());
      kids.push_back(part.matrix);
    }
    out.matrix = f->kind == FormulaKind::And ? f_and(std::move(kids)) : f_or(std::move(kids));
    return out;
  }
  default:
    return {{}, rename_free(f, sub)};
  }
}

} // namespace

FormulaPtr negation_normal_form(const FormulaPtr &f) { return nnf(f, false); }

PrenexForm prenexify(const FormulaPtr &f, NameSupply *names) {
  NameSupply local(all_variables(*f));
  std::map<std::string, std::string> sub;
  PrenexForm out = pull(f, sub, names != nullptr ? *names : local, false);
  for (const auto &q : out.prefix) {
    require(q.exists, "formula is not existential");
  }
  return out;
}

PrenexForm prenex_normal_form(const FormulaPtr &f, NameSupply *names) {
  NameSupply local(all_variables(*f));
  std::map<std::string, std::string> sub;
  return pull(negation_normal_form(f), sub, names != nullptr ? *names : local, true);
}

} // namespace sparsemc::logic
